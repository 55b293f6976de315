#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "grasscurve/scalars.hpp"

namespace grasscurve {

class ShapeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline bool is_exact_zero(const RadicalComplex& a) { return a.is_zero(); }
inline bool is_exact_zero(const FloatComplex& a) { return a.real() == 0.0 && a.imag() == 0.0; }

/// C(n, k), zero outside 0 <= k <= n.
std::size_t binomial(long n, long k);

/// Ambient dimensions up to this bound have basis tables.
inline constexpr int kMaxAmbient = 16;

/// Strictly increasing index set; ranked lexicographically among the
/// C(N, k) subsets of {0..N-1}.
using MultiIndex = std::vector<int>;

std::size_t rank_of(int ambient, const MultiIndex& idx);
MultiIndex unrank(int ambient, int degree, std::size_t rank);

/// Sparse structure constants e_I ^ e_J = sign * e_{I u J} for disjoint I, J.
struct WedgeEntry {
  std::uint32_t left;
  std::uint32_t right;
  std::uint32_t out;
  int sign;
};

/// Cached, immutable table for (ambient, p, q). Thread-safe.
const std::vector<WedgeEntry>& wedge_table(int ambient, int p, int q);

/// Degree-k element of the exterior algebra over C^N, dense in the
/// lexicographic multi-index basis.
template <class T>
class KVector {
public:
  KVector() = default;
  KVector(int ambient, int degree) : ambient_(ambient), degree_(degree) {
    if (ambient < 0 || ambient > kMaxAmbient || degree < 0 || degree > ambient) {
      throw ShapeError("invalid exterior shape N=" + std::to_string(ambient) +
                       " k=" + std::to_string(degree));
    }
    coeffs_.assign(binomial(ambient, degree), T{});
  }

  /// Degree-1 vector with the given components.
  static KVector vector(std::vector<T> components) {
    KVector v(static_cast<int>(components.size()), 1);
    v.coeffs_ = std::move(components);
    return v;
  }

  /// Basis element e_I (I strictly increasing).
  static KVector basis(int ambient, const MultiIndex& idx, T coeff = T(1)) {
    KVector v(ambient, static_cast<int>(idx.size()));
    v.coeffs_[rank_of(ambient, idx)] = std::move(coeff);
    return v;
  }

  int ambient() const { return ambient_; }
  int degree() const { return degree_; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<T>& coeffs() const { return coeffs_; }
  std::vector<T>& coeffs() { return coeffs_; }
  const T& operator[](std::size_t i) const { return coeffs_[i]; }
  T& operator[](std::size_t i) { return coeffs_[i]; }
  const T& at(const MultiIndex& idx) const { return coeffs_[rank_of(ambient_, idx)]; }

  bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (!is_exact_zero(c)) return false;
    }
    return true;
  }

  KVector& operator+=(const KVector& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  KVector& operator-=(const KVector& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  KVector& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend KVector operator+(KVector a, const KVector& b) { return a += b; }
  friend KVector operator-(KVector a, const KVector& b) { return a -= b; }
  friend KVector operator*(KVector a, const T& s) { return a *= s; }
  friend KVector operator*(const T& s, KVector a) { return a *= s; }
  friend bool operator==(const KVector& a, const KVector& b) = default;

  void require_same_shape(const KVector& o) const {
    if (ambient_ != o.ambient_ || degree_ != o.degree_) {
      throw ShapeError("k-vector shape mismatch");
    }
  }

private:
  int ambient_ = 0;
  int degree_ = 0;
  std::vector<T> coeffs_{T{}};
};

/// Accumulates sign * a ^ b into out (out must have degree p + q).
template <class T>
void wedge_accumulate(const KVector<T>& a, const KVector<T>& b, KVector<T>& out) {
  const auto& table = wedge_table(a.ambient(), a.degree(), b.degree());
  for (const auto& e : table) {
    const T& x = a[e.left];
    if (is_exact_zero(x)) continue;
    const T& y = b[e.right];
    if (is_exact_zero(y)) continue;
    if (e.sign > 0) {
      out[e.out] += x * y;
    } else {
      out[e.out] -= x * y;
    }
  }
}

template <class T>
KVector<T> wedge(const KVector<T>& a, const KVector<T>& b) {
  if (a.ambient() != b.ambient()) throw ShapeError("wedge: ambient mismatch");
  if (a.degree() + b.degree() > a.ambient()) throw ShapeError("wedge: degree exceeds ambient");
  KVector<T> out(a.ambient(), a.degree() + b.degree());
  wedge_accumulate(a, b, out);
  return out;
}

/// Hermitian inner product sum a_I * conj(b_I); conjugate-linear in b.
template <class T>
T kv_inner(const KVector<T>& a, const KVector<T>& b) {
  a.require_same_shape(b);
  T sum{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_exact_zero(a[i]) || is_exact_zero(b[i])) continue;
    sum += a[i] * field_traits<T>::conj(b[i]);
  }
  return sum;
}

template <class T>
typename field_traits<T>::real_type kv_norm2(const KVector<T>& a) {
  return field_traits<T>::real(kv_inner(a, a));
}

}  // namespace grasscurve
