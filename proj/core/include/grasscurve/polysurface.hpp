#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "grasscurve/dense.hpp"
#include "grasscurve/exterior.hpp"

namespace grasscurve {

/// Polynomial sum_j c_j z^j with k-vector coefficients. Trailing zero
/// coefficients are trimmed; the zero polynomial is one zero coefficient.
template <class T>
class PolyKVector {
public:
  PolyKVector() = default;
  PolyKVector(int ambient, int degree) : coeffs_{KVector<T>(ambient, degree)} {}
  explicit PolyKVector(std::vector<KVector<T>> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw ShapeError("polynomial needs at least one coefficient");
    for (const auto& c : coeffs_) coeffs_.front().require_same_shape(c);
    trim();
  }

  /// Degree-1 valued polynomial from per-component scalar polynomials.
  static PolyKVector from_components(const std::vector<std::vector<T>>& components) {
    std::size_t len = 1;
    for (const auto& c : components) len = std::max(len, c.size());
    const int n = static_cast<int>(components.size());
    std::vector<KVector<T>> coeffs(len, KVector<T>(n, 1));
    for (int i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < components[i].size(); ++j) coeffs[j][i] = components[i][j];
    }
    return PolyKVector(std::move(coeffs));
  }

  int ambient() const { return coeffs_.front().ambient(); }
  int kdegree() const { return coeffs_.front().degree(); }
  /// Polynomial degree in z (0 for constants and for the zero polynomial).
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<KVector<T>>& coeffs() const { return coeffs_; }
  const KVector<T>& operator[](std::size_t j) const { return coeffs_[j]; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0].is_zero(); }

  /// Scalar polynomial of the basis coordinate with the given rank.
  std::vector<T> component(std::size_t rank) const {
    std::vector<T> p;
    p.reserve(coeffs_.size());
    for (const auto& c : coeffs_) p.push_back(c[rank]);
    return p;
  }

  friend bool operator==(const PolyKVector& a, const PolyKVector& b) = default;
  friend PolyKVector operator+(const PolyKVector& a, const PolyKVector& b) {
    a.coeffs_.front().require_same_shape(b.coeffs_.front());
    std::vector<KVector<T>> out(std::max(a.coeffs_.size(), b.coeffs_.size()),
                                KVector<T>(a.ambient(), a.kdegree()));
    for (std::size_t j = 0; j < a.coeffs_.size(); ++j) out[j] += a.coeffs_[j];
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[j] += b.coeffs_[j];
    return PolyKVector(std::move(out));
  }

private:
  void trim() {
    while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
  }
  std::vector<KVector<T>> coeffs_{KVector<T>(0, 0)};
};

template <class T>
PolyKVector<T> pv_derivative(const PolyKVector<T>& w) {
  if (w.degree() == 0) return PolyKVector<T>(w.ambient(), w.kdegree());
  std::vector<KVector<T>> out;
  out.reserve(w.coeffs().size() - 1);
  for (std::size_t j = 1; j < w.coeffs().size(); ++j) {
    out.push_back(w[j] * T(static_cast<long>(j)));
  }
  return PolyKVector<T>(std::move(out));
}

/// Cauchy product of the coefficient sequences under the exterior wedge.
template <class T>
PolyKVector<T> pv_wedge(const PolyKVector<T>& a, const PolyKVector<T>& b) {
  if (a.ambient() != b.ambient()) throw ShapeError("pv_wedge: ambient mismatch");
  if (a.kdegree() + b.kdegree() > a.ambient()) throw ShapeError("pv_wedge: degree exceeds ambient");
  std::vector<KVector<T>> out(a.coeffs().size() + b.coeffs().size() - 1,
                              KVector<T>(a.ambient(), a.kdegree() + b.kdegree()));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) wedge_accumulate(a[i], b[j], out[i + j]);
  }
  return PolyKVector<T>(std::move(out));
}

/// Gram matrix H[j][k] = <c_j, c_k>, representing sum H[j][k] z^j zbar^k.
template <class T>
struct HermitianSurface {
  Matrix<T> h;
  std::size_t size() const { return h.rows(); }
  friend bool operator==(const HermitianSurface& a, const HermitianSurface& b) = default;
};

template <class T>
HermitianSurface<T> herm_surface(const PolyKVector<T>& w) {
  const std::size_t m = w.coeffs().size();
  HermitianSurface<T> s{Matrix<T>(m, m)};
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j; k < m; ++k) {
      T v = kv_inner(w[j], w[k]);
      if (j != k) s.h(k, j) = field_traits<T>::conj(v);
      s.h(j, k) = std::move(v);
    }
  }
  return s;
}

template <class R>
struct BinomialMatch {
  R c0;
  int m;
};

inline constexpr double kBinomialTolerance = 1e-9;

/// Recognizes H as c0 * (1 + z zbar)^m with m = size - 1: exact equality
/// for exact scalars, entrywise tolerance tol * c0 for floats.
template <class T>
std::optional<BinomialMatch<typename field_traits<T>::real_type>> match_binomial(
    const HermitianSurface<T>& s, double tol = kBinomialTolerance) {
  using F = field_traits<T>;
  using R = typename F::real_type;
  const std::size_t size = s.size();
  if (size == 0) return std::nullopt;
  const int m = static_cast<int>(size) - 1;
  const T& h00 = s.h(0, 0);
  if constexpr (F::exact) {
    if (!F::imag(h00).is_zero()) return std::nullopt;
    const R c0 = F::real(h00);
    for (std::size_t j = 0; j < size; ++j) {
      for (std::size_t k = 0; k < size; ++k) {
        if (j == k) {
          const R expected = c0 * R(static_cast<long>(binomial(m, static_cast<long>(k))));
          if (!(s.h(j, k) == T(expected))) return std::nullopt;
        } else if (!F::is_zero(s.h(j, k))) {
          return std::nullopt;
        }
      }
    }
    return BinomialMatch<R>{c0, m};
  } else {
    const double c0 = F::real(h00);
    const double bound = tol * std::abs(c0);
    for (std::size_t j = 0; j < size; ++j) {
      for (std::size_t k = 0; k < size; ++k) {
        const double expected = j == k ? c0 * static_cast<double>(binomial(m, static_cast<long>(k))) : 0.0;
        if (std::abs(F::to_float(s.h(j, k)) - FloatComplex(expected, 0.0)) > bound) return std::nullopt;
      }
    }
    return BinomialMatch<R>{c0, m};
  }
}

class SurfaceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Float evaluation of sum H[j][k] z^j zbar^k. Throws SurfaceError when the
/// imaginary residue exceeds 1e-9 (relative to the term magnitudes).
double surface_eval(const HermitianSurface<FloatComplex>& s, FloatComplex z);

template <class T>
double surface_eval(const HermitianSurface<T>& s, FloatComplex z) {
  return surface_eval(HermitianSurface<FloatComplex>{to_float(s.h)}, z);
}

// ---------------------------------------------------------------------------
// Scalar polynomials (coefficients low to high) used for root analysis.

template <class T>
using Poly = std::vector<T>;

template <class T>
void poly_trim(Poly<T>& p) {
  while (!p.empty() && is_exact_zero(p.back())) p.pop_back();
}

template <class T>
Poly<T> poly_derivative(const Poly<T>& p) {
  Poly<T> out;
  for (std::size_t j = 1; j < p.size(); ++j) out.push_back(p[j] * T(static_cast<long>(j)));
  poly_trim(out);
  return out;
}

/// Exact division with remainder; b must be nonzero.
template <class T>
std::pair<Poly<T>, Poly<T>> poly_divmod(Poly<T> a, Poly<T> b) {
  poly_trim(a);
  poly_trim(b);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  const T lead_inv = field_traits<T>::inverse(b.back());
  Poly<T> q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, T{});
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const T f = a.back() * lead_inv;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!is_exact_zero(b[j])) a[shift + j] -= f * b[j];
    }
    q[shift] = f;
    a.pop_back();
    poly_trim(a);
  }
  return {std::move(q), std::move(a)};
}

template <class T>
Poly<T> poly_monic(Poly<T> p) {
  poly_trim(p);
  if (p.empty()) return p;
  const T inv = field_traits<T>::inverse(p.back());
  for (auto& c : p) c *= inv;
  return p;
}

/// Monic gcd by the Euclidean algorithm (exact scalars).
template <class T>
Poly<T> poly_gcd_exact(Poly<T> a, Poly<T> b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    auto r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(std::move(a));
}

/// Yun's square-free decomposition: returns (factor, multiplicity) with
/// p = lead * prod factor^multiplicity; constant factors are dropped.
template <class T>
std::vector<std::pair<Poly<T>, int>> square_free_factors(const Poly<T>& p_in) {
  std::vector<std::pair<Poly<T>, int>> out;
  Poly<T> p = poly_monic(p_in);
  if (p.size() <= 1) return out;
  Poly<T> dp = poly_derivative(p);
  Poly<T> a = poly_gcd_exact(p, dp);
  Poly<T> b = poly_divmod(p, a).first;
  Poly<T> c = poly_divmod(dp, a).first;
  Poly<T> d = c;
  {
    Poly<T> db = poly_derivative(b);
    d.resize(std::max(d.size(), db.size()), T{});
    for (std::size_t j = 0; j < db.size(); ++j) d[j] -= db[j];
    poly_trim(d);
  }
  int i = 1;
  while (b.size() > 1) {
    a = poly_gcd_exact(b, d);
    if (a.size() > 1) out.emplace_back(a, i);
    b = poly_divmod(b, a).first;
    c = poly_divmod(d, a).first;
    Poly<T> db = poly_derivative(b);
    d = c;
    d.resize(std::max(d.size(), db.size()), T{});
    for (std::size_t j = 0; j < db.size(); ++j) d[j] -= db[j];
    poly_trim(d);
    ++i;
  }
  return out;
}

/// Numeric roots of p (companion-matrix eigenvalues).
std::vector<FloatComplex> poly_roots(const Poly<FloatComplex>& p);

/// Monic numeric gcd of several polynomials; remainders with norm at most
/// rel_tol times the input norm count as zero.
Poly<FloatComplex> poly_gcd_numeric(const std::vector<Poly<FloatComplex>>& polys,
                                    double rel_tol = 1e-8);

struct RootPoint {
  FloatComplex z;
  int multiplicity = 1;
  bool at_infinity = false;
};

/// Roots of p with multiplicities, clustering numerically close roots.
std::vector<RootPoint> clustered_roots(const Poly<FloatComplex>& p, double cluster_tol = 1e-5);

/// Common zeros of all scalar components of w. When expected_degree exceeds
/// deg w, the point at infinity is reported with the missing multiplicity.
/// Exact scalars use an exact gcd and square-free split; floats (or exact
/// inputs whose radicals outgrow inversion) use the numeric gcd.
template <class T>
std::vector<RootPoint> common_roots(const PolyKVector<T>& w, std::optional<int> expected_degree = {}) {
  if (w.is_zero()) throw std::domain_error("common_roots: identically zero input");
  std::vector<Poly<T>> comps;
  for (std::size_t r = 0; r < w[0].size(); ++r) {
    Poly<T> p = w.component(r);
    poly_trim(p);
    if (!p.empty()) comps.push_back(std::move(p));
  }
  std::vector<RootPoint> out;
  bool done = false;
  if constexpr (field_traits<T>::exact) {
    try {
      Poly<T> g = comps.front();
      for (std::size_t i = 1; i < comps.size() && g.size() > 1; ++i) g = poly_gcd_exact(g, comps[i]);
      for (const auto& [factor, mult] : square_free_factors(g)) {
        Poly<FloatComplex> f;
        for (const auto& c : factor) f.push_back(field_traits<T>::to_float(c));
        for (const auto& z : poly_roots(f)) out.push_back({z, mult, false});
      }
      done = true;
    } catch (const ScalarError&) {
      out.clear();
    }
  }
  if (!done) {
    std::vector<Poly<FloatComplex>> fc;
    for (const auto& p : comps) {
      Poly<FloatComplex> f;
      for (const auto& c : p) f.push_back(field_traits<T>::to_float(c));
      fc.push_back(std::move(f));
    }
    out = clustered_roots(poly_gcd_numeric(fc));
  }
  if (expected_degree && *expected_degree > w.degree()) {
    out.push_back({FloatComplex{}, *expected_degree - w.degree(), true});
  }
  return out;
}

}  // namespace grasscurve
