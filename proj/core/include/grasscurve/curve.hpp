#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "grasscurve/dense.hpp"
#include "grasscurve/exterior.hpp"
#include "grasscurve/polysurface.hpp"

namespace grasscurve {

class CurveError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Float-mode thresholds; exact mode ignores them.
struct CurveTolerances {
  double binomial = 1e-9;    // relative, Hermitian-surface recognition
  double reducible = 1e-12;  // absolute, second-wedge vanishing
  double constraint = 1e-9;  // relative Frobenius residual of UU*, QQ*
  double pivot = 1e-12;      // relative, constancy of the normalization pivot
};

template <class R>
R real_from_rat(const Rat& q) {
  if constexpr (std::is_same_v<R, double>) {
    return q.get_d();
  } else {
    return R(q);
  }
}

/// Holomorphic curve [I_2, F(z)] in G(2, n+2) with F = sum_{alpha>=1} A_alpha z^alpha.
/// coeffs[alpha-1] is the 2 x n matrix A_alpha; row r is a_{r+1}^{(alpha)}.
template <class T>
struct CurveForm {
  int n = 0;
  std::vector<Matrix<T>> coeffs;

  struct Entry {
    int row;
    int col;
    int power;
    T value;
  };

  static CurveForm zero(int n, int m) {
    if (n < 1 || m < 1) throw CurveError("curve needs n >= 1 and at least one coefficient");
    return CurveForm{n, std::vector<Matrix<T>>(static_cast<std::size_t>(m), Matrix<T>(2, n))};
  }

  /// Builds F from monomials value * z^power at (row, col); power >= 1.
  static CurveForm from_entries(int n, const std::vector<Entry>& entries) {
    int m = 1;
    for (const auto& e : entries) {
      if (e.power < 1) throw CurveError("normal form requires F(0) = 0");
      if (e.row < 0 || e.row > 1 || e.col < 0 || e.col >= n) throw CurveError("entry out of range");
      m = std::max(m, e.power);
    }
    CurveForm c = zero(n, m);
    for (const auto& e : entries) c.coeffs[e.power - 1](e.row, e.col) += e.value;
    c.trim();
    return c;
  }

  /// Drops trailing all-zero coefficient matrices (keeps at least A_1).
  void trim() {
    auto zero = [](const Matrix<T>& a) {
      for (const auto& x : a.data()) {
        if (!is_exact_zero(x)) return false;
      }
      return true;
    };
    while (coeffs.size() > 1 && zero(coeffs.back())) coeffs.pop_back();
  }

  int m() const { return static_cast<int>(coeffs.size()); }
  int ambient() const { return n + 2; }
  const T& entry(int alpha, int row, int col) const { return coeffs[alpha - 1](row, col); }

  /// a_{row+1}^{(alpha)} as a vector in C^n (zero when alpha exceeds m).
  KVector<T> row_vector(int alpha, int row) const {
    KVector<T> v(n, 1);
    if (alpha >= 1 && alpha <= m()) {
      for (int j = 0; j < n; ++j) v[j] = coeffs[alpha - 1](row, j);
    }
    return v;
  }

  void validate() const {
    if (n < 1 || coeffs.empty()) throw CurveError("curve needs n >= 1 and at least one coefficient");
    for (const auto& a : coeffs) {
      if (a.rows() != 2 || a.cols() != static_cast<std::size_t>(n)) {
        throw CurveError("coefficient matrices must all be 2 x n");
      }
    }
  }

  friend bool operator==(const CurveForm& a, const CurveForm& b) = default;
};

template <class T>
CurveForm<FloatComplex> to_float(const CurveForm<T>& c) {
  CurveForm<FloatComplex> out{c.n, {}};
  for (const auto& a : c.coeffs) out.coeffs.push_back(to_float(a));
  return out;
}

/// Geometric invariant chain; K + 8 detA1sq + S/2 = 4.
template <class R>
struct CurveInvariants {
  int d = 0;
  R c{};
  R K{};
  R detA1sq{};
  R S{};
};

template <class R>
CurveInvariants<R> invariants_from(int d, const R& c) {
  if (d < 1) throw CurveError("degree must be positive");
  CurveInvariants<R> inv;
  inv.d = d;
  inv.c = c;
  inv.K = real_from_rat<R>(Rat(4, d));
  inv.detA1sq = c * real_from_rat<R>(Rat(1, d * d));
  inv.S = real_from_rat<R>(Rat(8 * d - 8, d)) - c * real_from_rat<R>(Rat(16, d * d));
  return inv;
}

// ---------------------------------------------------------------------------

/// v1 = eps_1 + F_1 and v2 = eps_2 + F_2 as polynomials in C^{n+2}.
template <class T>
std::pair<PolyKVector<T>, PolyKVector<T>> frames(const CurveForm<T>& curve) {
  curve.validate();
  const int N = curve.ambient();
  std::vector<KVector<T>> v1(static_cast<std::size_t>(curve.m()) + 1, KVector<T>(N, 1));
  std::vector<KVector<T>> v2 = v1;
  v1[0][0] = T(1);
  v2[0][1] = T(1);
  for (int alpha = 1; alpha <= curve.m(); ++alpha) {
    for (int j = 0; j < curve.n; ++j) {
      v1[alpha][j + 2] = curve.entry(alpha, 0, j);
      v2[alpha][j + 2] = curve.entry(alpha, 1, j);
    }
  }
  return {PolyKVector<T>(std::move(v1)), PolyKVector<T>(std::move(v2))};
}

template <class T>
struct PluckerSurface {
  HermitianSurface<T> surface;
  std::optional<BinomialMatch<typename field_traits<T>::real_type>> match;
  /// Trimmed degree of v1 ^ v2.
  int degree = 0;
};

template <class T>
PluckerSurface<T> plucker_surface(const CurveForm<T>& curve, const CurveTolerances& tol = {}) {
  const auto [v1, v2] = frames(curve);
  const auto w = pv_wedge(v1, v2);
  PluckerSurface<T> out{herm_surface(w), std::nullopt, w.degree()};
  out.match = match_binomial(out.surface, tol.binomial);
  return out;
}

/// v1 ^ v2 ^ dv1 ^ dv2 in Lambda^4 C^{n+2}; requires n >= 2.
template <class T>
PolyKVector<T> second_wedge(const CurveForm<T>& curve) {
  if (curve.n < 2) throw CurveError("second wedge needs n >= 2");
  const auto [v1, v2] = frames(curve);
  const auto d1 = pv_derivative(v1);
  const auto d2 = pv_derivative(v2);
  return pv_wedge(pv_wedge(pv_wedge(v1, v2), d1), d2);
}

template <class T>
double max_coefficient_magnitude(const PolyKVector<T>& w) {
  double m = 0.0;
  for (const auto& c : w.coeffs()) {
    for (const auto& x : c.coeffs()) m = std::max(m, std::abs(field_traits<T>::to_float(x)));
  }
  return m;
}

template <class T>
bool is_reducible(const CurveForm<T>& curve, const CurveTolerances& tol = {}) {
  if (curve.n < 2) return true;
  const auto w = second_wedge(curve);
  if constexpr (field_traits<T>::exact) {
    return w.is_zero();
  } else {
    return max_coefficient_magnitude(w) <= tol.reducible;
  }
}

/// Invariant chain (d, c, K, |det A1|^2, S). Throws CurveError with
/// "not constantly curved" or "second form not constant".
template <class T>
CurveInvariants<typename field_traits<T>::real_type> invariant_chain(const CurveForm<T>& curve,
                                                                      const CurveTolerances& tol = {}) {
  using F = field_traits<T>;
  using R = typename F::real_type;
  const auto pl = plucker_surface(curve, tol);
  bool unit = false;
  if (pl.match) {
    if constexpr (F::exact) {
      unit = pl.match->c0 == R(1);
    } else {
      unit = std::abs(pl.match->c0 - 1.0) <= tol.binomial;
    }
  }
  if (!unit || pl.match->m < 1) throw CurveError("not constantly curved");
  const int d = pl.match->m;
  if (is_reducible(curve, tol)) return invariants_from<R>(d, R{});
  const auto sm = match_binomial(herm_surface(second_wedge(curve)), tol.binomial);
  if (!sm || sm->m != 2 * d - 4) throw CurveError("second form not constant");
  return invariants_from<R>(d, sm->c0);
}

// ---------------------------------------------------------------------------

/// Coefficient-block form of both identities: U rows (1|0|0), (0|W_k|V_k);
/// Q rows (R_{k+2}|S_{k+2}|T_{k+2}|X_{k+2}). Column order within each block
/// is the lexicographic multi-index rank. Rows past d (resp. 2d-4) that
/// carry nonzero blocks are kept, with zero targets.
template <class T>
struct ConstraintMatrices {
  using R = typename field_traits<T>::real_type;
  int d = 0;
  R c{};
  Matrix<T> U;
  Matrix<T> Q;
  std::vector<R> lambda1;
  std::vector<R> lambda2;
};

/// Coefficient blocks of F1 ^ F2 and its derivative products, indexed by
/// the power of z they multiply (V_j z^j, R_j z^{j-2},
/// S_p z^{p-2}, T_p z^{p-2}, X_p z^{p-2}).
template <class T>
struct CoefficientBlocks {
  std::vector<KVector<T>> V, R, S, Tb, X;
};

template <class T>
CoefficientBlocks<T> coefficient_blocks(const CurveForm<T>& curve) {
  const int n = curve.n;
  const int m = curve.m();
  CoefficientBlocks<T> b;
  auto zero = [n](int k, std::size_t len) {
    return std::vector<KVector<T>>(len, k <= n ? KVector<T>(n, k) : KVector<T>(0, 0));
  };
  b.V = zero(2, 2 * m + 1);
  b.R = zero(2, 2 * m + 1);
  b.S = zero(3, 3 * m + 1);
  b.Tb = zero(3, 3 * m + 1);
  b.X = zero(4, 4 * m + 1);
  if (n < 2) return b;
  std::vector<KVector<T>> a1, a2;
  for (int alpha = 0; alpha <= m; ++alpha) {
    a1.push_back(curve.row_vector(alpha, 0));
    a2.push_back(curve.row_vector(alpha, 1));
  }
  for (int alpha = 1; alpha <= m; ++alpha) {
    for (int beta = 1; beta <= m; ++beta) {
      const auto w = wedge(a1[alpha], a2[beta]);
      b.V[alpha + beta] += w;
      b.R[alpha + beta] += w * T(static_cast<long>(alpha * beta));
    }
  }
  if (n >= 3) {
    for (int j = 2; j <= 2 * m; ++j) {
      if (b.R[j].is_zero()) continue;
      for (int alpha = 1; alpha <= m; ++alpha) {
        wedge_accumulate(b.R[j], a1[alpha], b.S[j + alpha]);
        wedge_accumulate(b.R[j], a2[alpha], b.Tb[j + alpha]);
      }
    }
  }
  if (n >= 4) {
    for (int j = 2; j <= 2 * m; ++j) {
      if (b.R[j].is_zero()) continue;
      for (int k = 2; k <= 2 * m; ++k) wedge_accumulate(b.R[j], b.V[k], b.X[j + k]);
    }
  }
  return b;
}

namespace detail {

template <class T>
void put_block(Matrix<T>& M, std::size_t row, std::size_t col, const std::vector<KVector<T>>& blocks,
               int index) {
  if (index < 0 || index >= static_cast<int>(blocks.size())) return;
  const auto& kv = blocks[static_cast<std::size_t>(index)];
  for (std::size_t i = 0; i < kv.size() && kv.ambient() > 0; ++i) M(row, col + i) = kv[i];
}

template <class T>
bool row_is_zero(const Matrix<T>& M, std::size_t r) {
  for (std::size_t c = 0; c < M.cols(); ++c) {
    if (!is_exact_zero(M(r, c))) return false;
  }
  return true;
}

template <class T>
Matrix<T> keep_rows(const Matrix<T>& M, std::size_t rows) {
  Matrix<T> out(rows, M.cols());
  for (std::size_t r = 0; r < std::min(rows, M.rows()); ++r) {
    for (std::size_t c = 0; c < M.cols(); ++c) out(r, c) = M(r, c);
  }
  return out;
}

/// Keeps at least `min_rows` rows and every nonzero row.
template <class T>
Matrix<T> trim_rows(const Matrix<T>& M, std::size_t min_rows) {
  std::size_t last = 0;
  for (std::size_t r = 0; r < M.rows(); ++r) {
    if (!row_is_zero(M, r)) last = r + 1;
  }
  return keep_rows(M, std::max(min_rows, last));
}

}  // namespace detail

/// Assembles U, Q and the targets. d defaults to the trimmed degree of
/// v1 ^ v2, i.e. the exponent of the identity when it holds.
template <class T>
ConstraintMatrices<T> assemble_constraints(const CurveForm<T>& curve,
                                           const typename field_traits<T>::real_type& c,
                                           std::optional<int> d_opt = {}) {
  using R = typename field_traits<T>::real_type;
  curve.validate();
  const int n = curve.n;
  const int m = curve.m();
  const auto blocks = coefficient_blocks(curve);
  const int d = d_opt ? *d_opt : [&] {
    int deg = 0;
    for (int k = 1; k <= 2 * m; ++k) {
      bool nz = k <= m && !(curve.row_vector(k, 0).is_zero() && curve.row_vector(k, 1).is_zero());
      if (!nz && n >= 2) nz = !blocks.V[k].is_zero();
      if (nz) deg = k;
    }
    return std::max(deg, 1);
  }();

  const std::size_t l2 = binomial(n, 2), l3 = binomial(n, 3), l4 = binomial(n, 4);
  Matrix<T> U(static_cast<std::size_t>(std::max(2 * m, d)) + 1, 1 + 2 * static_cast<std::size_t>(n) + l2);
  U(0, 0) = T(1);
  for (int k = 1; k <= std::max(2 * m, d); ++k) {
    if (k <= m) {
      for (int j = 0; j < n; ++j) {
        U(k, 1 + j) = curve.entry(k, 0, j);
        U(k, 1 + n + j) = curve.entry(k, 1, j);
      }
    }
    if (n >= 2) detail::put_block(U, k, 1 + 2 * n, blocks.V, k);
  }
  const std::size_t q_rows_all = static_cast<std::size_t>(std::max(4 * m - 1, 2 * d - 3));
  Matrix<T> Q(std::max<std::size_t>(q_rows_all, 1), l2 + 2 * l3 + l4);
  for (std::size_t k = 0; k < Q.rows(); ++k) {
    const int p = static_cast<int>(k) + 2;
    if (n >= 2) detail::put_block(Q, k, 0, blocks.R, p);
    if (n >= 3) {
      detail::put_block(Q, k, l2, blocks.S, p);
      detail::put_block(Q, k, l2 + l3, blocks.Tb, p);
    }
    if (n >= 4) detail::put_block(Q, k, l2 + 2 * l3, blocks.X, p);
  }

  ConstraintMatrices<T> cm;
  cm.d = d;
  cm.c = c;
  cm.U = detail::trim_rows(U, static_cast<std::size_t>(d) + 1);
  cm.Q = detail::trim_rows(Q, static_cast<std::size_t>(std::max(0, 2 * d - 3)));
  for (std::size_t k = 0; k < cm.U.rows(); ++k) {
    cm.lambda1.push_back(R(static_cast<long>(binomial(d, static_cast<long>(k)))));
  }
  for (std::size_t k = 0; k < cm.Q.rows(); ++k) {
    cm.lambda2.push_back(c * R(static_cast<long>(binomial(2 * d - 4, static_cast<long>(k)))));
  }
  return cm;
}

struct ConstraintCheck {
  bool unitary_ok = false;  // UU* = Lambda_1
  bool second_ok = false;   // QQ* = Lambda_2
  double residual_u = 0.0;  // Frobenius norm of UU* - Lambda_1
  double residual_q = 0.0;  // Frobenius norm of QQ* - Lambda_2
};

template <class T>
ConstraintCheck check_constraints(const ConstraintMatrices<T>& cm, const CurveTolerances& tol = {}) {
  using F = field_traits<T>;
  auto target = [](const auto& lam) {
    std::vector<T> diag;
    for (const auto& x : lam) diag.push_back(F::from_real(x));
    return diagonal(diag);
  };
  const Matrix<T> g1 = gram(cm.U);
  const Matrix<T> g2 = gram(cm.Q);
  const Matrix<T> t1 = target(cm.lambda1);
  const Matrix<T> t2 = target(cm.lambda2);
  ConstraintCheck out;
  out.residual_u = frobenius_distance(g1, t1);
  out.residual_q = frobenius_distance(g2, t2);
  if constexpr (F::exact) {
    out.unitary_ok = g1 == t1;
    out.second_ok = g2 == t2;
  } else {
    auto scale = [](const Matrix<T>& t) {
      double s = 0.0;
      for (const auto& x : t.data()) s += std::norm(x);
      return std::max(1.0, std::sqrt(s));
    };
    out.unitary_ok = out.residual_u <= tol.constraint * scale(t1);
    out.second_ok = out.residual_q <= tol.constraint * scale(t2);
  }
  return out;
}

/// |R_2|^2, the first diagonal entry of QQ*, which equals c whenever the
/// second identity holds.
template <class T>
typename field_traits<T>::real_type leading_wedge_constant(const CurveForm<T>& curve) {
  using R = typename field_traits<T>::real_type;
  if (curve.n < 2) return R{};
  const auto b = coefficient_blocks(curve);
  return kv_norm2(b.R[2]);
}

/// Ramified points: common zeros of the second wedge, with infinity
/// checked against the expected degree 2d - 4. Throws for reducible curves.
template <class T>
std::vector<RootPoint> ramification(const CurveForm<T>& curve, const CurveTolerances& tol = {}) {
  if (is_reducible(curve, tol)) throw CurveError("ramification undefined for reducible curve");
  int d = 0;
  try {
    d = invariant_chain(curve, tol).d;
  } catch (const CurveError&) {
    d = plucker_surface(curve, tol).degree;
  }
  return common_roots(second_wedge(curve), 2 * d - 4);
}

// ---------------------------------------------------------------------------

template <class T>
Poly<T> poly_mul(const Poly<T>& a, const Poly<T>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<T> out(a.size() + b.size() - 1, T{});
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_exact_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  poly_trim(out);
  return out;
}

template <class T>
Poly<T> poly_add(const Poly<T>& a, const Poly<T>& b) {
  Poly<T> out(std::max(a.size(), b.size()), T{});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  poly_trim(out);
  return out;
}

template <class T>
Poly<T> poly_sub(const Poly<T>& a, const Poly<T>& b) {
  Poly<T> out(std::max(a.size(), b.size()), T{});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  poly_trim(out);
  return out;
}

/// Orthonormal completion of span{v1(0), v2(0)} used by normalize_span.
/// Returns the coordinate change as a matrix acting on row vectors.
Matrix<FloatComplex> origin_unitary(const std::vector<FloatComplex>& p0, const std::vector<FloatComplex>& q0);

/// Brings the frame (v1, v2) to normal form [I_2, F] with F(0) = 0: a
/// constant unitary moves span{v1(0), v2(0)} onto the first two axes, then
/// the leading 2 x 2 block is inverted. Exact scalars require the origin
/// span to be coordinate-aligned (a permutation suffices).
template <class T>
CurveForm<T> normalize_span(const PolyKVector<T>& v1, const PolyKVector<T>& v2, const CurveTolerances& tol = {}) {
  using F = field_traits<T>;
  if (v1.ambient() != v2.ambient() || v1.kdegree() != 1 || v2.kdegree() != 1) {
    throw CurveError("normalize_span expects two vectors in the same ambient space");
  }
  const int N = v1.ambient();
  if (N < 3) throw CurveError("normalize_span needs ambient dimension at least 3");
  const std::size_t len = static_cast<std::size_t>(std::max(v1.degree(), v2.degree())) + 1;
  // rows[s][col] is the scalar polynomial of frame s in coordinate col.
  std::vector<std::vector<Poly<T>>> rows(2, std::vector<Poly<T>>(static_cast<std::size_t>(N)));
  for (int col = 0; col < N; ++col) {
    rows[0][col] = v1.component(static_cast<std::size_t>(col));
    rows[1][col] = v2.component(static_cast<std::size_t>(col));
  }

  std::vector<int> support;
  for (int col = 0; col < N; ++col) {
    if (!is_exact_zero(rows[0][col][0]) || !is_exact_zero(rows[1][col][0])) support.push_back(col);
  }
  auto minor_at_origin = [&](int c1, int c2) {
    return rows[0][c1][0] * rows[1][c2][0] - rows[0][c2][0] * rows[1][c1][0];
  };
  std::vector<std::vector<Poly<T>>> moved(2, std::vector<Poly<T>>(static_cast<std::size_t>(N)));
  if (support.size() == 2 && !is_exact_zero(minor_at_origin(support[0], support[1]))) {
    std::vector<int> order = support;
    for (int col = 0; col < N; ++col) {
      if (col != support[0] && col != support[1]) order.push_back(col);
    }
    for (int s = 0; s < 2; ++s) {
      for (int col = 0; col < N; ++col) moved[s][col] = rows[s][order[col]];
    }
  } else if constexpr (F::exact) {
    if (support.size() < 2) throw CurveError("dependent frame at origin");
    throw CurveError("exact normalization needs a coordinate-aligned frame at the origin");
  } else {
    std::vector<FloatComplex> p0(N), q0(N);
    for (int col = 0; col < N; ++col) {
      p0[col] = rows[0][col][0];
      q0[col] = rows[1][col][0];
    }
    const Matrix<FloatComplex> W = origin_unitary(p0, q0);
    for (int s = 0; s < 2; ++s) {
      for (int out = 0; out < N; ++out) {
        Poly<T> acc(len, T{});
        for (int in = 0; in < N; ++in) {
          for (std::size_t j = 0; j < rows[s][in].size(); ++j) acc[j] += rows[s][in][j] * W(in, out);
        }
        moved[s][out] = std::move(acc);
      }
    }
  }
  for (auto& r : moved) {
    for (auto& p : r) poly_trim(p);
  }

  Poly<T> det = poly_sub(poly_mul(moved[0][0], moved[1][1]), poly_mul(moved[0][1], moved[1][0]));
  if (det.empty()) throw CurveError("dependent frame at origin");
  if constexpr (F::exact) {
    if (det.size() != 1) throw CurveError("nonconstant pivot minor");
  } else {
    const double lead = std::abs(det[0]);
    if (lead == 0.0) throw CurveError("dependent frame at origin");
    for (std::size_t j = 1; j < det.size(); ++j) {
      if (std::abs(det[j]) > tol.pivot * lead) throw CurveError("nonconstant pivot minor");
    }
  }
  const T det_inv = F::inverse(det[0]);
  // Adjugate of the leading block, scaled by 1/det.
  const Poly<T> inv00 = poly_mul(moved[1][1], Poly<T>{det_inv});
  const Poly<T> inv01 = poly_mul(moved[0][1], Poly<T>{-det_inv});
  const Poly<T> inv10 = poly_mul(moved[1][0], Poly<T>{-det_inv});
  const Poly<T> inv11 = poly_mul(moved[0][0], Poly<T>{det_inv});

  const int n = N - 2;
  std::vector<std::vector<Poly<T>>> Fp(2, std::vector<Poly<T>>(static_cast<std::size_t>(n)));
  int m = 1;
  for (int j = 0; j < n; ++j) {
    const auto& p1 = moved[0][j + 2];
    const auto& p2 = moved[1][j + 2];
    Fp[0][j] = poly_add(poly_mul(inv00, p1), poly_mul(inv01, p2));
    Fp[1][j] = poly_add(poly_mul(inv10, p1), poly_mul(inv11, p2));
    for (int r = 0; r < 2; ++r) {
      auto& p = Fp[r][j];
      if (!p.empty()) {
        if constexpr (F::exact) {
          if (!is_exact_zero(p[0])) throw CurveError("normal form has F(0) != 0");
        } else if (std::abs(p[0]) > 1e-9) {
          throw CurveError("normal form has F(0) != 0");
        }
        m = std::max(m, static_cast<int>(p.size()) - 1);
      }
    }
  }
  CurveForm<T> out = CurveForm<T>::zero(n, m);
  for (int r = 0; r < 2; ++r) {
    for (int j = 0; j < n; ++j) {
      const auto& p = Fp[r][j];
      for (std::size_t a = 1; a < p.size(); ++a) out.coeffs[a - 1](r, j) = p[a];
    }
  }
  return out;
}

/// Column map of F: column j of the source lands in column target[j] with sign[j].
struct SignedPermutation {
  std::vector<int> target;
  std::vector<int> sign;
};

template <class T>
CurveForm<T> apply_signed_permutation(const CurveForm<T>& c, const SignedPermutation& p) {
  CurveForm<T> out = CurveForm<T>::zero(c.n, c.m());
  for (int a = 0; a < c.m(); ++a) {
    for (int r = 0; r < 2; ++r) {
      for (int j = 0; j < c.n; ++j) {
        const T& x = c.coeffs[a](r, j);
        out.coeffs[a](r, p.target[j]) = p.sign[j] > 0 ? x : T{} - x;
      }
    }
  }
  return out;
}

/// Searches all signed column permutations taking a onto b exactly.
template <class T>
std::optional<SignedPermutation> find_signed_permutation(const CurveForm<T>& a, const CurveForm<T>& b) {
  if (a.n != b.n) return std::nullopt;
  const int n = a.n;
  const int m = std::max(a.m(), b.m());
  auto at = [](const CurveForm<T>& c, int al, int r, int j) { return al < c.m() ? c.coeffs[al](r, j) : T{}; };
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) perm[j] = j;
  do {
    SignedPermutation p{perm, std::vector<int>(static_cast<std::size_t>(n), 1)};
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      bool plus = true, minus = true;
      for (int al = 0; al < m; ++al) {
        for (int r = 0; r < 2; ++r) {
          const T x = at(a, al, r, j);
          const T y = at(b, al, r, perm[j]);
          if (!(x == y)) plus = false;
          if (!(T{} - x == y)) minus = false;
        }
      }
      if (plus) {
        p.sign[j] = 1;
      } else if (minus) {
        p.sign[j] = -1;
      } else {
        ok = false;
      }
    }
    if (ok) return p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace grasscurve
