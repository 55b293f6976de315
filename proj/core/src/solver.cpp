#include "grasscurve/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "grasscurve/family.hpp"
#include "json.hpp"

namespace grasscurve {

namespace {

/// Holomorphic first-order jet: value plus derivatives along up to K complex entries.
template <int K>
struct Jet {
  FloatComplex v{};
  std::array<FloatComplex, K> d{};

  Jet() = default;
  Jet(long x) : v(static_cast<double>(x)) {}  // NOLINT(google-explicit-constructor)

  Jet& operator+=(const Jet& o) {
    v += o.v;
    for (int i = 0; i < K; ++i) d[i] += o.d[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v -= o.v;
    for (int i = 0; i < K; ++i) d[i] -= o.d[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    for (int i = 0; i < K; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend bool operator==(const Jet&, const Jet&) = default;
};

template <int K>
bool is_exact_zero(const Jet<K>& a) {
  if (a.v != FloatComplex{}) return false;
  for (const auto& x : a.d) {
    if (x != FloatComplex{}) return false;
  }
  return true;
}

constexpr int kJetWidth = 32;
using ChunkJet = Jet<kJetWidth>;

using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

struct Layout {
  std::size_t u_rows = 0;
  std::size_t q_rows = 0;
};

Layout layout_for(int m, int d) {
  return {static_cast<std::size_t>(std::max(2 * m, d)) + 1, static_cast<std::size_t>(std::max(4 * m - 1, 2 * d - 3))};
}

/// Untrimmed U and Q over any scalar with the curve module's block layout.
template <class T>
std::pair<Matrix<T>, Matrix<T>> full_layout(const CurveForm<T>& curve, int d) {
  const int n = curve.n;
  const int m = curve.m();
  const auto b = coefficient_blocks(curve);
  const std::size_t l2 = binomial(n, 2), l3 = binomial(n, 3), l4 = binomial(n, 4);
  const Layout lay = layout_for(m, d);
  Matrix<T> U(lay.u_rows, 1 + 2 * static_cast<std::size_t>(n) + l2);
  U(0, 0) = T(1);
  for (std::size_t k = 1; k < lay.u_rows; ++k) {
    const int kk = static_cast<int>(k);
    if (kk <= m) {
      for (int j = 0; j < n; ++j) {
        U(k, 1 + j) = curve.entry(kk, 0, j);
        U(k, 1 + n + j) = curve.entry(kk, 1, j);
      }
    }
    detail::put_block(U, k, 1 + 2 * n, b.V, kk);
  }
  Matrix<T> Q(lay.q_rows, l2 + 2 * l3 + l4);
  for (std::size_t k = 0; k < lay.q_rows; ++k) {
    const int p = static_cast<int>(k) + 2;
    detail::put_block(Q, k, 0, b.R, p);
    if (n >= 3) {
      detail::put_block(Q, k, l2, b.S, p);
      detail::put_block(Q, k, l2 + l3, b.Tb, p);
    }
    if (n >= 4) detail::put_block(Q, k, l2 + 2 * l3, b.X, p);
  }
  return {std::move(U), std::move(Q)};
}

CMat to_eigen(const Matrix<FloatComplex>& a) {
  CMat out(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
  }
  return out;
}

std::vector<double> lambda1(std::size_t rows, int d) {
  std::vector<double> out(rows);
  for (std::size_t k = 0; k < rows; ++k) out[k] = static_cast<double>(binomial(d, static_cast<long>(k)));
  return out;
}

std::vector<double> lambda2_shape(std::size_t rows, int d) {
  std::vector<double> out(rows);
  for (std::size_t k = 0; k < rows; ++k) out[k] = static_cast<double>(binomial(2 * d - 4, static_cast<long>(k)));
  return out;
}

double ls_c(const CMat& G2, const std::vector<double>& shape) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    num += shape[k] * G2(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real();
    den += shape[k] * shape[k];
  }
  return den > 0.0 ? num / den : 0.0;
}

/// Residual entries of a Hermitian deviation: diagonal real parts, then
/// sqrt(2)-weighted real and imaginary parts above the diagonal, so the
/// squared norm equals the squared Frobenius norm.
void push_hermitian(const CMat& G, std::vector<double>& out) {
  const double w = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < G.rows(); ++i) {
    out.push_back(G(i, i).real());
    for (Eigen::Index j = i + 1; j < G.cols(); ++j) {
      out.push_back(w * G(i, j).real());
      out.push_back(w * G(i, j).imag());
    }
  }
}

struct Evaluation {
  CMat U, Q;
  double c = 0.0;
  std::vector<double> r;
};

Evaluation evaluate(const FloatCurve& curve, const Problem& pb) {
  auto [U, Q] = full_layout(curve, pb.d);
  Evaluation ev{to_eigen(U), to_eigen(Q), 0.0, {}};
  CMat G1 = ev.U * ev.U.adjoint();
  CMat G2 = ev.Q * ev.Q.adjoint();
  const auto l1 = lambda1(static_cast<std::size_t>(G1.rows()), pb.d);
  const auto l2 = lambda2_shape(static_cast<std::size_t>(G2.rows()), pb.d);
  ev.c = pb.c ? *pb.c : ls_c(G2, l2);
  for (Eigen::Index k = 0; k < G1.rows(); ++k) G1(k, k) -= l1[static_cast<std::size_t>(k)];
  for (Eigen::Index k = 0; k < G2.rows(); ++k) G2(k, k) -= ev.c * l2[static_cast<std::size_t>(k)];
  push_hermitian(G1, ev.r);
  push_hermitian(G2, ev.r);
  return ev;
}

double sum_squares(const std::vector<double>& r) {
  double s = 0.0;
  for (double x : r) s += x * x;
  return s;
}

/// Jacobian of the residual entries with respect to pack(curve).
RMat jacobian(const FloatCurve& curve, const Problem& pb, const Evaluation& ev) {
  const int n = curve.n;
  const int m = curve.m();
  const auto l2 = lambda2_shape(static_cast<std::size_t>(ev.Q.rows()), pb.d);
  double l2sq = 0.0;
  for (double x : l2) l2sq += x * x;
  const FloatComplex I(0.0, 1.0);

  CurveForm<ChunkJet> jc = CurveForm<ChunkJet>::zero(n, m);
  for (int a = 0; a < m; ++a) {
    for (int r = 0; r < 2; ++r) {
      for (int j = 0; j < n; ++j) jc.coeffs[a](r, j).v = curve.coeffs[a](r, j);
    }
  }
  const int vars = 2 * n * m;
  auto slot_of = [n](int var) { return std::array<int, 3>{var / (2 * n), (var / n) % 2, var % n}; };
  const Eigen::Index ru = ev.U.rows(), cu = ev.U.cols(), rq = ev.Q.rows(), cq = ev.Q.cols();
  // Derivatives of U and Q for every variable, stacked vertically.
  CMat dU(vars * ru, cu), dQ(vars * rq, cq);
  for (int first = 0; first < vars; first += kJetWidth) {
    const int last = std::min(vars, first + kJetWidth);
    for (int v = first; v < last; ++v) {
      const auto [a, r, j] = slot_of(v);
      jc.coeffs[a](r, j).d[v - first] = 1.0;
    }
    const auto [Ud, Qd] = full_layout(jc, pb.d);
    for (int v = first; v < last; ++v) {
      const auto [a, r, j] = slot_of(v);
      jc.coeffs[a](r, j).d[v - first] = 0.0;
      const int slot = v - first;
      for (Eigen::Index x = 0; x < ru; ++x) {
        for (Eigen::Index y = 0; y < cu; ++y) dU(v * ru + x, y) = Ud(x, y).d[slot];
      }
      for (Eigen::Index x = 0; x < rq; ++x) {
        for (Eigen::Index y = 0; y < cq; ++y) dQ(v * rq + x, y) = Qd(x, y).d[slot];
      }
    }
  }
  const CMat A1 = dU * ev.U.adjoint();
  const CMat A2 = dQ * ev.Q.adjoint();

  RMat J(static_cast<Eigen::Index>(ev.r.size()), 2 * vars);
  const double w = std::sqrt(2.0);
  // Writes d(A + A^*) (part 0) or d(i(A - A^*)) (part 1) in push_hermitian order.
  auto fill = [&](const CMat& A, Eigen::Index rows, int v, Eigen::Index row0, bool free_c) {
    const auto blk = A.block(v * rows, 0, rows, rows);
    double dc_re = 0.0, dc_im = 0.0;
    if (free_c) {
      for (Eigen::Index k = 0; k < rows; ++k) {
        dc_re += l2[static_cast<std::size_t>(k)] * 2.0 * blk(k, k).real();
        dc_im += l2[static_cast<std::size_t>(k)] * -2.0 * blk(k, k).imag();
      }
      dc_re /= l2sq;
      dc_im /= l2sq;
    }
    Eigen::Index row = row0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double lam = free_c ? l2[static_cast<std::size_t>(i)] : 0.0;
      J(row, 2 * v) = 2.0 * blk(i, i).real() - lam * dc_re;
      J(row, 2 * v + 1) = -2.0 * blk(i, i).imag() - lam * dc_im;
      ++row;
      for (Eigen::Index j = i + 1; j < rows; ++j) {
        const FloatComplex re_part = blk(i, j) + std::conj(blk(j, i));
        const FloatComplex im_part = I * (blk(i, j) - std::conj(blk(j, i)));
        J(row, 2 * v) = w * re_part.real();
        J(row, 2 * v + 1) = w * im_part.real();
        J(row + 1, 2 * v) = w * re_part.imag();
        J(row + 1, 2 * v + 1) = w * im_part.imag();
        row += 2;
      }
    }
  };
  const Eigen::Index q_row0 = ru * ru;
  for (int v = 0; v < vars; ++v) {
    fill(A1, ru, v, 0, false);
    fill(A2, rq, v, q_row0, !pb.c && l2sq > 0.0);
  }
  return J;
}

void require_shape(const FloatCurve& curve, const Problem& pb) {
  curve.validate();
  if (curve.n != pb.n) throw std::invalid_argument("coefficient shape does not match problem");
}

/// A descent that fails to halve the residual over this many steps has stalled.
constexpr int kStallWindow = 30;

double s_of(double c, int d) { return 8.0 - 16.0 * c / (d * d) - 8.0 / d; }

}  // namespace

void Problem::validate() const {
  if (d < 2 || n < 2) throw std::invalid_argument("solver needs d >= 2 and n >= 2");
  if (restarts < 1) throw std::invalid_argument("solver needs at least one restart");
  if (!(tol > 0.0) || max_iter < 1) throw std::invalid_argument("solver needs positive tol and max_iter");
  if (c && !std::isfinite(*c)) throw std::invalid_argument("fixed c must be finite");
}

std::vector<double> Fingerprint::flat() const {
  std::vector<double> out;
  for (const auto& s : singular) out.insert(out.end(), s.begin(), s.end());
  out.push_back(c);
  out.push_back(S);
  return out;
}

double fingerprint_distance(const Fingerprint& a, const Fingerprint& b) {
  auto x = a.flat();
  auto y = b.flat();
  // Missing trailing degrees compare as zero matrices.
  const std::size_t ka = a.singular.size(), kb = b.singular.size();
  if (ka != kb) {
    Fingerprint pa = a, pbb = b;
    const std::size_t k = std::max(ka, kb);
    pa.singular.resize(k, std::vector<double>(2, 0.0));
    pbb.singular.resize(k, std::vector<double>(2, 0.0));
    x = pa.flat();
    y = pbb.flat();
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

Fingerprint fingerprint(const FloatCurve& curve, double c, int d) {
  Fingerprint fp;
  for (const auto& a : curve.coeffs) {
    Eigen::JacobiSVD<CMat> svd(to_eigen(a));
    const auto& sv = svd.singularValues();
    std::vector<double> s(sv.data(), sv.data() + sv.size());
    std::sort(s.begin(), s.end(), std::greater<>());
    fp.singular.push_back(std::move(s));
  }
  fp.c = c;
  fp.S = s_of(c, d);
  return fp;
}

double optimal_c(const FloatCurve& curve, int d) {
  Problem pb;
  pb.d = d;
  pb.n = curve.n;
  return evaluate(curve, pb).c;
}

double residual(const FloatCurve& curve, const Problem& problem) {
  require_shape(curve, problem);
  return sum_squares(evaluate(curve, problem).r);
}

std::vector<double> pack(const FloatCurve& curve) {
  std::vector<double> x;
  for (const auto& a : curve.coeffs) {
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        x.push_back(a(r, j).real());
        x.push_back(a(r, j).imag());
      }
    }
  }
  return x;
}

FloatCurve unpack(const std::vector<double>& x, int d, int n) {
  if (x.size() != static_cast<std::size_t>(4 * n * d)) throw std::invalid_argument("packed length mismatch");
  FloatCurve c = FloatCurve::zero(n, d);
  std::size_t i = 0;
  for (int a = 0; a < d; ++a) {
    for (int r = 0; r < 2; ++r) {
      for (int j = 0; j < n; ++j, i += 2) c.coeffs[a](r, j) = FloatComplex(x[i], x[i + 1]);
    }
  }
  return c;
}

std::vector<double> gradient(const FloatCurve& curve, const Problem& problem) {
  require_shape(curve, problem);
  const Evaluation ev = evaluate(curve, problem);
  const RMat J = jacobian(curve, problem, ev);
  const RVec r = Eigen::Map<const RVec>(ev.r.data(), static_cast<Eigen::Index>(ev.r.size()));
  const RVec g = 2.0 * J.transpose() * r;
  return {g.data(), g.data() + g.size()};
}

Descent descend(FloatCurve start, const Problem& pb) {
  require_shape(start, pb);
  const int m = start.m();
  std::vector<double> x = pack(start);
  FloatCurve cur = std::move(start);
  Evaluation ev = evaluate(cur, pb);
  double f = sum_squares(ev.r);
  double mu = 1e-3;
  int it = 0;
  std::vector<double> history{f};
  for (; it < pb.max_iter && std::sqrt(f) >= pb.tol; ++it) {
    if (it >= kStallWindow && f > 0.5 * history[static_cast<std::size_t>(it - kStallWindow)]) break;
    const RMat J = jacobian(cur, pb, ev);
    const RVec r = Eigen::Map<const RVec>(ev.r.data(), static_cast<Eigen::Index>(ev.r.size()));
    const RMat H = J.transpose() * J;
    const RVec g = J.transpose() * r;
    bool accepted = false;
    while (mu < 1e16) {
      RMat A = H;
      A.diagonal().array() += mu;
      const RVec step = A.ldlt().solve(-g);
      std::vector<double> xn = x;
      for (std::size_t i = 0; i < xn.size(); ++i) xn[i] += step(static_cast<Eigen::Index>(i));
      FloatCurve cand = unpack(xn, m, pb.n);
      Evaluation en = evaluate(cand, pb);
      const double fn = sum_squares(en.r);
      if (std::isfinite(fn) && fn < f) {
        x = std::move(xn);
        cur = std::move(cand);
        ev = std::move(en);
        f = fn;
        mu /= 3.0;
        accepted = true;
        history.push_back(f);
        break;
      }
      mu *= 2.0;
    }
    if (!accepted) break;
  }
  return {std::move(cur), std::sqrt(f), it};
}

FloatCurve initial_point(const Problem& pb, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(pb.seed), static_cast<std::uint32_t>(pb.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  FloatCurve c = FloatCurve::zero(pb.n, pb.d);
  for (int a = 1; a <= pb.d; ++a) {
    const double sigma = std::sqrt(static_cast<double>(binomial(pb.d, a)) / (4.0 * pb.n));
    std::normal_distribution<double> gauss(0.0, sigma);
    for (int r = 0; r < 2; ++r) {
      for (int j = 0; j < pb.n; ++j) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        c.coeffs[a - 1](r, j) = FloatComplex(re, im);
      }
    }
  }
  return c;
}

namespace {

std::vector<Solution> canonical_unique(std::vector<Solution> found) {
  std::sort(found.begin(), found.end(), [](const Solution& a, const Solution& b) {
    if (a.residual != b.residual) return a.residual < b.residual;
    const auto fa = a.fp.flat(), fb = b.fp.flat();
    if (fa != fb) return fa < fb;
    return a.restart < b.restart;
  });
  std::vector<Solution> unique;
  for (auto& s : found) {
    const bool dup = std::any_of(unique.begin(), unique.end(),
                                 [&](const Solution& u) { return fingerprint_distance(u.fp, s.fp) < 1e-4; });
    if (!dup) unique.push_back(std::move(s));
  }
  return unique;
}

}  // namespace

SolveResult solve(const Problem& pb) {
  pb.validate();
  std::vector<std::optional<Solution>> slots(static_cast<std::size_t>(pb.restarts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < pb.restarts; i = next++) {
      Descent ds = descend(initial_point(pb, i), pb);
      if (!(ds.residual < pb.tol)) continue;
      const double c = pb.c ? *pb.c : optimal_c(ds.curve, pb.d);
      const auto check = check_constraints(assemble_constraints(ds.curve, c, pb.d));
      if (!check.unitary_ok || !check.second_ok) continue;
      Solution s;
      s.fp = fingerprint(ds.curve, c, pb.d);
      s.curve = std::move(ds.curve);
      s.residual = ds.residual;
      s.c = c;
      s.S = s_of(c, pb.d);
      s.restart = i;
      slots[static_cast<std::size_t>(i)] = std::move(s);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(pb.threads, static_cast<unsigned>(pb.restarts)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  SolveResult out;
  std::vector<Solution> irreducible, reducible;
  for (auto& s : slots) {
    if (!s) continue;
    ++out.converged;
    (std::abs(s->c) < kReducibleC ? reducible : irreducible).push_back(std::move(*s));
  }
  out.solutions = canonical_unique(std::move(irreducible));
  out.reducible = canonical_unique(std::move(reducible));
  return out;
}

FamilyMatch match_family(const Solution& s) {
  if (s.curve.n != 4 || s.fp.singular.empty() || s.fp.singular.size() > 4 ||
      std::abs(s.S - s_of(s.c, 4)) > 1e-9) {
    throw std::invalid_argument("family matching needs d = 4, n = 4");
  }
  FamilyMatch out;
  std::vector<double> ts;
  for (double sv : s.fp.singular.front()) {
    const double t = sv * sv;
    if (t <= 0.0 || t > 3.0 + 1e-9) continue;
    if (std::abs(s.c - (4 * t - t * t)) >= 1e-4) continue;
    if (std::none_of(ts.begin(), ts.end(), [&](double u) { return std::abs(u - t) < 1e-9; })) ts.push_back(t);
  }
  for (double t : ts) {
    const double tt = std::min(t, 3.0);
    const double c = 4 * tt - tt * tt;
    const FamilyCandidate cand{tt, fingerprint_distance(s.fp, fingerprint(family_curve_float(tt), c, 4))};
    out.considered.push_back(cand);
    if (cand.distance < kFamilyMatchTolerance) out.candidates.push_back(cand);
  }
  return out;
}

namespace {

nlohmann::json solution_json(const Problem& pb, const Solution& s) {
  using nlohmann::json;
  json fp = {{"singular_values", s.fp.singular}, {"c", s.fp.c}, {"S", s.fp.S}};
  json cands = json::array();
  json considered = json::array();
  if (pb.d == 4 && pb.n == 4) {
    const auto fm = match_family(s);
    for (const auto& c : fm.candidates) cands.push_back({{"t", c.t}, {"distance", c.distance}});
    for (const auto& c : fm.considered) considered.push_back({{"t", c.t}, {"distance", c.distance}});
  }
  json coeffs = json::array();
  for (int a = 1; a <= s.curve.m(); ++a) {
    json rows = json::array();
    for (int r = 0; r < 2; ++r) {
      json row = json::array();
      for (int j = 0; j < s.curve.n; ++j) {
        const auto z = s.curve.entry(a, r, j);
        row.push_back({z.real(), z.imag()});
      }
      rows.push_back(row);
    }
    coeffs.push_back({{"alpha", a}, {"rows", rows}});
  }
  return {{"restart", s.restart},
          {"residual", s.residual},
          {"c", s.c},
          {"S", s.S},
          {"fingerprint", fp},
          {"family_candidates", cands},
          {"family_considered", considered},
          {"family_note", "necessary conditions only"},
          {"curve", {{"n", s.curve.n}, {"mode", "float"}, {"coeffs", coeffs}}}};
}

}  // namespace

std::string solve_report_json(const Problem& pb, const SolveResult& result) {
  using nlohmann::json;
  json problem = {{"d", pb.d},     {"n", pb.n},        {"restarts", pb.restarts}, {"seed", pb.seed},
                  {"tol", pb.tol}, {"max_iter", pb.max_iter}};
  problem["c"] = pb.c ? json(*pb.c) : json("free");
  json sols = json::array();
  for (const auto& s : result.solutions) sols.push_back(solution_json(pb, s));
  json red = json::array();
  for (const auto& s : result.reducible) red.push_back(solution_json(pb, s));
  json report = {{"problem", problem}, {"converged", result.converged}, {"solutions", sols}, {"reducible", red}};
  return report.dump(2);
}

}  // namespace grasscurve
