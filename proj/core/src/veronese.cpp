#include "grasscurve/veronese.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grasscurve {

namespace {

void require_index(int n, int i, int min_n = 1) {
  if (n < min_n || i < 0 || i > n) throw std::invalid_argument("Veronese index out of range");
}

double falling(int p, int j) {
  double v = 1.0;
  for (int r = 0; r < j; ++r) v *= p - r;
  return v;
}

FloatComplex ipow(FloatComplex z, int e) {
  FloatComplex r = 1.0;
  for (int j = 0; j < e; ++j) r *= z;
  return r;
}

double sqrt_binomial(int n, int p) { return std::sqrt(static_cast<double>(binomial(n, p))); }

/// j-th derivative of v0(n) at z.
std::vector<FloatComplex> jet(int n, int j, FloatComplex z) {
  std::vector<FloatComplex> out(static_cast<std::size_t>(n) + 1);
  for (int p = j; p <= n; ++p) out[p] = sqrt_binomial(n, p) * falling(p, j) * ipow(z, p - j);
  return out;
}

FloatComplex inner(const std::vector<FloatComplex>& a, const std::vector<FloatComplex>& b) {
  FloatComplex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s;
}

ExactPoly padded(const ExactPoly& w, int before, int ambient) {
  std::vector<std::vector<RadicalComplex>> comps(static_cast<std::size_t>(ambient));
  for (int r = 0; r < w.ambient(); ++r) comps[before + r] = w.component(static_cast<std::size_t>(r));
  return ExactPoly::from_components(comps);
}

}  // namespace

ExactPoly v0(int n) {
  if (n < 1) throw std::invalid_argument("Veronese degree must be positive");
  std::vector<std::vector<RadicalComplex>> comps(static_cast<std::size_t>(n) + 1);
  for (int p = 0; p <= n; ++p) {
    comps[p].assign(static_cast<std::size_t>(p) + 1, RadicalComplex{});
    comps[p][p] = RadicalComplex(rad_sqrt(Rat(static_cast<long>(binomial(n, p)))));
  }
  return ExactPoly::from_components(comps);
}

std::vector<FloatComplex> f_closed(int n, int i, FloatComplex z) {
  require_index(n, i, 0);
  const double u = std::norm(z);
  double fact = 1.0;
  for (int r = 2; r <= i; ++r) fact *= r;
  const double pre = fact / std::pow(1.0 + u, i);
  std::vector<FloatComplex> out(static_cast<std::size_t>(n) + 1);
  for (int p = 0; p <= n; ++p) {
    // For p < i every surviving term carries |z|^{2(i-p)}, which turns z^{p-i} into zbar^{i-p}.
    const int shift = std::max(0, i - p);
    double sum = 0.0;
    for (int k = shift; k <= i; ++k) {
      const double term = static_cast<double>(binomial(p, i - k)) * static_cast<double>(binomial(n - p, k));
      if (term == 0.0) continue;
      sum += (k % 2 == 0 ? 1.0 : -1.0) * term * std::pow(u, k - shift);
    }
    const FloatComplex zp = p >= i ? ipow(z, p - i) : ipow(std::conj(z), i - p);
    out[p] = pre * sqrt_binomial(n, p) * zp * sum;
  }
  return out;
}

std::vector<FloatComplex> f_gram_schmidt(int n, int i, FloatComplex z) {
  require_index(n, i, 0);
  std::vector<std::vector<FloatComplex>> basis;
  std::vector<FloatComplex> current;
  for (int j = 0; j <= i; ++j) {
    current = jet(n, j, z);
    const double before = std::sqrt(std::real(inner(current, current)));
    for (const auto& e : basis) {
      const FloatComplex proj = inner(current, e);
      for (std::size_t r = 0; r < current.size(); ++r) current[r] -= proj * e[r];
    }
    const double after = std::sqrt(std::real(inner(current, current)));
    if (after < 1e-12 * before) throw std::domain_error("numerically dependent jets");
    if (j == i) break;
    std::vector<FloatComplex> e = current;
    for (auto& x : e) x /= after;
    basis.push_back(std::move(e));
  }
  return current;
}

double projector_distance(const std::vector<FloatComplex>& a, const std::vector<FloatComplex>& b) {
  const double na = std::real(inner(a, a));
  const double nb = std::real(inner(b, b));
  double s = 0.0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c = 0; c < a.size(); ++c) {
      s += std::norm(a[r] * std::conj(a[c]) / na - b[r] * std::conj(b[c]) / nb);
    }
  }
  return std::sqrt(s);
}

SequenceConstants sequence_constants(int n, int i) {
  require_index(n, i);
  const long denom = n + 2L * i * (n - i);
  return {make_rat(4, denom), make_rat(n - 2L * i, denom)};
}

ExactPoly osculating_wedge(int n, int k) {
  if (n < 1 || k < 0 || k >= n) throw std::invalid_argument("osculating index out of range");
  ExactPoly jet_k = v0(n);
  ExactPoly w = jet_k;
  for (int j = 1; j <= k; ++j) {
    jet_k = pv_derivative(jet_k);
    w = pv_wedge(w, jet_k);
  }
  return w;
}

Osculating osculating(int n, int k) {
  const ExactPoly w = osculating_wedge(n, k);
  Osculating out;
  out.degree = w.degree();
  auto m = match_binomial(herm_surface(w));
  if (m && m->c0.sign() > 0) out.match = m;
  return out;
}

int osculating_degree(int n, int k) { return osculating(n, k).degree; }

Frame reducible_type_a(int n) {
  if (n < 1) throw std::invalid_argument("reducible family needs n >= 1");
  const ExactPoly f = v0(n + 1);
  return {f, pv_derivative(f)};
}

Frame reducible_type_b(int n) {
  if (n < 1) throw std::invalid_argument("reducible family needs n >= 1");
  const int N = n + 2;
  KVector<RadicalComplex> last(N, 1);
  last[N - 1] = RadicalComplex(1);
  return {padded(v0(n), 0, N), ExactPoly({last})};
}

Frame direct_sum_frame(int p, int q) {
  const int N = p + q + 2;
  return {padded(v0(p), 0, N), padded(v0(q), p + 1, N)};
}

ExactCurve direct_sum(int p, int q) {
  const auto [a, b] = direct_sum_frame(p, q);
  return normalize_span(a, b);
}

}  // namespace grasscurve
