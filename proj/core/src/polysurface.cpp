#include "grasscurve/polysurface.hpp"

#include <Eigen/Dense>

#include <algorithm>

namespace grasscurve {

double surface_eval(const HermitianSurface<FloatComplex>& s, FloatComplex z) {
  const std::size_t m = s.size();
  std::vector<FloatComplex> zp(m, 1.0), zbp(m, 1.0);
  for (std::size_t j = 1; j < m; ++j) {
    zp[j] = zp[j - 1] * z;
    zbp[j] = zbp[j - 1] * std::conj(z);
  }
  FloatComplex sum = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      const FloatComplex term = s.h(j, k) * zp[j] * zbp[k];
      sum += term;
      scale += std::abs(term);
    }
  }
  if (std::abs(sum.imag()) > 1e-9 * std::max(1.0, scale)) {
    throw SurfaceError("surface has non-real value; matrix is not Hermitian");
  }
  return sum.real();
}

namespace {

double max_abs(const Poly<FloatComplex>& p) {
  double m = 0.0;
  for (const auto& c : p) m = std::max(m, std::abs(c));
  return m;
}

void trim_relative(Poly<FloatComplex>& p, double cutoff) {
  while (!p.empty() && std::abs(p.back()) <= cutoff) p.pop_back();
}

Poly<FloatComplex> normalized(Poly<FloatComplex> p) {
  const double m = max_abs(p);
  if (m > 0.0) {
    for (auto& c : p) c /= m;
  }
  return p;
}

Poly<FloatComplex> remainder(Poly<FloatComplex> a, const Poly<FloatComplex>& b, double cutoff) {
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const FloatComplex f = a.back() / b.back();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    a.pop_back();
    trim_relative(a, cutoff);
  }
  return a;
}

Poly<FloatComplex> gcd_pair(Poly<FloatComplex> a, Poly<FloatComplex> b, double rel_tol) {
  a = normalized(std::move(a));
  b = normalized(std::move(b));
  trim_relative(a, 0.0);
  trim_relative(b, 0.0);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    if (b.size() == 1) return {1.0};
    Poly<FloatComplex> r = remainder(a, b, rel_tol);
    if (r.empty() || max_abs(r) <= rel_tol) break;
    a = std::move(b);
    b = normalized(std::move(r));
  }
  if (b.empty()) b = a;
  const FloatComplex lead = b.back();
  for (auto& c : b) c /= lead;
  return b;
}

}  // namespace

Poly<FloatComplex> poly_gcd_numeric(const std::vector<Poly<FloatComplex>>& polys, double rel_tol) {
  Poly<FloatComplex> g;
  for (const auto& p : polys) {
    Poly<FloatComplex> q = p;
    trim_relative(q, 0.0);
    if (q.empty()) continue;
    if (g.empty()) {
      g = normalized(q);
      const FloatComplex lead = g.back();
      for (auto& c : g) c /= lead;
    } else {
      g = gcd_pair(g, q, rel_tol);
    }
    if (g.size() == 1) return {1.0};
  }
  return g;
}

std::vector<FloatComplex> poly_roots(const Poly<FloatComplex>& p_in) {
  Poly<FloatComplex> p = p_in;
  trim_relative(p, 0.0);
  std::vector<FloatComplex> roots;
  std::size_t low = 0;
  while (low < p.size() && p[low] == FloatComplex{}) ++low;
  for (std::size_t i = 0; i < low && i + 1 < p.size(); ++i) roots.emplace_back(0.0, 0.0);
  p.erase(p.begin(), p.begin() + static_cast<long>(low));
  if (p.size() <= 1) return roots;
  const Eigen::Index n = static_cast<Eigen::Index>(p.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -p[static_cast<std::size_t>(i)] / p.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  for (Eigen::Index i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()(i));
  return roots;
}

std::vector<RootPoint> clustered_roots(const Poly<FloatComplex>& p, double cluster_tol) {
  std::vector<RootPoint> out;
  for (const auto& z : poly_roots(p)) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const RootPoint& r) { return std::abs(r.z - z) <= cluster_tol; });
    if (it == out.end()) {
      out.push_back({z, 1, false});
    } else {
      it->z = (it->z * static_cast<double>(it->multiplicity) + z) / static_cast<double>(it->multiplicity + 1);
      ++it->multiplicity;
    }
  }
  return out;
}

}  // namespace grasscurve
