#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "grasscurve/polysurface.hpp"
#include "grasscurve/veronese.hpp"
#include "samples.hpp"

using namespace grasscurve;
using grasscurve::testing::random_exact_vector;
using grasscurve::testing::random_float_vector;

namespace {

template <class T, class Gen>
PolyKVector<T> random_curve_vector(std::mt19937_64& rng, int ambient, int degree, Gen gen) {
  std::vector<KVector<T>> coeffs;
  for (int j = 0; j <= degree; ++j) coeffs.push_back(KVector<T>::vector(gen(rng, ambient)));
  return PolyKVector<T>(std::move(coeffs));
}

PolyKVector<RadicalComplex> exact_vector(std::mt19937_64& rng, int ambient, int degree) {
  return random_curve_vector<RadicalComplex>(rng, ambient, degree, random_exact_vector);
}

PolyKVector<FloatComplex> float_vector(std::mt19937_64& rng, int ambient, int degree) {
  return random_curve_vector<FloatComplex>(rng, ambient, degree, random_float_vector);
}

PolyKVector<RadicalComplex> permuted(const PolyKVector<RadicalComplex>& w, const SignedPermutation& p) {
  std::vector<KVector<RadicalComplex>> out;
  for (const auto& c : w.coeffs()) {
    KVector<RadicalComplex> v(c.ambient(), 1);
    for (int i = 0; i < c.ambient(); ++i) v[p.target[i]] = p.sign[i] > 0 ? c[i] : -c[i];
    out.push_back(v);
  }
  return PolyKVector<RadicalComplex>(std::move(out));
}

}  // namespace

TEST(PolyKVector, TrimsTrailingZeros) {
  std::vector<KVector<RadicalComplex>> c(3, KVector<RadicalComplex>(3, 1));
  c[1][2] = RadicalComplex(5);
  const PolyKVector<RadicalComplex> w(c);
  EXPECT_EQ(w.degree(), 1);
  EXPECT_TRUE(PolyKVector<RadicalComplex>(3, 1).is_zero());
}

TEST(Surface, VeroneseIsBinomial) {
  for (int n = 1; n <= 6; ++n) {
    const auto m = match_binomial(herm_surface(v0(n)));
    ASSERT_TRUE(m.has_value()) << n;
    EXPECT_EQ(m->c0, RadicalScalar(1));
    EXPECT_EQ(m->m, n);
  }
}

TEST(Surface, RejectsNonBinomial) {
  std::vector<KVector<RadicalComplex>> c(2, KVector<RadicalComplex>(2, 1));
  c[0][0] = RadicalComplex(1);
  c[1][1] = RadicalComplex(2);  // 1 + 4|z|^2
  EXPECT_FALSE(match_binomial(herm_surface(PolyKVector<RadicalComplex>(c))).has_value());
  c[1][1] = RadicalComplex(1);
  c[1][0] = RadicalComplex(1);  // off-diagonal term
  EXPECT_FALSE(match_binomial(herm_surface(PolyKVector<RadicalComplex>(c))).has_value());
}

TEST(Surface, EvaluatesReal) {
  const auto s = herm_surface(v0(3));
  for (double r : {0.0, 0.5, 2.0}) EXPECT_NEAR(surface_eval(s, FloatComplex(r, 0.3)), std::pow(1 + r * r + 0.09, 3), 1e-9);
  HermitianSurface<FloatComplex> bad{Matrix<FloatComplex>(2, 2)};
  bad.h(0, 1) = 1.0;
  EXPECT_THROW(surface_eval(bad, FloatComplex(1.0, 1.0)), SurfaceError);
}

TEST(SurfaceProperty, PositiveSemidefinite) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto a = float_vector(rng, 5, 1 + i % 3), b = float_vector(rng, 5, 1 + i % 4);
    const auto s = herm_surface(pv_wedge(a, b));
    Eigen::MatrixXcd h(s.size(), s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      for (std::size_t k = 0; k < s.size(); ++k) h(j, k) = s.h(j, k);
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
  }
}

TEST(SurfaceProperty, SignedPermutationInvariance) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const auto a = exact_vector(rng, 4, 2), b = exact_vector(rng, 4, 1);
    const auto p = grasscurve::testing::random_signed_permutation(rng, 4);
    EXPECT_EQ(herm_surface(pv_wedge(permuted(a, p), permuted(b, p))), herm_surface(pv_wedge(a, b)));
  }
}

TEST(SurfaceProperty, LeibnizRule) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 50; ++i) {
    const auto a = exact_vector(rng, 4, 1 + i % 3), b = exact_vector(rng, 4, 2);
    EXPECT_EQ(pv_derivative(pv_wedge(a, b)),
              pv_wedge(pv_derivative(a), b) + pv_wedge(a, pv_derivative(b)));
  }
}

TEST(Roots, ExactMultiplicities) {
  // z^2 (z - 1): components z^2 - z^3 and 2 z^2 - 2 z^3
  using P = Poly<RadicalComplex>;
  const P p{0, 0, 1, -1};
  const auto f = square_free_factors(p);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].second, 1);
  EXPECT_EQ(f[1].second, 2);
  EXPECT_EQ(f[1].first, (P{0, 1}));
}

TEST(Roots, CommonZerosOfComponents) {
  std::vector<KVector<RadicalComplex>> c(4, KVector<RadicalComplex>(2, 1));
  // (z^2 - z^3, z^2 + z^3): only z = 0 is common, twice
  c[2][0] = RadicalComplex(1);
  c[3][0] = RadicalComplex(-1);
  c[2][1] = RadicalComplex(1);
  c[3][1] = RadicalComplex(1);
  const auto roots = common_roots(PolyKVector<RadicalComplex>(c), 5);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_LT(std::abs(roots[0].z), 1e-12);
  EXPECT_EQ(roots[0].multiplicity, 2);
  EXPECT_TRUE(roots[1].at_infinity);
  EXPECT_EQ(roots[1].multiplicity, 2);
}

TEST(Roots, NumericGcd) {
  // (z - 2)(z + 1) and (z - 2)(z - 3i)
  using C = FloatComplex;
  const Poly<C> a{-2.0, -1.0, 1.0};
  const Poly<C> b{C(0, 6), C(-2, -3), 1.0};
  const auto g = poly_gcd_numeric({a, b});
  ASSERT_EQ(g.size(), 2u);
  EXPECT_NEAR(std::abs(g[0] + 2.0), 0.0, 1e-10);
  const auto r = clustered_roots(Poly<C>{1.0, -2.0, 1.0});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].multiplicity, 2);
}
