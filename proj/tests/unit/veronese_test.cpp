#include <gtest/gtest.h>

#include <random>

#include "grasscurve/veronese.hpp"

using namespace grasscurve;

TEST(Veronese, ClosedFormMatchesGramSchmidt) {
  std::mt19937_64 rng(16);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int n = 0; n <= 6; ++n) {
    for (int i = 0; i <= n; ++i) {
      for (int k = 0; k < 20; ++k) {
        const FloatComplex z(g(rng), g(rng));
        EXPECT_LT(projector_distance(f_closed(n, i, z), f_gram_schmidt(n, i, z)), 1e-9) << n << " " << i;
      }
    }
  }
}

TEST(Veronese, OriginAndIndexErrors) {
  EXPECT_LT(projector_distance(f_closed(3, 3, 0.0), {0.0, 0.0, 0.0, 1.0}), 1e-15);
  EXPECT_THROW(f_closed(2, 3, 1.0), std::invalid_argument);
  EXPECT_THROW(sequence_constants(2, -1), std::invalid_argument);
}

TEST(Veronese, SequenceConstants) {
  const auto s = sequence_constants(4, 1);
  EXPECT_EQ(s.curvature, make_rat(2, 5));
  EXPECT_EQ(s.cos_angle, make_rat(1, 5));
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(sequence_constants(n, 0).curvature, make_rat(4, n));
    EXPECT_EQ(sequence_constants(n, 0).cos_angle, Rat(1));
    EXPECT_EQ(sequence_constants(n, n).cos_angle, Rat(-1));
  }
}

TEST(Osculating, KnownDegrees) {
  EXPECT_EQ(osculating_degree(5, 3), 8);
  EXPECT_EQ(osculating_degree(4, 2), 6);
  EXPECT_EQ(osculating_degree(3, 1), 4);
  EXPECT_EQ(osculating(5, 3).match->c0, RadicalScalar(72000));
  EXPECT_EQ(osculating(4, 2).match->c0, RadicalScalar(96));
  EXPECT_EQ(osculating(3, 1).match->c0, RadicalScalar(3));
}

TEST(Osculating, DegreeFormulaAndConstantCurvature) {
  for (int n = 1; n <= 7; ++n) {
    for (int k = 0; k < n; ++k) {
      const auto o = osculating(n, k);
      EXPECT_EQ(o.degree, (k + 1) * (n - k)) << n << " " << k;
      ASSERT_TRUE(o.match.has_value()) << n << " " << k;
      EXPECT_EQ(o.match->m, o.degree);
      EXPECT_EQ(o.match->c0.sign(), 1);
    }
  }
}

TEST(DirectSum, FrameShapes) {
  const auto [p, q] = direct_sum_frame(2, 2);
  EXPECT_EQ(p.ambient(), 6);
  EXPECT_EQ(p.degree(), 2);
  const auto c = direct_sum(3, 1);
  EXPECT_EQ(c.n, 4);
  EXPECT_EQ(c.m(), 3);
}

TEST(DirectSum, ReducibleFrames) {
  const auto [a1, a2] = reducible_type_a(1);
  const auto raw = match_binomial(herm_surface(pv_wedge(a1, a2)));
  ASSERT_TRUE(raw.has_value());
  EXPECT_EQ(raw->c0, RadicalScalar(2));
  EXPECT_EQ(raw->m, 2);
  for (int n : {2, 4}) {
    const auto [b1, b2] = reducible_type_b(n);
    const auto m = match_binomial(herm_surface(pv_wedge(b1, b2)));
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->c0, RadicalScalar(1));
    EXPECT_EQ(m->m, n);
    EXPECT_TRUE(pv_derivative(b2).is_zero());
  }
  const auto [c1, c2] = reducible_type_a(4);
  EXPECT_EQ(match_binomial(herm_surface(pv_wedge(c1, c2)))->m, 8);
}
