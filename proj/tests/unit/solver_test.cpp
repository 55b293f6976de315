#include <gtest/gtest.h>

#include <random>

#include "grasscurve/family.hpp"
#include "grasscurve/solver.hpp"

using namespace grasscurve;

namespace {

Problem fixed(double c) {
  Problem p;
  p.c = c;
  return p;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST(Problem, Validation) {
  Problem p;
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.variable_count(), 64);
  p.d = 1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = Problem{};
  p.restarts = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Solver, PackRoundTrip) {
  const auto c = family_curve_float(0.7);
  const auto back = unpack(pack(c), c.m(), 4);
  ASSERT_EQ(back.m(), c.m());
  for (int k = 0; k < c.m(); ++k) EXPECT_EQ(back.coeffs[k], c.coeffs[k]);
}

TEST(Solver, FamilyIsAZero) {
  const auto c = family_curve_float(1.0);
  EXPECT_LT(residual(c, fixed(3.0)), 1e-24);
  EXPECT_LT(residual(c, Problem{}), 1e-24);
  EXPECT_GT(residual(c, fixed(3.5)), 1e-2);
  EXPECT_LT(norm(gradient(c, fixed(3.0))), 1e-10);
}

TEST(Solver, FreeConstantMatchesFixedPoint) {
  for (double t : {0.3, 1.0, 2.2, 3.0}) EXPECT_NEAR(optimal_c(family_curve_float(t), 4), 4 * t - t * t, 1e-10) << t;
}

TEST(Solver, GradientMatchesFiniteDifferences) {
  for (int i = 0; i < 10; ++i) {
    Problem p = i % 2 ? fixed(2.5) : Problem{};
    const auto c = initial_point(p, i);
    const auto g = gradient(c, p);
    auto x = pack(c);
    std::vector<double> fd(x.size());
    const double h = 1e-6;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double keep = x[k];
      x[k] = keep + h;
      const double up = residual(unpack(x, p.d, p.n), p);
      x[k] = keep - h;
      const double down = residual(unpack(x, p.d, p.n), p);
      x[k] = keep;
      fd[k] = (up - down) / (2 * h);
    }
    std::vector<double> diff(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) diff[k] = g[k] - fd[k];
    EXPECT_LT(norm(diff), 1e-5 * norm(g)) << i;
  }
}

TEST(Solver, DescentFromNearbyStart) {
  auto c = family_curve_float(1.0);
  c.coeffs[0](0, 0) += 1e-3;
  c.coeffs[1](1, 2) -= 2e-3;
  const auto d = descend(c, fixed(3.0));
  EXPECT_LT(d.residual, 1e-9);
}

TEST(Fingerprint, GaugeInvariantAndPadded) {
  const auto c = family_curve_float(1.0);
  auto rotated = c;
  for (auto& a : rotated.coeffs) {
    for (int r = 0; r < 2; ++r) {
      std::swap(a(r, 0), a(r, 3));
      a(r, 1) *= FloatComplex(0.0, 1.0);
    }
  }
  EXPECT_LT(fingerprint_distance(fingerprint(c, 3.0, 4), fingerprint(rotated, 3.0, 4)), 1e-12);
  Fingerprint a{{{1.0, 0.0}}, 0.0, 0.0};
  Fingerprint b{{{1.0, 0.0}, {0.0, 0.0}}, 0.0, 0.0};
  EXPECT_EQ(fingerprint_distance(a, b), 0.0);
  const auto f = fingerprint(c, 3.0, 4);
  EXPECT_NEAR(f.singular[0][0], std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(f.singular[0][1], 1.0, 1e-12);
  EXPECT_NEAR(f.S, 3.0, 1e-12);
}

TEST(Solver, DeterministicAcrossThreads) {
  Problem p;
  p.restarts = 12;
  p.seed = 3;
  const auto one = solve(p);
  p.threads = 4;
  const auto four = solve(p);
  EXPECT_EQ(one.converged, four.converged);
  ASSERT_EQ(one.solutions.size(), four.solutions.size());
  for (std::size_t i = 0; i < one.solutions.size(); ++i) {
    EXPECT_EQ(one.solutions[i].restart, four.solutions[i].restart);
    EXPECT_EQ(one.solutions[i].residual, four.solutions[i].residual);
  }
  EXPECT_EQ(solve_report_json(p, one), solve_report_json(p, four));
}

TEST(Solver, SolutionsAreReverified) {
  Problem p;
  p.restarts = 20;
  p.seed = 7;
  for (const auto& s : solve(p).solutions) {
    EXPECT_LT(s.residual, p.tol);
    const auto cc = check_constraints(assemble_constraints(s.curve, s.c, 4));
    EXPECT_TRUE(cc.unitary_ok && cc.second_ok);
    EXPECT_NEAR(s.S, 6 - s.c, 1e-6);
  }
}

TEST(FamilyMatch, RecoversParameter) {
  Solution s;
  s.curve = family_curve_float(1.0);
  s.c = 3.0;
  s.S = 3.0;
  s.fp = fingerprint(s.curve, 3.0, 4);
  const auto m = match_family(s);
  ASSERT_FALSE(m.candidates.empty());
  bool saw_one = false;
  for (const auto& c : m.candidates) saw_one = saw_one || std::abs(c.t - 1.0) < 1e-9;
  EXPECT_TRUE(saw_one);
}
