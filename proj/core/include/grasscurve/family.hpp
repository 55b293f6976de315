#pragma once

#include <optional>
#include <vector>

#include "grasscurve/curve.hpp"
#include "grasscurve/veronese.hpp"

namespace grasscurve {

/// Member parameter t in (0, 3]; sin^2(theta) = t/3.
struct FamilyParam {
  Rat t;

  /// Throws std::invalid_argument outside (0, 3].
  explicit FamilyParam(Rat value);
  static FamilyParam parse(std::string_view text);
};

/// The d = 4 family in G(2,6), F columns only:
///   F1 = (|t-2| z^3, sqrt(t) z, sqrt((3-t)/(4-t)) |t-2| z^2, sqrt(t/(4-t)) z^2)
///   F2 = (sqrt(3-t) z^2, 0, sqrt(4-t) z, 0)
ExactCurve family_curve(const FamilyParam& p);
/// Same layout for any real t in (0, 3], in floating point.
FloatCurve family_curve_float(double t);

/// d = 4, c = 4t - t^2, K = 1, |det A1|^2 = c/16, S = t^2 - 4t + 6.
CurveInvariants<RadicalScalar> family_invariants(const FamilyParam& p);

/// Direct sum met by a degenerate member together with the column map
/// taking family_curve(t) onto it.
struct DegenerateMatch {
  int left = 0;   // direct_sum(left, right)
  int right = 0;
  ExactCurve direct;
  SignedPermutation permutation;
};

/// t = 2 meets V_0^{(2)} + V_0^{(2)}, t = 3 meets V_0^{(3)} + V_0^{(1)}; other t give nothing.
std::optional<DegenerateMatch> degenerate_member(const FamilyParam& p);

/// Irreducible, constantly curved, d = 4 curve in G(2,6) whose |det A1|^2 varies.
ExactCurve jiao_curve();

/// Diagonal profile sum_k H[k][k] u^k of a surface with no off-diagonal
/// terms (a function of u = |z|^2 alone); empty otherwise.
std::optional<std::vector<RadicalScalar>> radial_profile(const HermitianSurface<RadicalComplex>& s);

/// Numerator of |det A1|^2 for jiao_curve(), over 1024 (1+u)^4.
std::vector<Rat> jiao_detA1_numerator();

/// The second-wedge profile equals 16 (1+u)^4 |det A1|^2, i.e. numerator / 64.
bool jiao_detA1_check();

}  // namespace grasscurve
