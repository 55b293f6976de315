#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "grasscurve/curve.hpp"
#include "grasscurve/polysurface.hpp"
#include "grasscurve/scalars.hpp"

namespace grasscurve {

using ExactPoly = PolyKVector<RadicalComplex>;
using ExactCurve = CurveForm<RadicalComplex>;
using FloatCurve = CurveForm<FloatComplex>;

/// Veronese curve (1, sqrt(C(n,1)) z, ..., z^n) in C^{n+1}.
ExactPoly v0(int n);

/// p-th entry of the i-th harmonic-sequence element, by the closed sum
/// i!/(1+|z|^2)^i sqrt(C(n,p)) z^{p-i} sum_k (-1)^k C(p,i-k) C(n-p,k) |z|^{2k}.
std::vector<FloatComplex> f_closed(int n, int i, FloatComplex z);

/// Component of the i-th jet of v0(n) at z orthogonal to the lower jets.
std::vector<FloatComplex> f_gram_schmidt(int n, int i, FloatComplex z);

/// Frobenius distance between the rank-one projectors onto a and b.
double projector_distance(const std::vector<FloatComplex>& a, const std::vector<FloatComplex>& b);

struct SequenceConstants {
  Rat curvature;  // 4 / (n + 2i(n-i))
  Rat cos_angle;  // (n - 2i) / (n + 2i(n-i))
};

SequenceConstants sequence_constants(int n, int i);

/// v0 ^ dv0 ^ ... ^ d^k v0 for V_0^{(n)}.
ExactPoly osculating_wedge(int n, int k);

struct Osculating {
  int degree = 0;
  /// Binomial recognition of the wedge's surface; set only when c0 > 0.
  std::optional<BinomialMatch<RadicalScalar>> match;
};

Osculating osculating(int n, int k);
int osculating_degree(int n, int k);

using Frame = std::pair<ExactPoly, ExactPoly>;

/// (v0(n+1), dv0(n+1)) in C^{n+2}; spans V_0^{(n+1)} + V_1^{(n+1)}.
Frame reducible_type_a(int n);
/// (v0(n) padded by one zero, last basis vector) in C^{n+2}.
Frame reducible_type_b(int n);
/// v0(p) in the first p+1 coordinates, v0(q) in the remaining q+1.
Frame direct_sum_frame(int p, int q);
/// Normal form of direct_sum_frame(p, q); n = p + q.
ExactCurve direct_sum(int p, int q);

}  // namespace grasscurve
