#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grasscurve/curve.hpp"
#include "grasscurve/veronese.hpp"

namespace grasscurve {

/// Search for F = A_1 z + ... + A_d z^d with UU* = Lambda_1, QQ* = Lambda_2.
struct Problem {
  int d = 4;
  int n = 4;
  std::optional<double> c;  // empty: free, eliminated by least squares each step
  int restarts = 1;
  std::uint64_t seed = 0;
  double tol = 1e-9;  // on the residual norm sqrt(||UU*-L1||^2 + ||QQ*-L2||^2)
  int max_iter = 500;
  unsigned threads = 1;

  /// Throws std::invalid_argument unless d >= 2, n >= 2, restarts >= 1.
  void validate() const;
  int variable_count() const { return 4 * n * d; }
};

/// Per-degree singular values of A_alpha (descending) followed by (c, S).
struct Fingerprint {
  std::vector<std::vector<double>> singular;
  double c = 0.0;
  double S = 0.0;

  std::vector<double> flat() const;
};

double fingerprint_distance(const Fingerprint& a, const Fingerprint& b);
Fingerprint fingerprint(const FloatCurve& curve, double c, int d);

struct Solution {
  FloatCurve curve;
  double residual = 0.0;  // residual norm
  double c = 0.0;
  double S = 0.0;
  Fingerprint fp;
  int restart = 0;
};

/// Least-squares wedge constant sum_k l_k Re(QQ*)_kk / sum_k l_k^2, l_k = C(2d-4, k).
double optimal_c(const FloatCurve& curve, int d);

/// ||UU* - Lambda_1||^2 + ||QQ* - Lambda_2||^2 (squared Frobenius) at the
/// problem's fixed c, or at optimal_c in free mode.
double residual(const FloatCurve& curve, const Problem& problem);

/// Packs entries as (Re, Im) pairs, ordered by degree, row, column.
std::vector<double> pack(const FloatCurve& curve);
FloatCurve unpack(const std::vector<double>& x, int d, int n);

/// Analytic gradient of residual with respect to pack(curve).
std::vector<double> gradient(const FloatCurve& curve, const Problem& problem);

/// Damped least squares from one start; the curve it converged to and its residual norm.
struct Descent {
  FloatCurve curve;
  double residual = 0.0;
  int iterations = 0;
};
Descent descend(FloatCurve start, const Problem& problem);

/// Start used by restart `index`: centered Gaussian entries with
/// E|W_alpha|^2 = C(d, alpha), from a stream keyed on (seed, index).
FloatCurve initial_point(const Problem& problem, int index);

/// Converged restarts with c below this are reducible (the second wedge
/// vanishes) and sit outside the irreducible classification.
inline constexpr double kReducibleC = 1e-6;

struct SolveResult {
  std::vector<Solution> solutions;  // irreducible, deduplicated, canonical order
  std::vector<Solution> reducible;  // same treatment, c below kReducibleC
  int converged = 0;                // restarts that reached tol and re-verified
};

SolveResult solve(const Problem& problem);

struct FamilyCandidate {
  double t = 0.0;
  double distance = 0.0;  // fingerprint distance to family_curve(t)
};

/// Family members compatible with a d = n = 4 solution. Necessary
/// conditions only: agreement does not decide congruence.
struct FamilyMatch {
  std::vector<FamilyCandidate> candidates;  // distance below kFamilyMatchTolerance
  std::vector<FamilyCandidate> considered;
};

inline constexpr double kFamilyMatchTolerance = 1e-2;

FamilyMatch match_family(const Solution& s);

/// Solve-report JSON: problem echo plus every solution with fingerprint,
/// residual, c, S, family candidates and coefficients.
std::string solve_report_json(const Problem& problem, const SolveResult& result);

}  // namespace grasscurve
