// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "grasscurve/family.hpp"
#include "grasscurve/solver.hpp"
#include "grasscurve/veronese.hpp"
#include "samples.hpp"

using namespace grasscurve;
namespace gt = grasscurve::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

const char* kParams[] = {"1/10", "1/2", "1", "3/2", "2", "5/2", "3"};

void family_exact(Outcome& o) {
  double worst = 0.0;
  for (const char* text : kParams) {
    const auto t0 = Clock::now();
    const auto p = FamilyParam::parse(text);
    const auto curve = family_curve(p);
    const Rat c = p.t * 4 - p.t * p.t;
    const auto cm = assemble_constraints(curve, RadicalScalar(c), 4);
    std::vector<RadicalScalar> l1, l2;
    for (long b : {1, 4, 6, 4, 1}) {
      l1.emplace_back(b);
      l2.emplace_back(c * b);
    }
    const auto cc = check_constraints(cm);
    o.require(cc.unitary_ok && cm.lambda1 == l1, std::string("UU* at t=") + text);
    o.require(cc.second_ok && cm.lambda2 == l2, std::string("QQ* at t=") + text);
    o.require(invariant_chain(curve).S == RadicalScalar(p.t * p.t - p.t * 4 + 6), std::string("S at t=") + text);
    worst = std::max(worst, seconds_since(t0));
  }
  o.require(worst < 1.0, "runtime");
  o.detail << "7 parameters exact, slowest " << worst << " s";
}

void degenerate(Outcome& o) {
  for (long t : {3L, 2L}) {
    const auto m = degenerate_member(FamilyParam(Rat(t)));
    o.require(m.has_value(), "no permutation at t=" + std::to_string(t));
    if (!m) continue;
    const bool again = apply_signed_permutation(family_curve(FamilyParam(Rat(t))), m->permutation) == m->direct &&
                       m->direct == direct_sum(m->left, m->right);
    o.require(again, "re-verification at t=" + std::to_string(t));
    o.detail << "t=" << t << " -> V0(" << m->left << ")+V0(" << m->right << ") via target [";
    for (std::size_t j = 0; j < m->permutation.target.size(); ++j) {
      o.detail << (j ? "," : "") << (m->permutation.sign[j] < 0 ? "-" : "") << m->permutation.target[j];
    }
    o.detail << "]; ";
  }
}

void jiao(Outcome& o) {
  const auto t0 = Clock::now();
  const auto s = herm_surface(second_wedge(jiao_curve()));
  o.require(jiao_detA1_check(), "profile != numerator/64");
  o.require(!match_binomial(s).has_value(), "second surface matched a binomial");
  const double dt = seconds_since(t0);
  o.require(dt < 1.0, "runtime");
  o.detail << "profile (112+1024u+1176u^2+376u^3+31u^4)/64, not binomial, " << dt << " s";
}

RadicalScalar gauss_sum(const CurveInvariants<RadicalScalar>& inv) {
  return inv.K + inv.c * RadicalScalar(make_rat(8, inv.d * inv.d)) + inv.S * RadicalScalar(make_rat(1, 2));
}

void gauss(Outcome& o) {
  std::vector<ExactCurve> curves;
  std::mt19937_64 rng(41);
  for (const char* text : kParams) curves.push_back(family_curve(FamilyParam::parse(text)));
  for (int i = 0; i < 10; ++i) curves.push_back(family_curve(gt::random_family_param(rng)));
  for (int n = 1; n <= 5; ++n) {
    for (const auto& f : {reducible_type_a(n), reducible_type_b(n)}) curves.push_back(normalize_span(f.first, f.second));
  }
  curves.push_back(direct_sum(2, 2));
  curves.push_back(direct_sum(3, 1));
  int checked = 0, reducible = 0;
  for (const auto& c : curves) {
    const auto inv = invariant_chain(c);
    o.require(gauss_sum(inv) == RadicalScalar(4), "K + 8c/d^2 + S/2");
    if (is_reducible(c)) {
      ++reducible;
      o.require(inv.S == RadicalScalar(8) - RadicalScalar(make_rat(8, inv.d)), "reducible S");
    }
    ++checked;
  }
  o.detail << checked << " verified curves (" << reducible << " reducible)";
}

void veronese_oracle(Outcome& o) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst = 0.0;
  for (int n = 0; n <= 6; ++n) {
    for (int i = 0; i <= n; ++i) {
      for (int k = 0; k < 20; ++k) {
        const FloatComplex z(g(rng), g(rng));
        worst = std::max(worst, projector_distance(f_closed(n, i, z), f_gram_schmidt(n, i, z)));
      }
      if (n == 0) continue;
      const auto s = sequence_constants(n, i);
      const long den = n + 2L * i * (n - i);
      o.require(s.curvature == make_rat(4, den) && s.cos_angle == make_rat(n - 2L * i, den), "sequence constants");
    }
  }
  o.require(worst < 1e-9, "projector distance");
  o.detail << "max projector distance " << worst;
}

void osculating_degrees(Outcome& o) {
  const auto t0 = Clock::now();
  const int expected[3][3] = {{5, 3, 8}, {4, 2, 6}, {3, 1, 4}};
  for (const auto& e : expected) {
    const auto r = osculating(e[0], e[1]);
    o.require(r.degree == e[2] && osculating_degree(e[0], e[1]) == e[2], "degree");
    o.require(r.match && r.match->m == r.degree && r.match->c0.sign() > 0, "surface match");
    o.detail << "(" << e[0] << "," << e[1] << ")->" << r.degree << " ";
  }
  const double dt = seconds_since(t0);
  o.require(dt < 5.0, "runtime");
  o.detail << dt << " s";
}

void check_equivalence(Outcome& o) {
  std::mt19937_64 rng(43);
  int agree = 0, positive = 0, exact = 0;
  for (int i = 0; i < 50; ++i) {
    gt::Verdicts v;
    switch (i % 6) {
      case 0: v = gt::both_verdicts(family_curve(gt::random_family_param(rng))); ++exact; break;
      case 1: v = gt::both_verdicts(gt::random_rational_curve(rng, 2 + i % 3, 1 + i % 3)); ++exact; break;
      case 2: {
        const double t = std::uniform_real_distribution<double>(0.05, 3.0)(rng);
        v = gt::both_verdicts(gt::rotate_columns(family_curve_float(t), gt::random_unitary(rng, 4)));
        break;
      }
      case 3: v = gt::both_verdicts(gt::perturbed(family_curve_float(2.5), rng, 1e-4)); break;
      case 4: {
        const auto p = gt::random_signed_permutation(rng, 4);
        v = gt::both_verdicts(apply_signed_permutation(i % 12 < 6 ? jiao_curve() : direct_sum(2, 2), p));
        ++exact;
        break;
      }
      default: v = gt::both_verdicts(gt::perturbed(to_float(jiao_curve()), rng, 1e-6)); break;
    }
    const bool same = v.surface_first == v.matrix_first && v.surface_second == v.matrix_second;
    agree += same;
    positive += v.surface_first && v.surface_second;
  }
  o.require(agree == 50, "verdict mismatch");
  o.detail << agree << "/50 agree (" << exact << " exact, " << positive << " fully constant)";
}

void solver_recovery(Outcome& o) {
  const auto t0 = Clock::now();
  Problem p;
  p.restarts = 200;
  p.seed = 7;
  const auto free = solve(p);
  int best_ok = 0;
  double worst_gauss = 0.0, worst_sigma = 0.0;
  for (const auto& s : free.solutions) {
    best_ok += s.residual < 1e-9;
    worst_gauss = std::max(worst_gauss, std::abs(s.S - (6 - s.c)));
    const auto& sv = s.fp.singular.front();
    double sigma = INFINITY;
    // the family's A1 has singular values sqrt(4 - t) >= sqrt(t)
    const double t = sv.size() > 1 ? sv[1] * sv[1] : 0.0;
    if (t > 0.0 && t <= 3.0 + 1e-4) sigma = std::max(std::abs(sv[0] - std::sqrt(4 - t)), 0.0);
    worst_sigma = std::max(worst_sigma, sigma);
  }
  o.require(best_ok >= 1, "no solution under 1e-9");
  o.require(worst_gauss < 1e-6, "|S - (6 - c)|");
  o.require(worst_sigma < 1e-4, "sigma(A1) off the family");
  Problem infeasible = p;
  infeasible.c = 5.0;
  const auto none = solve(infeasible);
  o.require(none.solutions.empty(), "solution at c = 5");
  const double dt = seconds_since(t0);
  o.require(dt < 60.0, "runtime");
  o.detail << free.solutions.size() << " irreducible solutions (" << free.reducible.size()
           << " reducible reported apart), max |S-(6-c)| " << worst_gauss << ", max sigma gap " << worst_sigma
           << ", c=5: " << none.solutions.size() << " solutions, " << dt << " s";
}

void ramification_points(Outcome& o) {
  int family = 0;
  for (const char* text : kParams) {
    const auto c = family_curve(FamilyParam::parse(text));
    if (is_reducible(c)) continue;
    o.require(ramification(c).empty(), std::string("ramified family at t=") + text);
    ++family;
  }
  o.require(ramification(jiao_curve()).empty(), "ramified non-constant example");
  using E = ExactCurve::Entry;
  for (int power : {2, 3, 4}) {
    const auto planted = ExactCurve::from_entries(4, {E{0, 0, 1, RadicalComplex(1)}, E{1, 1, power, RadicalComplex(1)}});
    int mult = 0;
    for (const auto& r : ramification(planted)) {
      if (!r.at_infinity && std::abs(r.z) < 1e-9) mult = r.multiplicity;
    }
    o.require(mult == power - 1, "planted multiplicity " + std::to_string(power - 1));
  }
  o.detail << family << " family members and the non-constant example unramified; planted zeros of order 1,2,3 found";
}

void gradient_check(Outcome& o) {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Problem p;
    if (i % 2) p.c = 0.5 + 0.05 * i;
    p.seed = 99;
    const auto curve = initial_point(p, i);
    const auto g = gradient(curve, p);
    auto x = pack(curve);
    const double h = 1e-6;
    double diff = 0.0, norm = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double keep = x[k];
      x[k] = keep + h;
      const double up = residual(unpack(x, p.d, p.n), p);
      x[k] = keep - h;
      const double down = residual(unpack(x, p.d, p.n), p);
      x[k] = keep;
      const double fd = (up - down) / (2 * h);
      diff += (g[k] - fd) * (g[k] - fd);
      norm += g[k] * g[k];
    }
    worst = std::max(worst, std::sqrt(diff / norm));
  }
  o.require(worst < 1e-5, "relative gradient error");
  o.detail << "max relative error " << worst << " over 100 points";
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"family verification (exact)", family_exact},
      {"degenerate members", degenerate},
      {"non-constant second form", jiao},
      {"Gauss-equation closure", gauss},
      {"Veronese oracle", veronese_oracle},
      {"osculating degrees", osculating_degrees},
      {"check equivalence", check_equivalence},
      {"solver recovery", solver_recovery},
      {"ramification", ramification_points},
      {"gradient check", gradient_check},
  };
  int failures = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failures += !o.pass;
    std::printf("criterion %2d %-30s %s  %s\n", ++index, name, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
