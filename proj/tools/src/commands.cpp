#include "grasscurve/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "grasscurve/family.hpp"
#include "json.hpp"

namespace grasscurve::cli {

namespace {

using nlohmann::json;

json num(const RadicalScalar& x) { return {{"exact", format_radical(x)}, {"float", rad_to_float(x)}}; }
json num(double x) { return {{"float", x}}; }
json num(const Rat& x) { return num(RadicalScalar(x)); }

double as_double(const RadicalScalar& x) { return rad_to_float(x); }
double as_double(double x) { return x; }

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}
std::string fmt(const RadicalScalar& x) { return format_radical(x); }

struct Check {
  std::string name;
  bool pass = false;
  std::optional<double> residual;
};

json checks_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const auto& c : checks) {
    json e = {{"name", c.name}, {"pass", c.pass}};
    if (c.residual) e["residual"] = *c.residual;
    out.push_back(std::move(e));
  }
  return out;
}

std::string checks_text(const std::vector<Check>& checks) {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "pass  " : "FAIL  ") << c.name;
    if (c.residual) os << "  (residual " << fmt(*c.residual) << ")";
    os << "\n";
  }
  return os.str();
}

std::string mode_of(const ExactCurve&) { return "exact"; }
std::string mode_of(const FloatCurve&) { return "float"; }

struct Analysis {
  json report;
  std::vector<Check> checks;
  bool constantly_curved = false;
  std::string summary;
};

/// Plucker, second wedge, invariants, constraints, reducibility,
/// ramification and fingerprint of one curve.
template <class T>
Analysis analyze(const CurveForm<T>& curve, std::vector<std::string>& notes) {
  using F = field_traits<T>;
  using R = typename F::real_type;
  Analysis out;
  json& rep = out.report;
  std::ostringstream text;
  rep["mode"] = mode_of(curve);
  rep["n"] = curve.n;

  const auto pl = plucker_surface(curve);
  bool unit = false;
  if (pl.match) {
    if constexpr (F::exact) {
      unit = pl.match->c0 == R(1);
    } else {
      unit = std::abs(pl.match->c0 - 1.0) <= CurveTolerances{}.binomial;
    }
  }
  out.constantly_curved = unit && pl.match->m >= 1;
  const int d = out.constantly_curved ? pl.match->m : std::max(1, pl.degree);
  rep["plucker"] = {{"binomial", pl.match.has_value()}, {"degree", pl.degree}};
  if (pl.match) {
    rep["plucker"]["c0"] = num(pl.match->c0);
    rep["plucker"]["m"] = pl.match->m;
  }
  out.checks.push_back({"plucker surface is (1+|z|^2)^d", out.constantly_curved, {}});

  const bool reducible = is_reducible(curve);
  rep["reducible"] = reducible;
  if (curve.n >= 2) {
    const auto sm = match_binomial(herm_surface(second_wedge(curve)));
    const bool ok = reducible || (sm && sm->m == 2 * d - 4);
    rep["second_wedge"] = {{"binomial", sm.has_value()}, {"zero", reducible}};
    if (sm) {
      rep["second_wedge"]["c0"] = num(sm->c0);
      rep["second_wedge"]["m"] = sm->m;
    }
    out.checks.push_back({"second wedge surface is c(1+|z|^2)^(2d-4)", ok, {}});
  }

  R c{};
  rep["invariants"] = nullptr;
  try {
    const auto inv = invariant_chain(curve);
    c = inv.c;
    rep["invariants"] = {{"d", inv.d}, {"c", num(inv.c)}, {"K", num(inv.K)}, {"S", num(inv.S)},
                         {"detA1sq", num(inv.detA1sq)}};
    text << "d = " << inv.d << ", c = " << fmt(inv.c) << ", K = " << fmt(inv.K) << ", S = " << fmt(inv.S)
         << ", |det A1|^2 = " << fmt(inv.detA1sq) << "\n";
  } catch (const CurveError& e) {
    notes.emplace_back(e.what());
    c = leading_wedge_constant(curve);
  }

  const auto cm = assemble_constraints(curve, c, d);
  const auto cc = check_constraints(cm);
  rep["constraints"] = {{"d", cm.d},
                        {"c", num(c)},
                        {"U_shape", {cm.U.rows(), cm.U.cols()}},
                        {"Q_shape", {cm.Q.rows(), cm.Q.cols()}}};
  out.checks.push_back({"UU* = Lambda_1", cc.unitary_ok, cc.unitary_ok ? std::nullopt : std::optional(cc.residual_u)});
  out.checks.push_back({"QQ* = Lambda_2", cc.second_ok, cc.second_ok ? std::nullopt : std::optional(cc.residual_q)});

  rep["ramified_points"] = nullptr;
  if (!reducible) {
    json pts = json::array();
    for (const auto& p : ramification(curve)) {
      pts.push_back({{"re", p.z.real()}, {"im", p.z.imag()}, {"multiplicity", p.multiplicity},
                     {"at_infinity", p.at_infinity}});
    }
    text << "ramified points: " << pts.size() << "\n";
    rep["ramified_points"] = std::move(pts);
  } else {
    text << "reducible (second wedge vanishes)\n";
  }

  const auto fp = fingerprint(to_float(curve), as_double(c), d);
  rep["fingerprint"] = {{"singular_values", fp.singular}, {"c", fp.c}, {"S", fp.S}};
  rep["checks"] = checks_json(out.checks);
  out.summary = checks_text(out.checks) + text.str();
  return out;
}

int parse_int(const std::string& s, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw FormatError(std::string("bad ") + what + ": " + s);
  return v;
}

template <class Fn>
CommandResult guarded(Fn fn) {
  try {
    return fn();
  } catch (const FormatError& e) {
    return {kInputError, json{{"error", e.what()}}.dump(2), std::string("error: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return {kInputError, json{{"error", e.what()}}.dump(2), std::string("error: ") + e.what() + "\n"};
  } catch (const ScalarError& e) {
    return {kInputError, json{{"error", e.what()}}.dump(2), std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace

AnyCurve resolve_curve(const std::string& source, std::vector<std::string>& notes) {
  const auto colon = source.find(':');
  const std::string head = source.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : source.substr(colon + 1);
  if (source == "jiao") {
    notes.emplace_back("builtin: irreducible d=4 example in G(2,6) with non-constant |det A1|^2");
    return jiao_curve();
  }
  if (colon != std::string::npos && head == "family") {
    const FamilyParam p = FamilyParam::parse(arg);
    notes.push_back("builtin: family member t = " + format_rat(p.t));
    return family_curve(p);
  }
  if (colon != std::string::npos && (head == "veronese-sum-a" || head == "veronese-sum-b")) {
    const int n = parse_int(arg, "n");
    if (n < 1 || n + 2 > kMaxAmbient) throw FormatError("n out of range for " + head);
    const bool a = head == "veronese-sum-a";
    const auto [v1, v2] = a ? reducible_type_a(n) : reducible_type_b(n);
    const int exponent = a ? 2 * n : n;
    notes.push_back(std::string("builtin: ") + (a ? "V_0^(n+1) + V_1^(n+1)" : "V_0^(n) + constant unit vector") +
                    ", n = " + std::to_string(n) + "; verified Plucker exponent " + std::to_string(exponent));
    if (n == 4) {
      notes.push_back(std::string("degree label in the classification statement: d = ") + (a ? "4" : "8") +
                      "; the verified exponent " + std::to_string(exponent) + " is the operational degree");
    }
    return normalize_span(v1, v2);
  }
  return read_curve_file(source);
}

CommandResult verify_family(const std::string& t_text) {
  return guarded([&]() -> CommandResult {
    const FamilyParam p = FamilyParam::parse(t_text);
    std::vector<std::string> notes;
    const ExactCurve curve = family_curve(p);
    Analysis an = analyze(curve, notes);
    const auto expected = family_invariants(p);
    bool agree = false;
    try {
      const auto inv = invariant_chain(curve);
      agree = inv.d == expected.d && inv.c == expected.c && inv.S == expected.S && inv.K == expected.K &&
              inv.detA1sq == expected.detA1sq;
    } catch (const CurveError&) {
    }
    an.checks.push_back({"invariants equal c = 4t - t^2, S = t^2 - 4t + 6", agree, {}});
    const bool unramified = an.report["ramified_points"].is_array() && an.report["ramified_points"].empty();
    an.checks.push_back({"unramified", unramified, {}});
    json degenerate = nullptr;
    if (const auto dm = degenerate_member(p)) {
      const bool reverified = apply_signed_permutation(curve, dm->permutation) == dm->direct;
      an.checks.push_back({"signed column permutation onto direct sum", reverified, {}});
      degenerate = {{"direct_sum", {dm->left, dm->right}},
                    {"target_column", dm->permutation.target},
                    {"sign", dm->permutation.sign},
                    {"reverified", reverified}};
      notes.push_back("degenerate member: V_0^(" + std::to_string(dm->left) + ") + V_0^(" +
                      std::to_string(dm->right) + ")");
    }
    bool all = true;
    for (const auto& c : an.checks) all = all && c.pass;
    json rep = an.report;
    rep["input"] = "family:" + format_rat(p.t);
    rep["t"] = num(p.t);
    rep["expected"] = {{"c", num(expected.c)}, {"S", num(expected.S)}};
    rep["degenerate"] = degenerate;
    rep["checks"] = checks_json(an.checks);
    rep["notes"] = notes;
    rep["pass"] = all;
    std::string text = "family t = " + format_rat(p.t) + "\n" + checks_text(an.checks) +
                       "c = " + format_radical(expected.c) + ", S = " + format_radical(expected.S) + "\n";
    for (const auto& n : notes) text += "note: " + n + "\n";
    return {all ? kOk : kNegative, rep.dump(2), text};
  });
}

CommandResult check(const std::string& source) {
  return guarded([&]() -> CommandResult {
    std::vector<std::string> notes;
    const AnyCurve curve = resolve_curve(source, notes);
    Analysis an = std::visit([&](const auto& c) { return analyze(c, notes); }, curve);
    json rep = an.report;
    rep["input"] = source;
    rep["notes"] = notes;
    rep["constantly_curved"] = an.constantly_curved;
    std::string text = source + "\n" + an.summary;
    for (const auto& n : notes) text += "note: " + n + "\n";
    return {an.constantly_curved ? kOk : kNegative, rep.dump(2), text};
  });
}

CommandResult veronese(const VeroneseArgs& args) {
  return guarded([&]() -> CommandResult {
    if (args.n < 1 || args.n + 1 > kMaxAmbient) throw FormatError("n out of range");
    if (args.i.has_value() == args.osculating.has_value()) throw FormatError("give exactly one of --i, --osculating");
    json rep = {{"n", args.n}};
    std::ostringstream text;
    if (args.i) {
      const int i = *args.i;
      if (i < 0 || i > args.n) throw FormatError("need 0 <= i <= n");
      const auto sc = sequence_constants(args.n, i);
      std::mt19937_64 rng(args.seed);
      std::normal_distribution<double> g(0.0, 1.0);
      double worst = 0.0;
      for (int k = 0; k < args.points; ++k) {
        const FloatComplex z(g(rng), g(rng));
        worst = std::max(worst, projector_distance(f_closed(args.n, i, z), f_gram_schmidt(args.n, i, z)));
      }
      const bool ok = worst < 1e-9;
      rep["i"] = i;
      rep["K"] = num(sc.curvature);
      rep["cos_angle"] = num(sc.cos_angle);
      rep["oracle"] = {{"points", args.points}, {"max_projector_distance", worst}, {"pass", ok}};
      text << "K = " << format_rat(sc.curvature) << ", cos(alpha) = " << format_rat(sc.cos_angle) << "\n"
           << (ok ? "pass" : "FAIL") << "  closed form vs Gram-Schmidt, max projector distance " << fmt(worst)
           << "\n";
      return {ok ? kOk : kNegative, rep.dump(2), text.str()};
    }
    const int k = *args.osculating;
    if (k < 0 || k >= args.n) throw FormatError("need 0 <= k < n");
    const auto o = osculating(args.n, k);
    rep["osculating"] = k;
    rep["degree"] = o.degree;
    rep["constant_curvature"] = o.match.has_value();
    if (o.match) rep["c0"] = num(o.match->c0);
    text << "osculating degree " << o.degree << "\n"
         << (o.match ? "pass" : "FAIL") << "  surface is c0(1+|z|^2)^" << o.degree;
    if (o.match) text << " with c0 = " << format_radical(o.match->c0);
    text << "\n";
    return {o.match ? kOk : kNegative, rep.dump(2), text.str()};
  });
}

CommandResult solve(const Problem& problem, const std::string& report_path) {
  return guarded([&]() -> CommandResult {
    problem.validate();
    const SolveResult res = grasscurve::solve(problem);
    const std::string rep = solve_report_json(problem, res);
    if (!report_path.empty()) {
      std::ofstream out(report_path);
      if (!out) throw FormatError("cannot write " + report_path);
      out << rep << "\n";
    }
    std::ostringstream text;
    text << res.converged << " converged restarts, " << res.solutions.size() << " irreducible solution(s), "
         << res.reducible.size() << " reducible\n";
    for (const auto& s : res.solutions) {
      text << "residual " << fmt(s.residual) << "  c = " << fmt(s.c) << "  S = " << fmt(s.S) << "  sigma(A1) =";
      for (double x : s.fp.singular.front()) text << " " << fmt(x);
      if (problem.d == 4 && problem.n == 4) {
        const auto fm = match_family(s);
        text << "  t candidates:";
        for (const auto& c : fm.candidates) text << " " << fmt(c.t) << " (distance " << fmt(c.distance) << ")";
        if (fm.candidates.empty()) text << " none";
      }
      text << "\n";
    }
    if (problem.d == 4 && problem.n == 4) text << "family candidates are necessary conditions only\n";
    return {res.solutions.empty() ? kNegative : kOk, rep, text.str()};
  });
}

CommandResult plot_data(const std::string& source, int samples, double r_max) {
  return guarded([&]() -> CommandResult {
    if (samples < 1) throw FormatError("samples must be positive");
    if (!(r_max >= 0.0) || !std::isfinite(r_max)) throw FormatError("r-max must be a finite non-negative number");
    std::vector<std::string> notes;
    const AnyCurve curve = resolve_curve(source, notes);
    return std::visit(
        [&](const auto& c) -> CommandResult {
          const auto pl = plucker_surface(c);
          if (!pl.match || c.n < 2) {
            return {kNegative, json{{"error", "not constantly curved"}}.dump(2), "error: not constantly curved\n"};
          }
          const int d = pl.match->m;
          const auto surface = herm_surface(second_wedge(c));
          std::ostringstream tsv;
          tsv << "r2\tdetA1sq\n" << std::setprecision(17);
          json rows = json::array();
          for (int k = 0; k < samples; ++k) {
            const double r = samples == 1 ? 0.0 : r_max * k / (samples - 1);
            const double r2 = r * r;
            const double v = surface_eval(surface, FloatComplex(r, 0.0)) / (d * d * std::pow(1.0 + r2, 2 * d - 4));
            tsv << r2 << "\t" << v << "\n";
            rows.push_back({r2, v});
          }
          json rep = {{"input", source}, {"d", d}, {"columns", {"r2", "detA1sq"}}, {"rows", rows}, {"notes", notes}};
          return {kOk, rep.dump(2), tsv.str()};
        },
        curve);
  });
}

CommandResult export_curve(const std::string& source) {
  return guarded([&]() -> CommandResult {
    std::vector<std::string> notes;
    const AnyCurve curve = resolve_curve(source, notes);
    const std::string doc = std::visit([](const auto& c) { return curve_to_json(c); }, curve);
    return {kOk, json{{"input", source}, {"notes", notes}}.dump(2), doc + "\n"};
  });
}

}  // namespace grasscurve::cli
