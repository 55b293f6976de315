#include <iostream>

#include "CLI11.hpp"
#include "grasscurve/commands.hpp"

namespace cli = grasscurve::cli;

int main(int argc, char** argv) {
  CLI::App app{"Constantly curved holomorphic two-spheres in G(2, n+2)"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Print the JSON report instead of the summary");

  std::string t;
  auto* vf = app.add_subcommand("verify-family", "Exact checks on a family member");
  vf->add_option("--t", t, "Rational parameter in (0, 3]")->required();

  std::string source;
  auto* ck = app.add_subcommand("check", "Full check pipeline on a curve file or builtin");
  ck->add_option("source", source, "Curve file, or jiao | family:t | veronese-sum-a:n | veronese-sum-b:n")->required();

  cli::VeroneseArgs va;
  int i = -1, osc = -1;
  auto* ve = app.add_subcommand("veronese", "Harmonic-sequence constants and osculating degrees");
  ve->add_option("--n", va.n, "Veronese degree")->required();
  auto* opt_i = ve->add_option("--i", i, "Sequence index");
  auto* opt_k = ve->add_option("--osculating", osc, "Osculating order k");
  opt_i->excludes(opt_k);
  ve->add_option("--points", va.points, "Random points for the oracle")->capture_default_str();

  grasscurve::Problem pb;
  double c = 0.0;
  bool free_c = false;
  std::string report_path;
  auto* so = app.add_subcommand("solve", "Search the constraint system numerically");
  so->add_option("--d", pb.d)->capture_default_str();
  so->add_option("--n", pb.n)->capture_default_str();
  auto* opt_c = so->add_option("--c", c, "Fixed wedge constant");
  auto* opt_free = so->add_flag("--free-c", free_c, "Eliminate c by least squares (default)");
  opt_c->excludes(opt_free);
  so->add_option("--restarts", pb.restarts)->capture_default_str();
  so->add_option("--seed", pb.seed)->capture_default_str();
  so->add_option("--tol", pb.tol)->capture_default_str();
  so->add_option("--max-iter", pb.max_iter)->capture_default_str();
  so->add_option("--threads", pb.threads)->capture_default_str();
  so->add_option("--out", report_path, "Solve-report JSON path");

  int samples = 50;
  double r_max = 3.0;
  std::string out_path;
  auto* pd = app.add_subcommand("plot-data", "Radial samples of |det A1|^2 as TSV");
  pd->add_option("source", source)->required();
  pd->add_option("--samples", samples)->capture_default_str();
  pd->add_option("--r-max", r_max)->capture_default_str();
  pd->add_option("--out", out_path, "Write TSV here instead of stdout");

  auto* ex = app.add_subcommand("export", "Write a curve file");
  ex->add_option("source", source)->required();
  ex->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }

  cli::CommandResult res;
  bool payload = false;
  if (*vf) {
    res = cli::verify_family(t);
  } else if (*ck) {
    res = cli::check(source);
  } else if (*ve) {
    if (*opt_i) va.i = i;
    if (*opt_k) va.osculating = osc;
    res = cli::veronese(va);
  } else if (*so) {
    if (*opt_c) pb.c = c;
    res = cli::solve(pb, report_path);
  } else if (*pd) {
    res = cli::plot_data(source, samples, r_max);
    payload = true;
  } else if (*ex) {
    res = cli::export_curve(source);
    payload = true;
  }

  if (payload && res.exit_code == cli::kOk && !out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return cli::kInputError;
    }
    out << res.text;
    std::cout << (as_json ? res.report + "\n" : "wrote " + out_path + "\n");
  } else if (as_json && !payload) {
    std::cout << res.report << "\n";
  } else {
    (res.exit_code == cli::kInputError ? std::cerr : std::cout) << res.text;
  }
  return res.exit_code;
}
