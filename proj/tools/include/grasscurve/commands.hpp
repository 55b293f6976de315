#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grasscurve/curve_io.hpp"
#include "grasscurve/solver.hpp"

namespace grasscurve::cli {

/// Exit codes: 0 success, 1 negative check or solve, 2 input error.
enum Exit : int { kOk = 0, kNegative = 1, kInputError = 2 };

struct CommandResult {
  int exit_code = kOk;
  std::string report;  // JSON document
  std::string text;    // human summary, or the payload for plot-data/export
};

/// Builtins: "jiao", "family:<t>", "veronese-sum-a:<n>", "veronese-sum-b:<n>";
/// anything else is read as a curve file. Notes about the source are appended.
AnyCurve resolve_curve(const std::string& source, std::vector<std::string>& notes);

CommandResult verify_family(const std::string& t);
CommandResult check(const std::string& source);

struct VeroneseArgs {
  int n = 0;
  std::optional<int> i;
  std::optional<int> osculating;
  int points = 20;
  unsigned long seed = 1;
};
CommandResult veronese(const VeroneseArgs& args);

/// Writes the solve report to report_path when non-empty.
CommandResult solve(const Problem& problem, const std::string& report_path);

/// r^2 and |det A1|^2 on r = 0, r_max/(samples-1), ..., r_max.
CommandResult plot_data(const std::string& source, int samples, double r_max);

CommandResult export_curve(const std::string& source);

}  // namespace grasscurve::cli
