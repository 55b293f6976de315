#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "grasscurve/veronese.hpp"

namespace grasscurve {

class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using AnyCurve = std::variant<ExactCurve, FloatCurve>;

/// {"n": int, "mode": "exact"|"float", "coeffs": [{"alpha": int, "rows": [[s..],[s..]]}]}
/// with s = {"re": "...", "im": "..."} (radical text) or [re, im].
/// Degrees not listed are zero. Throws FormatError.
AnyCurve parse_curve_json(std::string_view text);
AnyCurve read_curve_file(const std::string& path);

std::string curve_to_json(const ExactCurve& c);
std::string curve_to_json(const FloatCurve& c);

}  // namespace grasscurve
