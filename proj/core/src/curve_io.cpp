#include "grasscurve/curve_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace grasscurve {

namespace {

using nlohmann::json;

RadicalComplex exact_scalar(const json& s) {
  if (!s.is_object() || !s.contains("re") || !s["re"].is_string()) {
    throw FormatError("exact scalar must be {\"re\": string, \"im\": string}");
  }
  const RadicalScalar re = parse_radical(s["re"].get<std::string>());
  RadicalScalar im;
  if (s.contains("im")) {
    if (!s["im"].is_string()) throw FormatError("exact scalar imaginary part must be a string");
    im = parse_radical(s["im"].get<std::string>());
  }
  return {re, im};
}

FloatComplex float_scalar(const json& s) {
  if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) {
    throw FormatError("float scalar must be [re, im]");
  }
  return {s[0].get<double>(), s[1].get<double>()};
}

template <class T, class Read>
CurveForm<T> read_coeffs(const json& doc, int n, Read read) {
  const json& coeffs = doc.at("coeffs");
  if (!coeffs.is_array() || coeffs.empty()) throw FormatError("coeffs must be a non-empty array");
  std::map<int, Matrix<T>> by_alpha;
  for (const auto& entry : coeffs) {
    if (!entry.is_object() || !entry.contains("alpha") || !entry["alpha"].is_number_integer()) {
      throw FormatError("each coefficient needs an integer alpha");
    }
    const int alpha = entry["alpha"].get<int>();
    if (alpha < 1) throw FormatError("alpha must be at least 1");
    if (by_alpha.count(alpha) != 0) throw FormatError("duplicate alpha " + std::to_string(alpha));
    const json& rows = entry.at("rows");
    if (!rows.is_array() || rows.size() != 2) throw FormatError("rows must hold exactly two rows");
    Matrix<T> a(2, static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < 2; ++r) {
      if (!rows[r].is_array() || rows[r].size() != static_cast<std::size_t>(n)) {
        throw FormatError("each row must hold n scalars");
      }
      for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) a(r, j) = read(rows[r][j]);
    }
    by_alpha.emplace(alpha, std::move(a));
  }
  CurveForm<T> c = CurveForm<T>::zero(n, by_alpha.rbegin()->first);
  for (auto& [alpha, a] : by_alpha) c.coeffs[alpha - 1] = std::move(a);
  return c;
}

template <class T, class Write>
std::string write_curve(const CurveForm<T>& c, const char* mode, Write write) {
  json coeffs = json::array();
  for (int alpha = 1; alpha <= c.m(); ++alpha) {
    json rows = json::array();
    for (int r = 0; r < 2; ++r) {
      json row = json::array();
      for (int j = 0; j < c.n; ++j) row.push_back(write(c.entry(alpha, r, j)));
      rows.push_back(std::move(row));
    }
    coeffs.push_back({{"alpha", alpha}, {"rows", std::move(rows)}});
  }
  json doc = {{"n", c.n}, {"mode", mode}, {"coeffs", std::move(coeffs)}};
  return doc.dump(2);
}

}  // namespace

AnyCurve parse_curve_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw FormatError("curve file must be a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) throw FormatError("missing integer n");
    const int n = doc["n"].get<int>();
    if (n < 1 || n + 2 > kMaxAmbient) throw FormatError("n out of range");
    if (!doc.contains("mode") || !doc["mode"].is_string()) throw FormatError("missing mode");
    const std::string mode = doc["mode"].get<std::string>();
    if (!doc.contains("coeffs")) throw FormatError("missing coeffs");
    if (mode == "exact") return read_coeffs<RadicalComplex>(doc, n, exact_scalar);
    if (mode == "float") return read_coeffs<FloatComplex>(doc, n, float_scalar);
    throw FormatError("mode must be \"exact\" or \"float\"");
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed curve JSON: ") + e.what());
  } catch (const ScalarError& e) {
    throw FormatError(std::string("bad exact scalar: ") + e.what());
  }
}

AnyCurve read_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_curve_json(buf.str());
}

std::string curve_to_json(const ExactCurve& c) {
  return write_curve(c, "exact", [](const RadicalComplex& z) {
    return json{{"re", format_radical(z.re())}, {"im", format_radical(z.im())}};
  });
}

std::string curve_to_json(const FloatCurve& c) {
  return write_curve(c, "float", [](const FloatComplex& z) { return json::array({z.real(), z.imag()}); });
}

}  // namespace grasscurve
