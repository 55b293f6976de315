#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace grasscurve {

/// Arbitrary-precision rational, always kept canonical (den > 0, reduced).
using Rat = mpq_class;

/// Double-precision complex scalar used by the float paths and the solver.
using FloatComplex = std::complex<double>;

Rat make_rat(long num, long den = 1);
Rat parse_rat(std::string_view text);
std::string format_rat(const Rat& q);

class ScalarError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Largest trial divisor used when extracting square factors.
inline constexpr std::uint64_t kTrialDivisionLimit = 1'000'000;

/// Rational linear combination of square roots of square-free positive
/// integers: sum of q_d * sqrt(d). Terms are sorted by radicand, the
/// radicand 1 carries the rational part, and no coefficient is zero.
class RadicalScalar {
public:
  using Term = std::pair<std::uint64_t, Rat>;

  RadicalScalar() = default;
  RadicalScalar(long v);  // NOLINT(google-explicit-constructor)
  RadicalScalar(Rat q);   // NOLINT(google-explicit-constructor)

  /// coeff * sqrt(radicand); radicand must be square-free.
  static RadicalScalar radical(std::uint64_t radicand, Rat coeff = 1);
  /// Builds from terms whose radicands are already known square-free.
  static RadicalScalar from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Rational part (coefficient of sqrt(1)).
  Rat rational_part() const;
  /// Coefficient of sqrt(radicand), zero when absent.
  Rat coefficient(std::uint64_t radicand) const;
  std::size_t size() const { return terms_.size(); }

  /// Exact sign; uses a 512-bit evaluation, which is decisive because
  /// nonzero canonical values are nonzero reals.
  int sign() const;

  RadicalScalar operator-() const;
  RadicalScalar& operator+=(const RadicalScalar& o);
  RadicalScalar& operator-=(const RadicalScalar& o);
  RadicalScalar& operator*=(const RadicalScalar& o);

  friend RadicalScalar operator+(RadicalScalar a, const RadicalScalar& b) { return a += b; }
  friend RadicalScalar operator-(RadicalScalar a, const RadicalScalar& b) { return a -= b; }
  friend RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b);
  friend bool operator==(const RadicalScalar& a, const RadicalScalar& b) = default;

  /// Re-sorts, merges and drops zero terms. Operation outputs are already
  /// canonical; exposed so tests can check idempotence.
  static std::vector<Term> canonicalize(std::vector<Term> terms);

private:
  explicit RadicalScalar(std::vector<Term> terms) : terms_(std::move(terms)) {}
  std::vector<Term> terms_;
};

RadicalScalar rad_add(const RadicalScalar& a, const RadicalScalar& b);
RadicalScalar rad_sub(const RadicalScalar& a, const RadicalScalar& b);
RadicalScalar rad_mul(const RadicalScalar& a, const RadicalScalar& b);

/// Canonical sqrt(q) for q >= 0: sqrt(a/b) = sqrt(ab)/b with ab split into
/// square times square-free part. Throws ScalarError for q < 0 or when the
/// radicand cannot be factored within the trial-division limit.
RadicalScalar rad_sqrt(const Rat& q);

/// Multiplicative inverse through conjugation over each prime atom.
/// Throws ScalarError for zero input or more than kMaxInverseTerms terms.
inline constexpr std::size_t kMaxInverseTerms = 8;
RadicalScalar rad_inverse(const RadicalScalar& a);

double rad_to_float(const RadicalScalar& a);

/// Textual form: terms joined by '+'/'-', each "p/q", "sqrt(d)" or
/// "p/q*sqrt(d)"; e.g. "1-1/2*sqrt(3)". parse accepts U+2212 as minus.
std::string format_radical(const RadicalScalar& a);
RadicalScalar parse_radical(std::string_view text);

std::ostream& operator<<(std::ostream& os, const RadicalScalar& a);

/// Square-free decomposition n = square^2 * free, via trial division.
struct SquareSplit {
  mpz_class square;
  std::uint64_t free;
};
SquareSplit split_square(const mpz_class& n);

// ---------------------------------------------------------------------------

/// Complexified radical scalar re + i*im.
class RadicalComplex {
public:
  RadicalComplex() = default;
  RadicalComplex(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  RadicalComplex(RadicalScalar re, RadicalScalar im = {})  // NOLINT(google-explicit-constructor)
      : re_(std::move(re)), im_(std::move(im)) {}

  const RadicalScalar& re() const { return re_; }
  const RadicalScalar& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  RadicalComplex conj() const { return {re_, -im_}; }
  RadicalScalar norm() const { return re_ * re_ + im_ * im_; }

  RadicalComplex operator-() const { return {-re_, -im_}; }
  RadicalComplex& operator+=(const RadicalComplex& o);
  RadicalComplex& operator-=(const RadicalComplex& o);
  RadicalComplex& operator*=(const RadicalComplex& o);

  friend RadicalComplex operator+(RadicalComplex a, const RadicalComplex& b) { return a += b; }
  friend RadicalComplex operator-(RadicalComplex a, const RadicalComplex& b) { return a -= b; }
  friend RadicalComplex operator*(RadicalComplex a, const RadicalComplex& b) { return a *= b; }
  friend bool operator==(const RadicalComplex& a, const RadicalComplex& b) = default;

private:
  RadicalScalar re_;
  RadicalScalar im_;
};

RadicalComplex inverse(const RadicalComplex& a);
FloatComplex to_float(const RadicalComplex& a);
std::ostream& operator<<(std::ostream& os, const RadicalComplex& a);

// ---------------------------------------------------------------------------
// Uniform access used by the templated algebra.

template <class T>
struct field_traits;

template <>
struct field_traits<RadicalComplex> {
  using real_type = RadicalScalar;
  static constexpr bool exact = true;
  static RadicalComplex conj(const RadicalComplex& a) { return a.conj(); }
  static const RadicalScalar& real(const RadicalComplex& a) { return a.re(); }
  static const RadicalScalar& imag(const RadicalComplex& a) { return a.im(); }
  static bool is_zero(const RadicalComplex& a) { return a.is_zero(); }
  static FloatComplex to_float(const RadicalComplex& a) { return grasscurve::to_float(a); }
  static double to_double(const RadicalScalar& r) { return rad_to_float(r); }
  static RadicalComplex inverse(const RadicalComplex& a) { return grasscurve::inverse(a); }
  static RadicalComplex from_real(const RadicalScalar& r) { return RadicalComplex(r); }
};

template <>
struct field_traits<FloatComplex> {
  using real_type = double;
  static constexpr bool exact = false;
  static FloatComplex conj(const FloatComplex& a) { return std::conj(a); }
  static double real(const FloatComplex& a) { return a.real(); }
  static double imag(const FloatComplex& a) { return a.imag(); }
  static bool is_zero(const FloatComplex& a) { return a.real() == 0.0 && a.imag() == 0.0; }
  static FloatComplex to_float(const FloatComplex& a) { return a; }
  static double to_double(double r) { return r; }
  static FloatComplex inverse(const FloatComplex& a) { return 1.0 / a; }
  static FloatComplex from_real(double r) { return {r, 0.0}; }
};

}  // namespace grasscurve
