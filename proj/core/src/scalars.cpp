#include "grasscurve/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <optional>
#include <set>

namespace grasscurve {

Rat make_rat(long num, long den) {
  if (den == 0) throw ScalarError("zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  auto valid = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    return std::all_of(part.begin() + static_cast<long>(i), part.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid(num, true) || !valid(den, false)) {
    throw ScalarError("malformed rational: '" + s + "'");
  }
  mpz_class n(num[0] == '+' ? num.substr(1) : num), d(den);
  if (d == 0) throw ScalarError("zero denominator: '" + s + "'");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rat(const Rat& q) { return q.get_str(); }

// ---------------------------------------------------------------------------

SquareSplit split_square(const mpz_class& n) {
  if (n <= 0) throw ScalarError("split_square requires a positive integer");
  mpz_class rest = n;
  mpz_class square = 1;
  mpz_class free = 1;
  auto take = [&](unsigned long p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    for (unsigned k = 0; k < e / 2; ++k) square *= p;
    if (e % 2 == 1) free *= p;
  };
  unsigned long p = 2;
  bool exhausted = false;
  while (true) {
    if (mpz_class(p) * p > rest) {
      exhausted = true;
      break;
    }
    if (p > kTrialDivisionLimit) break;
    take(p);
    p = (p == 2) ? 3 : p + 2;
  }
  if (rest != 1) {
    const mpz_class limit_sq = mpz_class(kTrialDivisionLimit) * kTrialDivisionLimit;
    if (exhausted || rest < limit_sq) {
      free *= rest;  // no factor below sqrt(rest): prime
    } else if (mpz_perfect_square_p(rest.get_mpz_t()) != 0) {
      mpz_class root;
      mpz_sqrt(root.get_mpz_t(), rest.get_mpz_t());
      if (root >= limit_sq) {
        throw ScalarError("radicand too large to factor: " + n.get_str());
      }
      square *= root;
    } else {
      throw ScalarError("radicand too large to factor: " + n.get_str());
    }
  }
  if (!free.fits_ulong_p()) throw ScalarError("square-free part overflows: " + n.get_str());
  return {square, static_cast<std::uint64_t>(free.get_ui())};
}

namespace {

bool is_square_free(std::uint64_t d) {
  if (d == 0) return false;
  for (std::uint64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
    if (p > kTrialDivisionLimit) throw ScalarError("radicand too large to test");
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t d) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= d; ++p) {
    if (d % p == 0) {
      out.push_back(p);
      while (d % p == 0) d /= p;
    }
  }
  if (d > 1) out.push_back(d);
  return out;
}

mpf_class evaluate(const RadicalScalar& a, mp_bitcnt_t bits) {
  mpf_class sum(0, bits);
  for (const auto& [d, q] : a.terms()) {
    mpf_class root(d, bits);
    root = sqrt(root);
    mpf_class coef(q, bits);
    sum += coef * root;
  }
  return sum;
}

}  // namespace

RadicalScalar::RadicalScalar(long v) {
  if (v != 0) terms_.emplace_back(1, Rat(v));
}

RadicalScalar::RadicalScalar(Rat q) {
  q.canonicalize();
  if (q != 0) terms_.emplace_back(1, std::move(q));
}

RadicalScalar RadicalScalar::radical(std::uint64_t radicand, Rat coeff) {
  if (!is_square_free(radicand)) {
    throw ScalarError("radicand not square-free: " + std::to_string(radicand));
  }
  coeff.canonicalize();
  if (coeff == 0) return {};
  return RadicalScalar(std::vector<Term>{{radicand, std::move(coeff)}});
}

RadicalScalar RadicalScalar::from_terms(std::vector<Term> terms) {
  return RadicalScalar(canonicalize(std::move(terms)));
}

std::vector<RadicalScalar::Term> RadicalScalar::canonicalize(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return t.second == 0; });
  for (auto& t : out) t.second.canonicalize();
  return out;
}

bool RadicalScalar::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1);
}

Rat RadicalScalar::rational_part() const { return coefficient(1); }

Rat RadicalScalar::coefficient(std::uint64_t radicand) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), radicand,
                             [](const Term& t, std::uint64_t d) { return t.first < d; });
  if (it != terms_.end() && it->first == radicand) return it->second;
  return 0;
}

int RadicalScalar::sign() const {
  if (terms_.empty()) return 0;
  if (is_rational()) return sgn(terms_[0].second);
  const mpf_class v = evaluate(*this, 512);
  const mpf_class eps("1e-120", 512);
  if (abs(v) < eps) throw ScalarError("radical sign undecidable at working precision");
  return sgn(v);
}

RadicalScalar RadicalScalar::operator-() const {
  RadicalScalar out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

RadicalScalar& RadicalScalar::operator+=(const RadicalScalar& o) {
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Rat s = a->second + b->second;
      if (s != 0) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

RadicalScalar& RadicalScalar::operator-=(const RadicalScalar& o) { return *this += -o; }

RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<RadicalScalar::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [da, qa] : a.terms_) {
    for (const auto& [db, qb] : b.terms_) {
      const std::uint64_t g = std::gcd(da, db);
      const std::uint64_t x = da / g;
      const std::uint64_t y = db / g;
      if (x > std::numeric_limits<std::uint64_t>::max() / y) {
        throw ScalarError("radicand overflow in product");
      }
      const std::uint64_t key = x * y;
      Rat q = qa * qb;
      if (g != 1) q *= Rat(mpz_class(static_cast<unsigned long>(g)));
      prod.emplace_back(key, std::move(q));
    }
  }
  return RadicalScalar(RadicalScalar::canonicalize(std::move(prod)));
}

RadicalScalar& RadicalScalar::operator*=(const RadicalScalar& o) { return *this = *this * o; }

RadicalScalar rad_add(const RadicalScalar& a, const RadicalScalar& b) { return a + b; }
RadicalScalar rad_sub(const RadicalScalar& a, const RadicalScalar& b) { return a - b; }
RadicalScalar rad_mul(const RadicalScalar& a, const RadicalScalar& b) { return a * b; }

RadicalScalar rad_sqrt(const Rat& q_in) {
  Rat q = q_in;
  q.canonicalize();
  if (q < 0) throw ScalarError("square root of negative rational " + q.get_str());
  if (q == 0) return {};
  const mpz_class ab = q.get_num() * q.get_den();
  const SquareSplit split = split_square(ab);
  Rat coeff(split.square, q.get_den());
  coeff.canonicalize();
  if (split.free == 1) return RadicalScalar(coeff);
  return RadicalScalar::radical(split.free, coeff);
}

RadicalScalar rad_inverse(const RadicalScalar& a) {
  if (a.is_zero()) throw ScalarError("inverse of zero");
  if (a.size() > kMaxInverseTerms) {
    throw ScalarError("too many radical terms to invert (" + std::to_string(a.size()) + ")");
  }
  std::set<std::uint64_t> atoms;
  for (const auto& [d, q] : a.terms()) {
    for (auto p : prime_factors(d)) atoms.insert(p);
  }
  if (atoms.size() > kMaxInverseTerms) {
    throw ScalarError("too many radical atoms to invert (" + std::to_string(atoms.size()) + ")");
  }
  RadicalScalar num = 1;
  RadicalScalar den = a;
  for (auto p : atoms) {
    std::vector<RadicalScalar::Term> flipped;
    for (const auto& [d, q] : den.terms()) flipped.emplace_back(d, d % p == 0 ? Rat(-q) : q);
    const RadicalScalar conj = RadicalScalar::from_terms(std::move(flipped));
    num *= conj;
    den *= conj;
  }
  if (!den.is_rational() || den.is_zero()) throw ScalarError("conjugate reduction failed");
  const Rat r = den.rational_part();
  Rat inv = 1 / r;
  inv.canonicalize();
  return num * RadicalScalar(inv);
}

double rad_to_float(const RadicalScalar& a) {
  if (a.is_zero()) return 0.0;
  return evaluate(a, 192).get_d();
}

// ---------------------------------------------------------------------------

std::string format_radical(const RadicalScalar& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [d, q] : a.terms()) {
    const bool negative = q < 0;
    const Rat mag = abs(q);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? '-' : '+';
    }
    first = false;
    if (d == 1) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += "sqrt(" + std::to_string(d) + ")";
    }
  }
  return out;
}

namespace {

class RadicalParser {
public:
  explicit RadicalParser(std::string_view s) : s_(s) {}

  RadicalScalar parse() {
    skip_ws();
    if (at_end()) fail("empty scalar");
    RadicalScalar total;
    int sign = 1;
    if (auto sg = read_sign()) sign = *sg;
    total += signed_term(sign);
    while (true) {
      skip_ws();
      if (at_end()) break;
      auto sg = read_sign();
      if (!sg) fail("expected '+' or '-'");
      total += signed_term(*sg);
    }
    return total;
  }

private:
  RadicalScalar signed_term(int sign) {
    skip_ws();
    RadicalScalar t = term();
    return sign < 0 ? -t : t;
  }

  RadicalScalar term() {
    if (s_.substr(pos_, 5) == "sqrt(") return root();
    Rat q = rational();
    skip_ws();
    if (!at_end() && s_[pos_] == '*') {
      ++pos_;
      skip_ws();
      if (s_.substr(pos_, 5) != "sqrt(") fail("expected sqrt( after '*'");
      return RadicalScalar(q) * root();
    }
    return RadicalScalar(q);
  }

  RadicalScalar root() {
    pos_ += 5;
    skip_ws();
    const std::string digits = read_digits();
    skip_ws();
    if (at_end() || s_[pos_] != ')') fail("expected ')'");
    ++pos_;
    return rad_sqrt(Rat(mpz_class(digits)));
  }

  Rat rational() {
    const std::string num = read_digits();
    skip_ws();
    if (!at_end() && s_[pos_] == '/') {
      ++pos_;
      skip_ws();
      const std::string den = read_digits();
      return parse_rat(num + "/" + den);
    }
    return parse_rat(num);
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_])) != 0) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::optional<int> read_sign() {
    if (at_end()) return std::nullopt;
    if (s_[pos_] == '+') {
      ++pos_;
      return 1;
    }
    if (s_[pos_] == '-') {
      ++pos_;
      return -1;
    }
    if (s_.substr(pos_, 3) == "\xE2\x88\x92") {  // U+2212 minus sign
      pos_ += 3;
      return -1;
    }
    return std::nullopt;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_])) != 0) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  [[noreturn]] void fail(const std::string& what) const {
    throw ScalarError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RadicalScalar parse_radical(std::string_view text) { return RadicalParser(text).parse(); }

std::ostream& operator<<(std::ostream& os, const RadicalScalar& a) { return os << format_radical(a); }

// ---------------------------------------------------------------------------

RadicalComplex& RadicalComplex::operator+=(const RadicalComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

RadicalComplex& RadicalComplex::operator-=(const RadicalComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

RadicalComplex& RadicalComplex::operator*=(const RadicalComplex& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  RadicalScalar re = re_ * o.re_ - im_ * o.im_;
  RadicalScalar im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

RadicalComplex inverse(const RadicalComplex& a) {
  if (a.is_zero()) throw ScalarError("inverse of zero");
  if (a.is_real()) return {rad_inverse(a.re())};
  const RadicalScalar inv_norm = rad_inverse(a.norm());
  return {a.re() * inv_norm, -(a.im() * inv_norm)};
}

FloatComplex to_float(const RadicalComplex& a) {
  return {rad_to_float(a.re()), rad_to_float(a.im())};
}

std::ostream& operator<<(std::ostream& os, const RadicalComplex& a) {
  if (a.is_real()) return os << a.re();
  return os << "(" << a.re() << ")+i*(" << a.im() << ")";
}

}  // namespace grasscurve
