#include "grasscurve/family.hpp"

#include <cmath>
#include <stdexcept>

namespace grasscurve {

FamilyParam::FamilyParam(Rat value) : t(std::move(value)) {
  if (t <= 0 || t > 3) throw std::invalid_argument("family parameter must lie in (0, 3]");
}

FamilyParam FamilyParam::parse(std::string_view text) {
  Rat q;
  try {
    q = parse_rat(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("family parameter is not a rational: " + std::string(text));
  }
  return FamilyParam(q);
}

namespace {

RadicalComplex root(const Rat& q) { return RadicalComplex(rad_sqrt(q)); }

}  // namespace

ExactCurve family_curve(const FamilyParam& p) {
  const Rat& t = p.t;
  const Rat gap = abs(Rat(t - 2));
  using E = ExactCurve::Entry;
  return ExactCurve::from_entries(
      4, {
             E{0, 0, 3, RadicalComplex(gap)},
             E{0, 1, 1, root(t)},
             E{0, 2, 2, RadicalComplex(rad_sqrt(Rat((3 - t) / (4 - t))) * RadicalScalar(gap))},
             E{0, 3, 2, root(Rat(t / (4 - t)))},
             E{1, 0, 2, root(Rat(3 - t))},
             E{1, 2, 1, root(Rat(4 - t))},
         });
}

FloatCurve family_curve_float(double t) {
  if (!(t > 0.0 && t <= 3.0)) throw std::invalid_argument("family parameter must lie in (0, 3]");
  using E = FloatCurve::Entry;
  return FloatCurve::from_entries(4, {
                                         E{0, 0, 3, std::abs(t - 2)},
                                         E{0, 1, 1, std::sqrt(t)},
                                         E{0, 2, 2, std::sqrt((3 - t) / (4 - t)) * std::abs(t - 2)},
                                         E{0, 3, 2, std::sqrt(t / (4 - t))},
                                         E{1, 0, 2, std::sqrt(3 - t)},
                                         E{1, 2, 1, std::sqrt(4 - t)},
                                     });
}

CurveInvariants<RadicalScalar> family_invariants(const FamilyParam& p) {
  const Rat c = 4 * p.t - p.t * p.t;
  auto inv = invariants_from<RadicalScalar>(4, RadicalScalar(c));
  return inv;
}

std::optional<DegenerateMatch> degenerate_member(const FamilyParam& p) {
  int left = 0, right = 0;
  if (p.t == 2) {
    left = 2;
    right = 2;
  } else if (p.t == 3) {
    left = 3;
    right = 1;
  } else {
    return std::nullopt;
  }
  ExactCurve direct = direct_sum(left, right);
  auto perm = find_signed_permutation(family_curve(p), direct);
  if (!perm) return std::nullopt;
  return DegenerateMatch{left, right, std::move(direct), std::move(*perm)};
}

ExactCurve jiao_curve() {
  using E = ExactCurve::Entry;
  return ExactCurve::from_entries(
      4, {
             E{0, 0, 1, root(Rat(1, 2))},
             E{0, 1, 2, root(Rat(31, 28))},
             E{0, 2, 2, root(Rat(81, 28))},
             E{1, 2, 1, root(Rat(7, 2))},
             E{1, 3, 2, RadicalComplex(Rat(1, 2))},
         });
}

std::optional<std::vector<RadicalScalar>> radial_profile(const HermitianSurface<RadicalComplex>& s) {
  std::vector<RadicalScalar> out;
  for (std::size_t j = 0; j < s.size(); ++j) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (j != k && !s.h(j, k).is_zero()) return std::nullopt;
    }
    if (!s.h(j, j).is_real()) return std::nullopt;
    out.push_back(s.h(j, j).re());
  }
  return out;
}

std::vector<Rat> jiao_detA1_numerator() { return {112, 1024, 1176, 376, 31}; }

bool jiao_detA1_check() {
  const auto profile = radial_profile(herm_surface(second_wedge(jiao_curve())));
  if (!profile) return false;
  const auto num = jiao_detA1_numerator();
  if (profile->size() != num.size()) return false;
  for (std::size_t k = 0; k < num.size(); ++k) {
    if (!((*profile)[k] == RadicalScalar(Rat(num[k] / 64)))) return false;
  }
  return true;
}

}  // namespace grasscurve
