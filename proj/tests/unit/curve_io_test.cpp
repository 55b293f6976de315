#include <gtest/gtest.h>

#include "grasscurve/curve_io.hpp"
#include "grasscurve/family.hpp"

using namespace grasscurve;

TEST(CurveFile, ExactRoundTrip) {
  const auto c = family_curve(FamilyParam(make_rat(5, 2)));
  const auto back = parse_curve_json(curve_to_json(c));
  ASSERT_TRUE(std::holds_alternative<ExactCurve>(back));
  EXPECT_EQ(std::get<ExactCurve>(back), c);
  EXPECT_EQ(std::get<ExactCurve>(parse_curve_json(curve_to_json(jiao_curve()))), jiao_curve());
}

TEST(CurveFile, FloatRoundTrip) {
  const auto c = family_curve_float(0.3);
  const auto back = parse_curve_json(curve_to_json(c));
  ASSERT_TRUE(std::holds_alternative<FloatCurve>(back));
  EXPECT_EQ(std::get<FloatCurve>(back), c);
}

TEST(CurveFile, MissingDegreesAreZero) {
  const auto c = parse_curve_json(
      R"j({"n":1,"mode":"exact","coeffs":[{"alpha":2,"rows":[[{"re":"1","im":"0"}],[{"re":"0","im":"sqrt(2)"}]]}]})j");
  const auto& e = std::get<ExactCurve>(c);
  EXPECT_EQ(e.m(), 2);
  EXPECT_TRUE(e.entry(1, 0, 0).is_zero());
  EXPECT_EQ(e.entry(2, 1, 0), RadicalComplex(RadicalScalar(), RadicalScalar::radical(2)));
}

TEST(CurveFile, Malformed) {
  const char* bad[] = {
      R"j({"n":2,"mode":"exact","coeffs":[{"alpha":1,"rows":[[{"re":"1","im":"0"}])j",
      R"j({"mode":"float","coeffs":[]})j",
      R"j({"n":1,"mode":"float","coeffs":[{"alpha":0,"rows":[[[1,0]],[[0,0]]]}]})j",
      R"j({"n":1,"mode":"float","coeffs":[{"alpha":1,"rows":[[[1,0]],[[0,0]]]},{"alpha":1,"rows":[[[1,0]],[[0,0]]]}]})j",
      R"j({"n":2,"mode":"float","coeffs":[{"alpha":1,"rows":[[[1,0]],[[0,0]]]}]})j",
      R"j({"n":1,"mode":"exact","coeffs":[{"alpha":1,"rows":[[{"re":"sqrt(","im":"0"}],[{"re":"0","im":"0"}]]}]})j",
      R"j({"n":1,"mode":"other","coeffs":[{"alpha":1,"rows":[[[1,0]],[[0,0]]]}]})j",
  };
  for (const char* text : bad) EXPECT_THROW(parse_curve_json(text), FormatError) << text;
  EXPECT_THROW(read_curve_file("/nonexistent/curve.json"), FormatError);
}
