#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "grasscurve/commands.hpp"
#include "json.hpp"

using namespace grasscurve;
using nlohmann::json;

namespace {

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

}  // namespace

TEST(VerifyFamily, Examples) {
  const auto three = cli::verify_family("3");
  EXPECT_EQ(three.exit_code, cli::kOk);
  const auto rep = json::parse(three.report);
  EXPECT_EQ(rep["invariants"]["S"]["exact"], "3");
  EXPECT_EQ(rep["invariants"]["c"]["exact"], "3");

  const auto two = json::parse(cli::verify_family("2").report);
  EXPECT_EQ(two["invariants"]["S"]["exact"], "2");
  EXPECT_EQ(two["degenerate"]["direct_sum"], json::array({2, 2}));
  EXPECT_TRUE(two["degenerate"]["reverified"].get<bool>());

  EXPECT_EQ(cli::verify_family("7/2").exit_code, cli::kInputError);
  EXPECT_EQ(cli::verify_family("abc").exit_code, cli::kInputError);
}

TEST(Check, VaryingSecondFormIsFlagged) {
  const auto r = cli::check("jiao");
  EXPECT_EQ(r.exit_code, cli::kOk);
  const auto rep = json::parse(r.report);
  const auto notes = rep["notes"].dump();
  EXPECT_NE(notes.find("second form not constant"), std::string::npos);
  EXPECT_TRUE(rep["ramified_points"].empty());
}

TEST(Check, FamilyFileAllPass) {
  const std::string path = temp_path("family_one.json");
  const auto exported = cli::export_curve("family:1");
  ASSERT_EQ(exported.exit_code, cli::kOk);
  std::ofstream(path) << exported.text;
  const auto r = cli::check(path);
  EXPECT_EQ(r.exit_code, cli::kOk);
  for (const auto& c : json::parse(r.report)["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c.dump();

  std::ofstream(path) << exported.text.substr(0, exported.text.size() / 2);
  EXPECT_EQ(cli::check(path).exit_code, cli::kInputError);
  std::remove(path.c_str());
}

TEST(Check, NotConstantlyCurvedIsNegative) {
  const std::string path = temp_path("bent.json");
  std::ofstream(path) << R"j({"n":2,"mode":"float","coeffs":[{"alpha":1,"rows":[[[2,0],[0,0]],[[0,0],[0,0]]]}]})j";
  const auto r = cli::check(path);
  EXPECT_EQ(r.exit_code, cli::kNegative);
  const auto rep = json::parse(r.report);
  EXPECT_FALSE(rep["constantly_curved"].get<bool>());
  std::remove(path.c_str());
}

TEST(Check, ReducibleBuiltinsCarryDegreeNote) {
  for (const char* name : {"veronese-sum-a:4", "veronese-sum-b:4"}) {
    const auto r = cli::check(name);
    EXPECT_EQ(r.exit_code, cli::kOk) << name;
    const auto rep = json::parse(r.report);
    EXPECT_TRUE(rep["reducible"].get<bool>());
    EXPECT_NE(rep["notes"].dump().find("degree label"), std::string::npos) << name;
  }
  EXPECT_EQ(json::parse(cli::check("veronese-sum-a:4").report)["invariants"]["d"], 8);
  EXPECT_EQ(json::parse(cli::check("veronese-sum-b:4").report)["invariants"]["d"], 4);
  EXPECT_EQ(cli::check("veronese-sum-a:0").exit_code, cli::kInputError);
}

TEST(Veronese, Examples) {
  cli::VeroneseArgs a;
  a.n = 5;
  a.osculating = 3;
  const auto r = cli::veronese(a);
  EXPECT_EQ(r.exit_code, cli::kOk);
  EXPECT_EQ(json::parse(r.report)["degree"], 8);

  cli::VeroneseArgs b;
  b.n = 4;
  b.i = 1;
  const auto rep = json::parse(cli::veronese(b).report);
  EXPECT_EQ(rep["K"]["exact"], "2/5");
  EXPECT_EQ(rep["cos_angle"]["exact"], "1/5");

  cli::VeroneseArgs c;
  c.n = 2;
  c.i = 3;
  EXPECT_EQ(cli::veronese(c).exit_code, cli::kInputError);
}

TEST(PlotData, Examples) {
  const auto jiao = cli::plot_data("jiao", 5, 2.0);
  ASSERT_EQ(jiao.exit_code, cli::kOk);
  std::istringstream in(jiao.text);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "r2\tdetA1sq");
  double r2 = -1, v = -1;
  in >> r2 >> v;
  EXPECT_EQ(r2, 0.0);
  EXPECT_DOUBLE_EQ(v, 0.109375);

  const auto rows = json::parse(cli::plot_data("family:1", 7, 3.0).report)["rows"];
  ASSERT_EQ(rows.size(), 7u);
  for (const auto& row : rows) EXPECT_NEAR(row[1].get<double>(), 0.1875, 1e-12);

  EXPECT_EQ(cli::plot_data("jiao", 0, 1.0).exit_code, cli::kInputError);
  EXPECT_EQ(cli::plot_data("/nonexistent.json", 3, 1.0).exit_code, cli::kInputError);
}

TEST(Solve, InfeasibleConstantExitsNegative) {
  Problem p;
  p.c = 5.0;
  p.restarts = 4;
  const auto r = cli::solve(p, "");
  EXPECT_EQ(r.exit_code, cli::kNegative);
  EXPECT_TRUE(json::parse(r.report)["solutions"].empty());
}

TEST(Solve, FixedConstantThreeFindsBothMembers) {
  Problem p;
  p.c = 3.0;
  p.restarts = 200;
  p.seed = 7;
  const std::string path = temp_path("solve_report.json");
  const auto r = cli::solve(p, path);
  EXPECT_EQ(r.exit_code, cli::kOk);
  std::ifstream in(path);
  const auto rep = json::parse(in);
  bool one = false, three = false;
  for (const auto& s : rep["solutions"]) {
    for (const auto& c : s["family_candidates"]) {
      one = one || std::abs(c["t"].get<double>() - 1.0) < 1e-4;
      three = three || std::abs(c["t"].get<double>() - 3.0) < 1e-4;
    }
  }
  EXPECT_TRUE(one);
  EXPECT_TRUE(three);
  std::remove(path.c_str());
}
