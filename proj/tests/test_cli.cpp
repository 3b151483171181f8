#include <catch2/catch_amalgamated.hpp>

#include "hybridlink/commands.hpp"
#include "hybridlink/csv.hpp"
#include "hybridlink/scenario.hpp"

#include <cstdio>
#include <fstream>

using namespace hybridlink;

namespace {

std::string write_temp(const std::string& content) {
  const std::string path = "scenario_test_tmp.json";
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("scenario parsing") {
  {
    const auto path = write_temp(R"({"version": 1, "alpha": 0.6})");
    const Scenario s = Scenario::from_file(path);
    REQUIRE(s.number("alpha", 0.0) == 0.6);
    std::remove(path.c_str());
  }
  {
    const auto path = write_temp(R"({"alpha": 0.6})");
    REQUIRE_THROWS_WITH(Scenario::from_file(path),
                        Catch::Matchers::ContainsSubstring("version"));
    std::remove(path.c_str());
  }
  {
    const auto path = write_temp(R"({"version": 2})");
    REQUIRE_THROWS_WITH(Scenario::from_file(path),
                        Catch::Matchers::ContainsSubstring("version"));
    std::remove(path.c_str());
  }
  {
    const auto path = write_temp(R"({"version": 1, "alpha": )");
    REQUIRE_THROWS_WITH(Scenario::from_file(path),
                        Catch::Matchers::ContainsSubstring("parse error"));
    std::remove(path.c_str());
  }
}

TEST_CASE("scenario overrides and key validation") {
  Scenario s;
  s.apply_override("alpha=0.7");
  s.apply_override("eta_d_list=0.97,0.95");
  REQUIRE(s.number("alpha", 0.0) == 0.7);
  REQUIRE(s.list("eta_d_list", {}) == std::vector<double>{0.97, 0.95});
  REQUIRE_THROWS_AS(s.apply_override("no_equals_sign"), std::invalid_argument);

  Scenario bad;
  bad.apply_override("not_a_key=1");
  REQUIRE_THROWS_WITH(cmd_point(bad), Catch::Matchers::ContainsSubstring("unknown scenario key"));

  Scenario grid;
  grid.apply_override(R"(T_grid={"start":0.1,"stop":1.0,"bogus":3})");
  REQUIRE_THROWS_WITH(cmd_fidelity(grid), Catch::Matchers::ContainsSubstring("unknown grid key"));
}

TEST_CASE("grid triples") {
  const GridSpec g{0.0, 1.0, 5};
  const auto pts = g.points();
  REQUIRE(pts.size() == 5);
  REQUIRE(pts.front() == 0.0);
  REQUIRE(pts.back() == 1.0);
  REQUIRE(std::abs(pts[2] - 0.5) < 1e-15);
  REQUIRE(GridSpec{2.0, 9.0, 1}.points() == std::vector<double>{2.0});
}

TEST_CASE("number formatting is fixed at nine significant digits") {
  REQUIRE(format_number(0.1) == "1.00000000e-01");
  REQUIRE(format_number(1.32723449e-4) == "1.32723449e-04");
  REQUIRE(format_number(-2.0) == "-2.00000000e+00");
}

TEST_CASE("point command matches the library closed forms") {
  Scenario s;
  s.apply_override("alpha=0.6");
  s.apply_override("L_km=100");
  const ResultTable t = cmd_point(s);
  REQUIRE(t.rows.size() == 1);
  const auto& row = t.rows[0];
  REQUIRE(t.headers[3] == "effective_logneg");
  REQUIRE(std::abs(row[3] - 1.32723449e-4) < 1e-9);
  ProtocolParams p;
  p.alpha = 0.6;
  p.L = 100.0;
  REQUIRE(row[0] == analytic_final_state(p).h);
  REQUIRE(row[6] == key_rate(p).r);
}

TEST_CASE("distance sweep is monotone per column") {
  Scenario s;
  s.apply_override(R"(distance_grid={"start":10,"stop":200,"count":20})");
  const ResultTable t = cmd_distance_sweep(s);
  REQUIRE(t.rows.size() == 20);
  for (size_t col = 1; col < t.headers.size(); ++col)
    for (size_t i = 1; i < t.rows.size(); ++i)
      REQUIRE(t.rows[i][col] < t.rows[i - 1][col]);
}

TEST_CASE("csv output embeds provenance and is deterministic") {
  Scenario s;
  s.apply_override(R"(distance_grid={"start":0,"stop":60,"count":4})");
  s.apply_override("alpha=0.55");
  const std::string csv = cmd_fig6(s).to_csv();
  REQUIRE(csv.find("# hybridlink ") == 0);
  REQUIRE(csv.find("# alpha = 5.50000000e-01") != std::string::npos);
  REQUIRE(csv.find("# eta_d_list = ") != std::string::npos);
  REQUIRE(csv == cmd_fig6(s).to_csv());
}

TEST_CASE("figure commands produce full tables") {
  Scenario f2;
  f2.apply_override(R"(alpha_grid={"start":0.1,"stop":1.0,"count":10})");
  const ResultTable t2 = cmd_fig2(f2);
  REQUIRE(t2.rows.size() == 10);
  REQUIRE(t2.headers.size() == 6);

  Scenario f5;
  f5.apply_override(R"(alpha_grid={"start":0.3,"stop":0.7,"count":5})");
  f5.apply_override("r_targets=1e-06");
  const ResultTable t5 = cmd_fig5(f5);
  REQUIRE(t5.rows.size() == 5);
  for (const auto& row : t5.rows) REQUIRE(row[1] > 0.0);

  Scenario fa;
  fa.apply_override(R"(alpha_grid={"start":0.1,"stop":1.0,"count":10})");
  fa.apply_override("distances_km=100");
  const ResultTable ta = cmd_alpha_sweep(fa);
  REQUIRE(ta.rows.size() == 10);

  Scenario ff;
  ff.apply_override(R"(T_grid={"start":0.1,"stop":1.0,"count":10})");
  const ResultTable tf = cmd_fidelity(ff);
  REQUIRE(tf.rows.size() == 10);
  REQUIRE(std::abs(tf.rows.back()[1] - 1.0) < 1e-12);
}
