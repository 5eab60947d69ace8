#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <limits>
#include <random>

#include "record.hpp"

using namespace qmvop;
using namespace qmvop::cli;

TEST_CASE("number formatting round-trips") {
  std::mt19937_64 g(7);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 2000; ++i) {
    double v = u(g) * std::pow(10.0, static_cast<int>(g() % 40) - 20);
    OutputRecord r{"weight", {}, {"x"}, {{v}}};
    CHECK(from_csv(to_csv(r)).data[0][0] == v);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.5) == "2.5");
}

TEST_CASE("grid parsing") {
  auto g = parse_grid("-1:1:5");
  REQUIRE(g.size() == 5);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == 1.0);
  CHECK(g[2] == 0.0);
  CHECK(parse_grid("0.3:0.3:1") == std::vector<double>{0.3});
  for (const char* bad : {"", "1:2", "a:1:3", "1:0:3", "0:1:0", "0:1:2.5", "0:1:3:4", "0:inf:3"})
    CHECK_THROWS_AS(parse_grid(bad), argument_error);
}

TEST_CASE("record serialisation") {
  OutputRecord r;
  r.kind = "ldu";
  r.params = {{"two_ell", "1"}, {"q", "0.5"}};
  r.columns = {"x"};
  for (auto& c : matrix_columns(2, 2, "L")) r.columns.push_back(c);
  CHECK(r.columns[1] == "L(0,0)");
  CHECK(r.columns[2] == "L(0,1)");
  r.data = {{-1, 1, 0, 1.0 / 3, 1}, {0.5, 1, 0, -2.0 / 7, 1}};
  CHECK(from_csv(to_csv(r)) == r);
  CHECK(from_json(nlohmann::json::parse(to_json(r).dump())) == r);
  std::string csv = to_csv(r);
  CHECK(csv.rfind("# kind=ldu q=0.5 two_ell=1\n", 0) == 0);
  r.data[0][1] = std::numeric_limits<double>::infinity();
  CHECK(from_json(nlohmann::json::parse(to_json(r).dump())) == r);
}

TEST_CASE("config parsing") {
  using nlohmann::json;
  SuiteConfig d = config_from_json(json::object());
  CHECK(d.two_ells == default_suite_config().two_ells);
  SuiteConfig c = config_from_json(json::parse(R"({"qs":[0.4],"tolerance":1e-30,"families":["ldu","e"]})"));
  CHECK(c.qs == std::vector<double>{0.4});
  for (const auto& [k, v] : c.tolerances) CHECK(v == 1e-30);
  CHECK(c.families.size() == 2);
  SuiteConfig t = config_from_json(json::parse(R"({"tolerances":{"ldu.inverse":1e-3}})"));
  CHECK(t.tolerances.at("ldu.inverse") == 1e-3);
  CHECK(t.tolerances.at("ldu.beta") == default_suite_config().tolerances.at("ldu.beta"));
  for (const char* bad : {R"({"nope":1})", R"({"qs":[1.5]})", R"({"two_ells":[-1]})", R"({"families":["zz"]})",
                          R"({"tolerances":{"no.such":1}})", R"({"tolerance":-1})", R"({"qs":"x"})", "[1,2]"})
    CHECK_THROWS_AS(config_from_json(json::parse(bad)), argument_error);
}

TEST_CASE("report serialisation") {
  SuiteConfig c = default_suite_config();
  CheckReport r{"ldu.inverse", "ldu", {{"q", 0.5}}, 1e-16, 1e-10, true, 0.25, ""};
  auto j = reports_to_json(c, {r}, false);
  CHECK(j["kind"] == "report");
  CHECK(j["params"]["pass"] == true);
  CHECK(j["params"]["seed"] == c.seed);
  CHECK_FALSE(j["data"][0].contains("runtime"));
  CHECK(reports_to_json(c, {r}, true)["data"][0]["runtime"] == 0.25);
}
