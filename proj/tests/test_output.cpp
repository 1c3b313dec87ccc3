#include <cmath>
#include <string>

#include "doctest.h"
#include "revshare/closed_form.hpp"
#include "revshare/output.hpp"

using namespace revshare;
using namespace revshare::output;

TEST_CASE("number formatting") {
  CHECK(format_number(0.342103645699208775) == "0.342103645699");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(number(NAN).is_null());
  CHECK(number(INFINITY).is_null());
  CHECK(number(2.0 / 3.0).get<double>() == std::strtod("0.666666666667", nullptr));
}

TEST_CASE("flatten") {
  Json j = {{"a", {{"b", 1.5}, {"c", Json::array({1.0, 2.0})}}}, {"s", "x"},
            {"n", nullptr}, {"t", true}, {"i", 3}};
  const auto f = flatten(j);
  REQUIRE(f.size() == 7);
  CHECK(f[0] == std::pair<std::string, std::string>{"a.b", "1.5"});
  CHECK(f[1].first == "a.c.1");
  CHECK(f[2].first == "a.c.2");
  CHECK(f[3].second == "x");
  CHECK(f[4].second == "");
  CHECK(f[5].second == "true");
  CHECK(f[6].second == "3");
}

TEST_CASE("csv and table share the header union") {
  std::vector<Json> rows{Json{{"x", 1.0}, {"y", "a,b"}}, Json{{"x", 2.0}, {"z", 0.25}}};
  const std::string csv = to_csv(rows);
  CHECK(csv == "x,y,z\n1,\"a,b\",\n2,,0.25\n");
  const std::string table = to_table(rows);
  CHECK(table.find("x  y    z") == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);
}

TEST_CASE("outcome json values agree with csv") {
  const auto out = closed_form::solve_symmetric_competitive(10, 0.5, 2);
  const Json body = outcome_body(out);
  CHECK(body["contract"]["shares"][0].get<double>() == number(out.contract.shares[0]).get<double>());
  CHECK(body["degenerate"] == false);
  const auto flat = flatten(body);
  const std::string csv = to_csv({body});
  for (const auto& [k, v] : flat) {
    CHECK(csv.find(k) != std::string::npos);
    if (!v.empty()) CHECK(csv.find(v) != std::string::npos);
  }
  CHECK(to_key_value(body).find("utilities.cp") != std::string::npos);
}

TEST_CASE("svg plot") {
  const std::string svg =
      svg_plot("a < b", "x", {1, 2, 3}, {{"one", {1, 4, 9}}, {"two", {NAN, 2, 3}}});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("a &lt; b") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("one") != std::string::npos);
  // flat data still renders
  CHECK(svg_plot("t", "x", {1}, {{"c", {5}}}).find("nan") == std::string::npos);
}
