#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "io.hpp"

using namespace frenet;

namespace {
SampledCurve wobbly() {
  return SampledCurve::closed_from(40, 3, [](double t) { return Vec{{std::cos(t) / 3.0, std::sin(t) * 1e-7, std::exp(std::sin(t))}}; });
}
}  // namespace

TEST_CASE("curve JSON round trip is exact") {
  const auto c = wobbly();
  const auto r = cli::parse_curve(cli::format_curve_json(c), false);
  CHECK(r.dim == 3);
  CHECK(r.closed);
  CHECK(r.params == c.params);
  CHECK((r.points - c.points).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("curve CSV round trip is exact") {
  const auto c = wobbly();
  const std::string csv = cli::format_curve_csv(c);
  CHECK(csv.rfind("t,x1,x2,x3\n", 0) == 0);
  const auto r = cli::parse_curve(csv, true);
  CHECK(r.params == c.params);
  CHECK((r.points - c.points).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("malformed curves are rejected") {
  CHECK_THROWS_AS(cli::parse_curve("{\"dim\": 2", false), cli::ParseError);
  CHECK_THROWS_AS(cli::parse_curve("[1, 2]", false), cli::ParseError);
  CHECK_THROWS_AS(cli::parse_curve("{\"dim\": 2, \"closed\": true, \"params\": [0, 1], \"points\": [[0, 0]]}", false), cli::ParseError);
  CHECK_THROWS_AS(cli::parse_curve("t,y1\n0,1\n", true), cli::ParseError);
  CHECK_THROWS_AS(cli::parse_curve("t,x1\n0,1\n1,abc\n", true), cli::ParseError);
  auto c = wobbly();
  std::swap(c.params[3], c.params[4]);
  CHECK_THROWS_AS(cli::parse_curve(cli::format_curve_json(c), false), cli::ParseError);
}

TEST_CASE("closed curves are rescaled to period 2 pi") {
  auto c = SampledCurve::closed_from(32, 2, [](double t) { return Vec{{std::cos(t), std::sin(t)}}; }, 1.0);
  cli::normalize_period(c);
  CHECK(c.span_length() == doctest::Approx(2.0 * std::numbers::pi));
}

TEST_CASE("profile files") {
  const std::string text = R"({"n": 2, "kind": "fourier", "components": [{"cos": [1.0], "sin": [0.5]}, {"cos": [0.5, 0.4]}]})";
  const auto p = cli::parse_profile(text);
  CHECK(p.n() == 2);
  CHECK(p.component(0, 0.3) == doctest::Approx(1.0 + 0.5 * std::sin(0.3)));
  CHECK(p.component(1, 0.3) == doctest::Approx(0.5 + 0.4 * std::cos(0.3)));
  const auto back = cli::parse_profile(cli::profile_json(p).dump());
  for (double t : {0.0, 1.0, 2.5}) CHECK(back(t) == p(t));

  const std::string table = R"({"n": 1, "kind": "table", "components": [[1.0, 1.5, 2.0, 1.5]]})";
  CHECK(cli::parse_profile(table).component(0, 0.0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(cli::parse_profile(R"({"n": 1, "kind": "spline", "components": [[1]]})"), cli::ParseError);
  CHECK_THROWS_AS(cli::parse_profile(R"({"n": 2, "kind": "table", "components": [[1, 1, 1, 1]]})"), cli::ParseError);
  try {
    cli::parse_profile(R"({"n": 2, "kind": "fourier", "components": [{"cos": [0.1], "sin": [0.5]}, {"cos": [1]}]})");
    FAIL("expected a throw");
  } catch (const cli::ParseError& e) {
    CHECK(std::string(e.what()).find("component 1") != std::string::npos);
  }
}

TEST_CASE("svg projection") {
  const auto c = SampledCurve::closed_from(64, 2, [](double t) { return Vec{{std::cos(t), std::sin(t)}}; });
  cli::PlotOptions o;
  const std::string a = cli::render_svg(c, o);
  CHECK(a.find("<svg") == 0);
  CHECK(a.find("<polygon") != std::string::npos);
  CHECK(a.find(">x1<") != std::string::npos);
  CHECK(a.find(">x2<") != std::string::npos);
  CHECK(a == cli::render_svg(c, o));
}

TEST_CASE("report JSON carries the verdict") {
  VerificationReport r;
  r.passed = true;
  r.eps = 0.1;
  r.max_curvature_deviation = {0.02, 0.03};
  r.self_intersections.push_back({1.0, 2.0, 0.0});
  const auto j = cli::report_json(r);
  CHECK(j["passed"] == true);
  CHECK(j["max_deviation"].get<double>() == 0.03);
  CHECK(j["self_intersections"].size() == 1);
}
