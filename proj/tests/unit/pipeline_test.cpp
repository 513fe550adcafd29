#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "frenet/bridge.hpp"
#include "frenet/error.hpp"
#include "frenet/pipeline.hpp"

using namespace frenet;

namespace {
SampledCurve unit_circle(std::size_t n = 256) {
  return SampledCurve::closed_from(n, 2, [](double t) { return Vec{{std::cos(t), std::sin(t)}}; });
}
CurvatureProfile r3_profile() { return CurvatureProfile::fourier({{{1.0}, {0.0, 0.5}}, {{0.5, 0.4}, {0.0, 0.0}}}); }
}  // namespace

TEST_CASE("verify a circle against constant profiles") {
  const double one[] = {1.0};
  const auto ok = verify(unit_circle(), CurvatureProfile::constant(one), 0.01);
  CHECK(ok.passed);
  CHECK(ok.max_deviation() < 1e-6);
  CHECK(ok.closure_gaps.size() == 3);
  CHECK(ok.min_speed == doctest::Approx(1.0));

  const double off[] = {1.5};
  const auto bad = verify(unit_circle(), CurvatureProfile::constant(off), 0.1);
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_deviation() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("plan bookkeeping") {
  const auto s = r3_profile();
  const auto plan = choose_plan(s, 0.1);
  CHECK(plan.u_half > plan.plateau_half - 1e-15);
  CHECK(plan.bridge_half <= plan.plateau_half);
  CHECK(plan.budget.sum() < 0.1);
  CHECK(plan.modification_deviation <= plan.budget.modify);
  // the modified profile equals k on the bridge arc
  for (double x : {-0.5, 0.0, 0.5}) {
    const Vec m = plan.modified(s, plan.t0 + x * plan.bridge_half);
    CHECK((m - plan.k).norm() < 1e-15);
  }
  CHECK(plan.k.size() == 2);
  CHECK(std::abs(plan.k(1)) >= 0.1 / 4.0 - 1e-15);
}

TEST_CASE("gamma has the requested length and a small frame gap") {
  const auto s = r3_profile();
  auto plan = choose_plan(s, 0.1);
  plan.delta = 0.02;
  const auto g = concentrate(plan, s, 2048);
  CHECK(g.gamma.params.back() == doctest::Approx(0.02));
  const auto arc = chord_arclength(g.gamma);
  CHECK(arc.back() == doctest::Approx(0.02).epsilon(1e-6));
  CHECK(g.frame_gap < 0.03);
  CHECK(g.frame_gap > 0.0);
}

TEST_CASE("planar approximation passes its own verification") {
  const auto s = CurvatureProfile::fourier({{{2.0}, {0.0, 1.0}}});
  const Approximation r = approximate(s, 0.1);
  CHECK(r.passed);
  CHECK(r.curve.closed);
  double total = 0.0;
  for (const auto& st : r.stages) total += st.deviation;
  CHECK(total < 0.1);
  const auto v = verify(r.curve, s, 0.1);
  CHECK(v.passed);
  CHECK(v.max_deviation() == doctest::Approx(r.report.max_deviation()));
}

TEST_CASE("approximate rejects a non-positive eps") {
  const auto s = CurvatureProfile::fourier({{{2.0}, {0.0, 1.0}}});
  CHECK_THROWS_AS(approximate(s, 0.0), Error);
}

TEST_CASE("planar bridge closes a small gap") {
  const double k[] = {1.0};
  const Vec p = Vec::Zero(2);
  const Vec q{{1e-3, 0.0}};
  BridgeOptions o;
  o.verify = true;
  const auto b = bridge(p, q, Frame::Identity(2, 2), k, 0.05, o);
  CHECK(b.verified);
  CHECK(b.max_curvature_deviation < 0.05);
  CHECK(b.end_point_gap < 1e-9);
  CHECK(admissible_gap(k, 0.05) > 1e-3);
  const Vec far{{10.0, 0.0}};
  CHECK_THROWS_AS(bridge(p, far, Frame::Identity(2, 2), k, 0.05, o), Error);
}

TEST_CASE("bent base stays inside its deviation") {
  const double k[] = {1.0, 0.9};
  const BridgeBase b = bent_base(k, 0.03);
  REQUIRE(b.table.has_value());
  CHECK(b.deviation() < 0.03);
  CHECK(b.table->max_deviation(k) < 0.03);
}

TEST_CASE("self intersections of a figure eight") {
  // (sin t, sin 2t) crosses itself once at the origin
  const auto c = SampledCurve::closed_from(512, 2, [](double t) { return Vec{{std::sin(t), std::sin(2.0 * t)}}; });
  IntersectionOptions o;
  o.tolerance = 1e-3;
  const auto hits = self_intersections(c, o);
  REQUIRE(hits.size() == 1);
  CHECK(std::abs(std::sin(hits[0].t1)) < 1e-2);
  CHECK(std::abs(std::remainder(hits[0].t2 - hits[0].t1, 2.0 * std::numbers::pi)) == doctest::Approx(std::numbers::pi).epsilon(1e-2));
  CHECK(self_intersections(unit_circle(), o).empty());
}

TEST_CASE("embedding pass") {
  // planar input is out of scope
  CHECK_THROWS_AS(perturb_to_embedding(unit_circle(), 0.1, 1), Error);
  const auto flagged = perturb_to_embedding(unit_circle(), 0.1, 1, false);
  CHECK(flagged.planar);

  // limacon with an inner loop, lifted by a height that vanishes at both passes through the origin
  const auto c = SampledCurve::closed_from(2048, 3, [](double t) {
    const double r = 1.0 + 2.0 * std::cos(t);
    return Vec{{r * std::cos(t), r * std::sin(t), 0.3 * (std::cos(t) + 0.5)}};
  });
  REQUIRE(self_intersections(c).size() == 1);
  CHECK_THROWS_AS(perturb_to_embedding(c, 0.0, 1), Error);
  const auto e = perturb_to_embedding(c, 0.05, 11);
  CHECK(e.draws >= 1);
  CHECK(e.draws <= 32);
  CHECK(e.remaining.empty());
  CHECK(self_intersections(e.curve).empty());
  CHECK(e.curvature_change < 0.05);
  const auto again = perturb_to_embedding(c, 0.05, 11);
  CHECK((again.curve.points - e.curve.points).norm() == 0.0);
}
