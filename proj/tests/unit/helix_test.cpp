#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "frenet/curve.hpp"
#include "frenet/error.hpp"
#include "frenet/helix.hpp"
#include "oracles.hpp"

using namespace frenet;

TEST_CASE("R3 helix matches the classical helix") {
  const oracle::ClassicalHelix ref{1.0, 0.5};
  Frame f(3, 3);
  f << ref.tangent(0), ref.normal(0), ref.binormal(0);
  const double k[] = {ref.curvature(), ref.torsion()};
  const auto h = helix_from_constants(k, ref.at(0), f);
  REQUIRE(h.drift.has_value());
  for (double s : {0.0, 1.0, 5.0, 20.0}) CHECK((eval_helix(h, s, 0).col(0) - Vec(ref.at(s / ref.c()))).norm() < 1e-12);
  CHECK(h.frequencies[0] == doctest::Approx(1.0 / ref.c()));
}

TEST_CASE("helix derivatives follow the Frenet frame") {
  const double k[] = {1.0, 0.7, 0.4};
  const auto h = helix_from_constants(k, Vec::Zero(4), Frame::Identity(4, 4));
  const Mat j = eval_helix(h, 0.0, 2);
  CHECK((j.col(1) - Vec::Unit(4, 0)).norm() < 1e-13);
  CHECK((j.col(2) - Vec::Unit(4, 1)).norm() < 1e-13);
  // unit speed everywhere
  for (double t : {1.0, 3.3, 17.0}) CHECK(eval_helix(h, t, 1).col(1).norm() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(jet_gap(h, 0.0, 4) < 1e-14);
  CHECK(h.basis_gram_ratio() > 0.0);
  CHECK_FALSE(h.drift.has_value());
}

TEST_CASE("a planar helix is a circle of radius 1/k") {
  const double k[] = {2.0};
  const auto h = helix_from_constants(k, Vec::Zero(2), Frame::Identity(2, 2));
  const SampledCurve c = sample_helix(h, 0.0, std::numbers::pi, 64, true);
  const Eigen::RowVectorXd centre = c.points.colwise().mean();
  for (Eigen::Index j = 0; j < 64; ++j) CHECK((c.points.row(j) - centre).norm() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("R4 helix projects onto its first invariant plane as a circle") {
  const double k[] = {1.0, 1.0, 1.0};
  const auto h = helix_from_constants(k, Vec::Zero(4), Frame::Identity(4, 4));
  const Vec a = h.a[0].normalized();
  const Vec b = (h.b[0] - h.b[0].dot(a) * a).normalized();
  for (double t : {0.0, 0.9, 4.2, 11.0}) {
    const Vec p = eval_helix(h, t, 0).col(0) - h.anchor;
    // the other plane is orthogonal, so only the first frequency survives
    CHECK(std::hypot(p.dot(a), p.dot(b)) == doctest::Approx(h.a[0].norm()).epsilon(1e-12));
  }
}

TEST_CASE("zero last curvature is not a twisted helix") {
  const double k[] = {1.0, 0.0};
  CHECK_THROWS_AS(helix_from_constants(k, Vec::Zero(3), Frame::Identity(3, 3)), Error);
}

TEST_CASE("return search finds a close return") {
  const double k[] = {1.0, 1.0, 1.0};
  const auto h = helix_from_constants(k, Vec::Zero(4), Frame::Identity(4, 4));
  const auto r = return_search(h, 1e-2, 4, 5000.0);
  CHECK(r.gap < 1e-2);
  CHECK(jet_gap(h, r.u, 4) == doctest::Approx(r.gap).epsilon(1e-9));
  CHECK_THROWS_AS(return_search(h, 1e-9, 4, 50.0), Error);
}

TEST_CASE("bent helix closes after one lap and its curvature deviation falls with the radius") {
  const double k[] = {1.0, 0.9};
  const auto h = helix_from_constants(k, Vec::Zero(3), Frame::Identity(3, 3));
  double previous = HUGE_VAL;
  for (double r : {20.0, 40.0, 80.0}) {
    const BentHelix b = bend_helix(h, r);
    CHECK(b.radius >= r);
    const Mat p0 = b.eval(0.0, 1);
    const Mat p1 = b.eval(b.lap(), 1);
    CHECK((p0 - p1).norm() < 1e-9);
    const CurvatureTable t = bent_curvatures(b);
    const double dev = t.max_deviation(k);
    CHECK(dev < previous);
    previous = dev;
  }
}
