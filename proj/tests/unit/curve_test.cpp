#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "frenet/curve.hpp"
#include "frenet/error.hpp"
#include "frenet/profile.hpp"
#include "oracles.hpp"

using namespace frenet;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("sampled curve invariants") {
  auto c = SampledCurve::closed_from(32, 2, [](double t) { return Vec{{std::cos(t), std::sin(t)}}; });
  CHECK(c.span_length() == doctest::Approx(kTwoPi));
  CHECK_NOTHROW(c.validate());
  c.params[3] = c.params[2];
  CHECK_THROWS_AS(c.validate(), Error);
  auto tiny = SampledCurve::closed_from(8, 2, [](double t) { return Vec{{std::cos(t), std::sin(t)}}; });
  CHECK_THROWS_AS(tiny.validate(), Error);
}

TEST_CASE("frame of a helix equals the classical TNB frame") {
  const oracle::ClassicalHelix h{1.0, 0.5};
  const double t = 0.7;
  const double a = h.a, b = h.b;
  Mat d(3, 2);
  d.col(0) = Vec(Eigen::Vector3d(-a * std::sin(t), a * std::cos(t), b));
  d.col(1) = Vec(Eigen::Vector3d(-a * std::cos(t), -a * std::sin(t), 0.0));
  const Frame f = frenet_frame_at(d, t);
  CHECK((f.col(0) - Vec(h.tangent(t))).norm() < 1e-14);
  CHECK((f.col(1) - Vec(h.normal(t))).norm() < 1e-14);
  CHECK((f.col(2) - Vec(h.binormal(t))).norm() < 1e-14);
}

TEST_CASE("dependent derivatives raise DegenerateFrame with the parameter") {
  Mat d(3, 2);
  d << 1.0, 2.0, 0.0, 0.0, 0.0, 0.0;
  try {
    frenet_frame_at(d, 1.25);
    FAIL("expected a throw");
  } catch (const DegenerateFrameError& e) {
    CHECK(e.parameter() == 1.25);
    CHECK(std::string(e.what()).find("t = 1.25") != std::string::npos);
  }
}

TEST_CASE("analyze a closed ellipse against the closed-form curvature") {
  const auto c = SampledCurve::closed_from(256, 2, [](double t) { return Vec{{3.0 * std::cos(t), std::sin(t)}}; });
  const auto app = analyze_curve(c);
  for (std::size_t j = 0; j < app.size(); j += 17) {
    CHECK(app[j].kappas(0) == doctest::Approx(oracle::ellipse_curvature(3.0, 1.0, c.params[j])).epsilon(1e-9));
    const double s = std::sin(c.params[j]), co = std::cos(c.params[j]);
    CHECK(app[j].speed == doctest::Approx(std::sqrt(9.0 * s * s + co * co)).epsilon(1e-11));
  }
}

TEST_CASE("analyze an open space curve against the cross-product formulas") {
  // (t, t^2, t^3) on [0.2, 1]
  const auto c = SampledCurve::open_from(801, 3, 0.2, 1.0, [](double t) { return Vec{{t, t * t, t * t * t}}; });
  const Mat k = curvature_table(analyze_curve(c));
  for (Eigen::Index j = 0; j < k.rows(); j += 100) {
    const double t = c.params[static_cast<std::size_t>(j)];
    const Eigen::Vector3d d1(1.0, 2 * t, 3 * t * t), d2(0.0, 2.0, 6 * t), d3(0.0, 0.0, 6.0);
    CHECK(k(j, 0) == doctest::Approx(oracle::space_curvature(d1, d2)).epsilon(1e-6));
    CHECK(k(j, 1) == doctest::Approx(oracle::space_torsion(d1, d2, d3)).epsilon(1e-5));
  }
}

TEST_CASE("integrating constant curvatures closes a circle") {
  std::vector<double> nodes(401);
  for (std::size_t j = 0; j < nodes.size(); ++j) nodes[j] = kTwoPi * static_cast<double>(j) / 400.0;
  const auto tr = integrate_frenet([](double, std::span<double> out) { out[0] = 1.0; }, [](double) { return 1.0; }, Vec::Zero(2),
                                   Frame::Identity(2, 2), nodes);
  CHECK(tr.points.back().norm() < 1e-12);
  CHECK(tr.points[200](1) == doctest::Approx(2.0));
}

TEST_CASE("synthesized curve reproduces its profile") {
  const auto s = CurvatureProfile::fourier({{{1.0}, {0.0, 0.3}}, {{0.5, 0.2}, {0.0}}});
  const double length = 10.0;
  const SampledCurve c = synthesize_curve(s, Vec::Zero(3), Frame::Identity(3, 3), length, 4000);
  CHECK(c.size() == 4001);
  const Mat k = curvature_table(analyze_curve(c));
  for (Eigen::Index j = 400; j < 3600; j += 400) {
    const double t = kTwoPi * c.params[static_cast<std::size_t>(j)] / length;
    CHECK(k(j, 0) == doctest::Approx(s.component(0, t)).epsilon(1e-5));
    CHECK(k(j, 1) == doctest::Approx(s.component(1, t)).epsilon(1e-5));
  }
}

TEST_CASE("reparametrization keeps the trace and shifts the curvature") {
  const std::size_t n = 512;
  const auto c = SampledCurve::closed_from(n, 2, [](double t) { return Vec{{2.0 * std::cos(t), std::sin(t)}}; });
  std::vector<double> q(n);
  for (std::size_t j = 0; j < n; ++j) q[j] = c.params[j] + 0.3 * std::sin(c.params[j]);
  const auto r = reparametrize(c, q);
  for (std::size_t j = 0; j < n; j += 50) {
    CHECK(r.points(static_cast<Eigen::Index>(j), 0) == doctest::Approx(2.0 * std::cos(q[j])).epsilon(1e-12));
  }
  std::vector<double> bad(n);
  for (std::size_t j = 0; j < n; ++j) bad[j] = c.params[j] + 1.5 * std::sin(c.params[j]);
  CHECK_THROWS_AS(reparametrize(c, bad), Error);
}

TEST_CASE("oversampled slow stretches keep their accuracy") {
  // strongly non-uniform speed: the local path takes over where spectral roundoff dominates
  const std::size_t n = 8192;
  auto q = [](double t) { return t - 0.95 * std::sin(t); };
  const auto c = SampledCurve::closed_from(n, 3, [&](double t) {
    const double s = q(t);
    return Vec{{std::cos(s), std::sin(s), 0.3 * std::sin(2.0 * s)}};
  });
  const Mat k = curvature_table(analyze_curve(c));
  AnalyzeOptions plain;
  plain.adaptive = false;
  const Mat ks = curvature_table(analyze_curve(c, plain));
  // reference: same trace sampled uniformly in its own parameter
  const auto u = SampledCurve::closed_from(n, 3, [](double s) { return Vec{{std::cos(s), std::sin(s), 0.3 * std::sin(2.0 * s)}}; });
  const auto ku = curvature_table(analyze_curve(u, plain));
  const TrigInterpolant k1(std::vector<double>(ku.col(0).data(), ku.col(0).data() + ku.rows()));
  double adaptive_err = 0.0, spectral_err = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double ref = k1(q(c.params[j]));
    adaptive_err = std::max(adaptive_err, std::abs(k(static_cast<Eigen::Index>(j), 0) - ref));
    spectral_err = std::max(spectral_err, std::abs(ks(static_cast<Eigen::Index>(j), 0) - ref));
  }
  CHECK(adaptive_err < 1e-6);
  CHECK(adaptive_err <= spectral_err);
}

TEST_CASE("profiles evaluate and validate") {
  const auto f = CurvatureProfile::fourier({{{1.0, 0.5}, {0.0, 0.25}}, {{-0.2}, {0.0}}});
  CHECK(f.n() == 2);
  CHECK(f.component(0, 0.3) == doctest::Approx(1.0 + 0.5 * std::cos(0.3) + 0.25 * std::sin(0.3)));
  CHECK(f(1.0)(1) == doctest::Approx(-0.2));
  CHECK_NOTHROW(f.validate());

  try {
    CurvatureProfile::fourier({{{0.2, 0.5}, {0.0}}, {{1.0}, {0.0}}});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveCurvature);
    CHECK(std::string(e.what()).find("component 1") != std::string::npos);
  }

  std::vector<double> tab(64);
  for (std::size_t j = 0; j < tab.size(); ++j) tab[j] = 2.0 + std::sin(kTwoPi * static_cast<double>(j) / 64.0);
  const auto t = CurvatureProfile::table({tab});
  CHECK(t.component(0, 0.77) == doctest::Approx(2.0 + std::sin(0.77)).epsilon(1e-12));

  const double c[] = {1.0, 2.0};
  CHECK(CurvatureProfile::constant(c)(3.0)(1) == 2.0);
}
