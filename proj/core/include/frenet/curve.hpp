#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "frenet/numerics.hpp"
#include "frenet/profile.hpp"

namespace frenet {

/// Uniformly parametrized curve in R^dim. Closed curves store one period
/// [t_0, t_0 + N dt) and are treated cyclically.
struct SampledCurve {
  static constexpr std::size_t kMinSamples = 16;

  std::size_t dim = 0;
  std::vector<double> params;
  Mat points;  // N x dim
  bool closed = false;

  std::size_t size() const noexcept { return params.size(); }
  double spacing() const { return params[1] - params[0]; }
  /// N * dt for closed curves, params.back() - params.front() for open ones.
  double span_length() const;

  /// Throws InvalidArgument / InsufficientResolution when the invariants fail.
  void validate() const;

  /// N samples of f on [0, 2*pi) (closed) or on [a, b] inclusive (open).
  static SampledCurve closed_from(std::size_t n, std::size_t dim, const std::function<Vec(double)>& f,
                                  double period = 2.0 * 3.14159265358979323846);
  static SampledCurve open_from(std::size_t n, std::size_t dim, double a, double b,
                                const std::function<Vec(double)>& f);
};

struct FrenetApparatus {
  double t = 0.0;
  Frame frame;  // columns e_1..e_{n+1}
  double speed = 0.0;
  Vec kappas;
};

/// Gram-Schmidt frame of (a', ..., a^(n)) completed to a positive basis.
/// `derivs` is dim x n with column m-1 holding the m-th derivative. `t` is
/// only used for diagnostics.
Frame frenet_frame_at(const Mat& derivs, double t = 0.0);

struct AnalyzeOptions {
  /// Points per one-sided/centred stencil on open curves (raised to n + 4 if smaller).
  int stencil_width = 9;
  /// Closed curves: fall back to speed-adapted wide stencils where the uniform grid
  /// oversamples the geometry so much that spectral roundoff dominates.
  bool adaptive = true;
};

/// Per-sample Frenet apparatus j_alpha of a sampled curve.
std::vector<FrenetApparatus> analyze_curve(const SampledCurve& curve, const AnalyzeOptions& options = {});

/// Rows = samples, columns = kappa_1..kappa_n.
Mat curvature_table(std::span<const FrenetApparatus> apparatus);

// -- synthesis -------------------------------------------------------------------

using CurvatureFn = std::function<void(double, std::span<double>)>;
using SpeedFn = std::function<double(double)>;

struct FrenetTrajectory {
  std::vector<double> params;
  std::vector<Vec> points;
  std::vector<Frame> frames;
};

/// Integrates the Frenet system along a parameter with speed |a'| = speed(t)
/// and curvatures kappa(t), using `substeps` exponential-midpoint steps per
/// node interval. States are reported at the supplied nodes.
FrenetTrajectory integrate_frenet(const CurvatureFn& kappa, const SpeedFn& speed, const Vec& point, const Frame& frame,
                                  std::span<const double> nodes, int substeps = 1);

struct SynthesisOptions {
  /// Maps arclength sigma in [0, L] onto the profile parameter; default is linear onto [0, 2*pi).
  std::function<double(double)> schedule;
};

/// Unit-speed open curve of length L with curvature s(schedule(sigma)), integrated in `steps` steps.
SampledCurve synthesize_curve(const CurvatureProfile& profile, const Vec& point, const Frame& frame, double length,
                              std::size_t steps = 4096, const SynthesisOptions& options = {});

/// Same, but also returns the moving frames at every node.
FrenetTrajectory synthesize_trajectory(const CurvatureProfile& profile, const Vec& point, const Frame& frame,
                                       double length, std::size_t steps = 4096, const SynthesisOptions& options = {});

/// Checks orthonormality and orientation of a proposed initial frame.
void require_positive_frame(const Frame& frame, double tol = 1e-10);

// -- reparametrization ------------------------------------------------------------

/// Returns c o q where q is given by its values on the curve's own parameter grid
/// (a lift with q(t + P) = q(t) + P for closed curves).
SampledCurve reparametrize(const SampledCurve& curve, std::span<const double> q_values);

}  // namespace frenet
