#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "frenet/curve.hpp"
#include "frenet/helix.hpp"
#include "frenet/numerics.hpp"

namespace frenet {

struct Pose {
  Vec point;
  Frame frame;
};

/// Curvature of the unperturbed bridge as a function of arclength: the constants k,
/// or a bent-helix table blended into k on collars at both ends.
struct BridgeBase {
  Vec k;
  std::optional<CurvatureTable> table;
  double collar = 0.0;
  double length = 0.0;  // bridge length the collars refer to

  void evaluate(double sigma, std::span<double> out) const;
  double deviation() const;  // sup |base - k|
};

/// Smooth curvature perturbation
///   delta kappa_i(sigma) = sum_{w, h} c_{i,(w,h)} bump_w(sigma) harmonic_h(sigma)
/// with bumps supported in [u0, u - u0]; harmonics are 1, cos(f sigma), sin(f sigma).
struct BridgePerturbation {
  double u = 0.0;
  double u0 = 0.0;
  int windows = 0;
  std::vector<double> frequencies;  // nonzero harmonic frequencies
  Mat coefficients;                 // n x modes()

  std::size_t modes() const;
  double mode(std::size_t index, double sigma) const;
  void add_to(double sigma, std::span<double> kappas) const;
  /// Sampled sup-norm of the perturbation over all components.
  double sup_norm(std::size_t samples = 4096) const;
};

struct BridgeOptions {
  double horizon = 5000.0;
  /// Use exactly this bridge length instead of searching candidates.
  std::optional<double> length;
  /// Return tolerance for the comparison helix; defaults to eps.
  std::optional<double> return_delta;
  int windows = 2;
  /// Output samples per unit length, per unit of the largest frequency.
  double samples_per_radian = 16.0;
  /// Arclength nodes for a bridge of length u (must start at 0 and end at u).
  std::function<std::vector<double>(double u)> node_builder;
  int max_iterations = 40;
  double tolerance = 1e-11;
  /// Re-measure curvatures and endpoint jets with analyze_curve (uniform nodes only).
  bool verify = true;
  int max_candidates = 48;
  std::optional<BridgeBase> base;
  /// Starting coefficients for the Newton iteration (ignored unless the shape matches).
  std::optional<Mat> initial_coefficients;
};

struct BridgeResult {
  SampledCurve curve;  // open, params = arclength nodes
  std::vector<Frame> frames;
  double u = 0.0;
  BridgePerturbation perturbation;
  double base_deviation = 0.0;
  double predicted_deviation = 0.0;  // base deviation + perturbation sup-norm
  double max_curvature_deviation = 0.0;  // measured when verified, else predicted
  std::vector<double> derivative_gaps;   // orders 1..n+1, verified only
  double end_point_gap = 0.0;
  double end_frame_gap = 0.0;
  int iterations = 0;
  bool verified = false;
};

/// Joins `from` to `to` with curvatures within eps of k: starts exactly at from,
/// ends at to within the tolerance. Throws BudgetExceeded when no candidate length
/// meets eps.
BridgeResult bridge_to_pose(const Pose& from, const Pose& to, std::span<const double> k, double eps,
                            const BridgeOptions& options = {});

/// Bridge from p (with frame F_p) back to q with the same frame at q, so that the
/// derivatives at both ends agree. Throws GapTooLarge unless |p - q| < admissible_gap.
BridgeResult bridge(const Vec& p, const Vec& q, const Frame& frame_p, std::span<const double> k, double eps,
                    const BridgeOptions& options = {});

/// Linearized admissible endpoint gap: half the budget divided by the worst-case
/// perturbation size per unit of position gap.
double admissible_gap(std::span<const double> k, double eps, const BridgeOptions& options = {});

/// Bent-helix base for odd dimension: the radius doubles from 4/min|k_i| until the
/// tabulated curvature deviation drops below `max_deviation`, then bisects back to
/// the smallest radius that still does.
BridgeBase bent_base(std::span<const double> k, double max_deviation);

}  // namespace frenet
