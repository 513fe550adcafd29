#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frenet/bridge.hpp"
#include "frenet/curve.hpp"
#include "frenet/profile.hpp"

namespace frenet {

/// Split of the total tolerance between profile modification, bridge and stitch.
struct EpsBudget {
  double modify = 0.25;
  double bridge = 0.5;
  double stitch = 0.25;

  double sum() const { return modify + bridge + stitch; }
};

/// Bookkeeping of the construction. All parameters are in [0, 2*pi) and arcs are
/// centred at t0:
///   U   = |t - t0| < u_half          (|s - k| <= eps_modify there)
///   U'  = |t - t0| <= plateau_half   (the modified profile equals k)
///   U'' = |t - t0| <= bridge_half    (parameters carried by the bridge)
/// gamma covers the rest, starting at tau = t0 + bridge_half.
struct ApproximationPlan {
  double eps = 0.0;
  EpsBudget budget;  // absolute tolerances (fractions already applied)
  double t0 = 0.0;
  Vec k;
  double u_half = 0.0;
  double plateau_half = 0.0;
  double bridge_half = 0.0;
  double tau = 0.0;
  double delta = 0.0;  // arclength of gamma
  double modification_deviation = 0.0;  // sup_t |s~(t) - s(t)|

  double gamma_length() const;   // parameter length of S^1 - U''
  /// The modified profile s~ = s + phi (k - s), phi a C-infinity plateau on U'.
  Vec modified(const CurvatureProfile& s, double t) const;
};

/// Fractions of eps; choose_plan converts them to absolute tolerances.
ApproximationPlan choose_plan(const CurvatureProfile& s, double eps, const EpsBudget& fractions = {});

struct Concentration {
  SampledCurve gamma;  // open, unit speed, params = arclength in [0, delta]
  std::vector<Frame> frames;
  /// Map from gamma's arclength to the original parameter (onto S^1 - U'').
  std::function<double(double)> h;
  /// max-norm distance between the Frenet frames at the two ends of gamma.
  double frame_gap = 0.0;
};

/// Unit-speed gamma of length plan.delta realizing the modified profile on S^1 - U''.
Concentration concentrate(const ApproximationPlan& plan, const CurvatureProfile& s, std::size_t steps = 4096);

struct SelfIntersection {
  double t1 = 0.0;
  double t2 = 0.0;
  double distance = 0.0;
};

struct VerificationReport {
  std::vector<double> max_curvature_deviation;  // per component
  std::vector<double> closure_gaps;             // orders 0..n+1 across the seam
  double frame_orthonormality = 0.0;
  double min_speed = 0.0;
  std::vector<SelfIntersection> self_intersections;
  double eps = 0.0;
  bool passed = false;

  double max_deviation() const;
};

/// Recomputes j_c from the samples alone and compares with s.
VerificationReport verify(const SampledCurve& c, const CurvatureProfile& s, double eps);

struct StageReport {
  std::string name;
  double deviation = 0.0;
  double budget = 0.0;
};

struct ApproximateOptions {
  EpsBudget budget;                                  // fractions of eps
  std::vector<double> deltas = {0.5, 0.25, 1.0, 0.125, 2.0, 0.0625, 0.03125, 4.0};
  double horizon = 4000.0;
  int max_bridge_candidates = 256;
  int max_retries = 8;
  /// Output samples per turn of the fastest helix frequency at the peak bridge speed.
  double samples_per_turn = 16.0;
  std::size_t min_samples = 4096;
  std::size_t max_samples = std::size_t{1} << 21;
  bool detect_self_intersections = true;
};

struct Approximation {
  SampledCurve curve;
  VerificationReport report;
  ApproximationPlan plan;
  std::vector<StageReport> stages;
  double bridge_length = 0.0;
  double construction_closure_gap = 0.0;  // |beta(u) - gamma(0)| before sampling closes the loop
  double construction_frame_gap = 0.0;
  double mollifier_width = 0.0;
  double speed_ratio = 0.0;               // bridge speed / gamma speed
  int attempts = 0;
  /// Report passed, the loop closed and the stage deviations sum below eps. A stage
  /// over its own share only shows in the log.
  bool passed = false;
  std::vector<std::string> log;
};

/// The full construction. Throws BudgetExceeded (with the last attempt's
/// diagnostics) when every retry misses its budget.
Approximation approximate(const CurvatureProfile& s, double eps, const ApproximateOptions& options = {});

/// Same construction without the throw: returns the last attempt (passed = false on failure).
Approximation approximate_best_effort(const CurvatureProfile& s, double eps, const ApproximateOptions& options = {});

// --- embedding -------------------------------------------------------------

struct IntersectionOptions {
  double tolerance = 1e-6;
  /// Pairs closer than this along the curve are neighbours, not crossings.
  double min_arclength_separation = 0.0;  // default 100 * tolerance
};

/// Segment pairs closer than the tolerance, found with a sweep along the first axis.
std::vector<SelfIntersection> self_intersections(const SampledCurve& c, const IntersectionOptions& options = {});

struct EmbeddingResult {
  SampledCurve curve;
  int draws = 0;
  double curvature_change = 0.0;  // sup |j_out - j_in|
  bool planar = false;            // dim 2: returned unchanged and flagged
  std::vector<SelfIntersection> remaining;
};

/// Removes self-intersections by seeded random smooth bumps localized along
/// arclength near each collision, keeping the curvature change below eps_slack.
/// Throws NotApplicable for dim 2 when `throw_planar`, RetriesExhausted after 32 draws.
EmbeddingResult perturb_to_embedding(const SampledCurve& c, double eps_slack, std::uint64_t seed,
                                     bool throw_planar = true);

/// Cumulative chord length of the closed sample polygon; entry j is the length up to sample j.
std::vector<double> chord_arclength(const SampledCurve& c);

}  // namespace frenet
