#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "frenet/curve.hpp"
#include "frenet/numerics.hpp"

namespace frenet {

/// Constant-curvature curve
///   a(t) = anchor + A_0 t + sum_l A_l cos(b_l t) + B_l sin(b_l t)
/// with the drift A_0 present exactly in odd ambient dimension.
struct HelixSpec {
  std::size_t dim = 0;
  Vec kappas;
  std::vector<double> frequencies;
  std::vector<Vec> a;  // A_l
  std::vector<Vec> b;  // B_l
  std::optional<Vec> drift;
  Vec anchor;

  /// Gram determinant of {A_l, B_l, A_0} normalized by the squared product of norms.
  double basis_gram_ratio() const;
};

/// Unit-speed constant-curvature curve with a(0) = point and Frenet frame `frame` at t = 0.
/// Throws DegenerateSpectrum for a zero last curvature.
HelixSpec helix_from_constants(std::span<const double> kappas, const Vec& point, const Frame& frame);

/// Columns 0..orders of the result are a(t), a'(t), ..., a^(orders)(t).
Mat eval_helix(const HelixSpec& spec, double t, int orders);

/// max_{i <= orders} |a^(i)(u) - a^(i)(0)|
double jet_gap(const HelixSpec& spec, double u, int orders);

SampledCurve sample_helix(const HelixSpec& spec, double t0, double t1, std::size_t n, bool closed);

struct ReturnResult {
  double u = 0.0;
  double gap = 0.0;
};

struct ReturnSearchOptions {
  /// Lower end of the search window; default is half the shortest frequency period.
  std::optional<double> u_min;
};

/// First refined local minimum of the C^orders return gap on (u_min, horizon] with gap < delta.
/// Throws NotFound when the horizon is exhausted.
ReturnResult return_search(const HelixSpec& spec, double delta, int orders, double horizon,
                           const ReturnSearchOptions& options = {});

/// Helix whose drift line is bent into a circle of radius r in the plane of A_0 and A_1:
///   P(t) = C(phi) + R(phi) X(t),  phi = |A_0| t / r,
/// where X is the oscillating part and R(phi) rotates A_0 towards A_1. The radius is
/// rounded up so that one lap of the core circle is a whole number of turns of the
/// fastest oscillation.
struct BentHelix {
  HelixSpec base;
  double radius = 0.0;
  Vec axis;  // unit A_0
  Vec bend;  // unit vector along A_1
  double core_rate = 0.0;  // d phi / dt

  double lap() const;                      // parameter length of one core lap
  Mat eval(double t, int orders) const;    // same layout as eval_helix
};

BentHelix bend_helix(const HelixSpec& spec, double min_radius);

/// Curvatures of a bent helix tabulated against its own arclength over one lap.
struct CurvatureTable {
  double length = 0.0;           // arclength of one lap
  Mat values;                    // M x n, uniform in arclength over [0, length)
  Vec evaluate(double sigma) const;           // periodic local interpolation
  void evaluate(double sigma, std::span<double> out) const;
  double max_deviation(std::span<const double> k) const;
};

CurvatureTable bent_curvatures(const BentHelix& bent, std::size_t samples_per_turn = 48);

}  // namespace frenet
