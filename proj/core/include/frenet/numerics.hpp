#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace frenet {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Orthonormal frame stored column-wise: column i is e_{i+1}.
using Frame = Eigen::MatrixXd;

/// Tridiagonal skew-symmetric coefficient matrix of the Frenet system.
///
/// For curvatures (k_1, ..., k_n) the (n+1)x(n+1) matrix has K(i, i+1) = k_{i+1}
/// and K(i+1, i) = -k_{i+1}. Rows of a frame satisfy e' = |a'| K e.
class SkewFrenetMatrix {
 public:
  /// Validates k_i > 0 for all but the last curvature.
  static SkewFrenetMatrix from_curvatures(std::span<const double> kappas);
  /// Skips the positivity check; used by integrators on already validated data.
  static SkewFrenetMatrix unchecked(std::span<const double> kappas);

  std::size_t n() const noexcept { return kappas_.size(); }
  std::size_t dim() const noexcept { return kappas_.size() + 1; }
  const std::vector<double>& kappas() const noexcept { return kappas_; }
  const Mat& matrix() const noexcept { return matrix_; }

 private:
  explicit SkewFrenetMatrix(std::vector<double> kappas);

  std::vector<double> kappas_;
  Mat matrix_;
};

SkewFrenetMatrix build_frenet_matrix(std::span<const double> kappas);

struct InvariantPlane {
  double frequency = 0.0;  // b_l > 0
  Vec u;                   // K u = b w
  Vec w;                   // K w = -b u
};

/// Real invariant-plane decomposition of a Frenet matrix, obtained from the
/// symmetric positive semidefinite matrix -K^2.
struct EigenStructure {
  std::vector<InvariantPlane> planes;  // sorted by decreasing frequency
  std::optional<Vec> kernel_axis;

  std::vector<double> frequencies() const;
  /// Rebuilds K = sum_l b_l (w u^T - u w^T).
  Mat reassemble(std::size_t dim) const;
};

/// b_l counts as zero when b_l^2 < kRelativeSpectrumFloor * max(b^2).
inline constexpr double kRelativeSpectrumFloor = 1e-10;

EigenStructure eigen_structure(const SkewFrenetMatrix& k);

/// Matrix exponential of a small dense matrix.
Mat expm(const Mat& a);

/// Exponential-midpoint transport of a frame (columns) by arclength speed*h.
Frame frame_step(const Frame& frame, std::span<const double> kappas_mid, double speed, double h);

/// Advances point and frame together; the point moves along e_1 with the same
/// constant-generator solution, so constant curvatures are integrated exactly.
void pose_step(Vec& point, Frame& frame, std::span<const double> kappas_mid, double speed, double h);

/// Frobenius-norm distance of F^T F from the identity, max-entry version.
double orthonormality_residual(const Frame& frame);

// -- spectral differentiation ---------------------------------------------------

/// Trigonometric-interpolation derivatives of one period of uniform samples.
///
/// The grid spacing is 2*pi/N; pass `period` to rescale to another period.
std::vector<double> periodic_derivative(std::span<const double> samples, int order,
                                        double period = 2.0 * 3.14159265358979323846);

/// Derivatives of orders 1..max_order of each column of `samples` (N x d).
/// result[m-1] is the order-m derivative, same shape as the input.
std::vector<Mat> periodic_derivatives(const Mat& samples, int max_order,
                                      double period = 2.0 * 3.14159265358979323846);

/// Antiderivative of one period of samples: returns (mean, I) with
/// integral_0^{t_j} f = mean * t_j + I_j and I periodic.
std::pair<double, std::vector<double>> periodic_antiderivative(std::span<const double> samples,
                                                               double period = 2.0 * 3.14159265358979323846);

/// Lagrange interpolation through `width` consecutive nodes of a uniform table (rows).
/// Indices wrap around when `periodic` is set.
Eigen::RowVectorXd local_interpolate(const Mat& table, double x, bool periodic, int width = 8);

/// Finite-difference derivatives on a uniform open grid with spacing h:
/// centered stencils in the interior, one-sided polynomial stencils at the ends.
std::vector<Mat> stencil_derivatives(const Mat& samples, int max_order, double h, int stencil_width);

/// Fornberg weights for derivatives 0..max_order at x0 from nodes xs.
Mat fornberg_weights(double x0, std::span<const double> xs, int max_order);

/// Trigonometric interpolant of one period of uniform samples (grid t_j = j*period/N).
class TrigInterpolant {
 public:
  TrigInterpolant() = default;
  explicit TrigInterpolant(std::span<const double> samples, double period = 2.0 * 3.14159265358979323846);

  double operator()(double t) const;
  double derivative(double t, int order) const;
  std::size_t size() const noexcept { return n_; }
  double period() const noexcept { return period_; }

 private:
  std::size_t n_ = 0;
  double period_ = 1.0;
  double mean_ = 0.0;
  std::vector<double> cos_;  // coefficient of cos(m w t), m = 1..M
  std::vector<double> sin_;
};

/// Evaluates the trigonometric interpolant of one period of samples at t.
double trig_interpolate(std::span<const double> samples, double t,
                        double period = 2.0 * 3.14159265358979323846);

// -- mollification ---------------------------------------------------------------

/// Standard compactly supported C-infinity bump exp(-1/(1-(x/h)^2)) on |x| < h,
/// normalized to unit integral.
class Mollifier {
 public:
  explicit Mollifier(double width);

  double width() const noexcept { return width_; }
  double operator()(double x) const;
  /// Integral of the unnormalized unit bump over [-1, 1].
  static double unit_mass();

 private:
  double width_;
  double scale_;
};

/// C-infinity step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x);
/// C-infinity plateau: 1 on [-inner, inner], 0 outside (-outer, outer).
double smooth_plateau(double x, double inner, double outer);

struct BlendWindow {
  double center = 0.0;          // tau
  double width = 0.0;           // h; smoothing core is [tau-h, tau+h]
  double protected_radius = 0;  // window [tau-2h, tau+2h] must fit inside
};

/// Mollifier blend of vector-valued samples (rows) on a uniform grid.
///
/// Outside [tau-2h, tau+2h] the output equals `f` bit for bit. On [tau-h, tau+h]
/// it is `reference + eta * (f - reference)`, and a C-infinity cutoff joins the
/// two. `reference` must be smooth across tau; pass an empty matrix for zero.
/// For closed grids the parameter range is treated periodically.
Mat mollify_blend(const Mat& f, std::span<const double> params, bool closed, const BlendWindow& window,
                  const Mollifier& mollifier, const Mat& reference = Mat());

}  // namespace frenet
