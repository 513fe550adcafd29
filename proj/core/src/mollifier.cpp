#include <cmath>
#include <numbers>
#include <string>

#include "frenet/error.hpp"
#include "frenet/numerics.hpp"

namespace frenet {
namespace {

double unit_bump(double y) {
  const double a = 1.0 - y * y;
  return a > 0.0 ? std::exp(-1.0 / a) : 0.0;
}

double bump_flank(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double Mollifier::unit_mass() {
  // All derivatives vanish at +-1, so the trapezoid rule converges faster than any power.
  static const double mass = [] {
    constexpr int n = 20000;
    const double h = 2.0 / n;
    double sum = 0.0;
    for (int i = 1; i < n; ++i) sum += unit_bump(-1.0 + i * h);
    return sum * h;
  }();
  return mass;
}

Mollifier::Mollifier(double width) : width_(width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw Error(ErrorCode::InvalidArgument, "mollifier width must be positive");
  }
  scale_ = 1.0 / (width * unit_mass());
}

double Mollifier::operator()(double x) const { return scale_ * unit_bump(x / width_); }

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = bump_flank(x);
  const double b = bump_flank(1.0 - x);
  return a / (a + b);
}

double smooth_plateau(double x, double inner, double outer) {
  const double ax = std::abs(x);
  if (ax <= inner) return 1.0;
  if (ax >= outer) return 0.0;
  return smooth_step((outer - ax) / (outer - inner));
}

Mat mollify_blend(const Mat& f, std::span<const double> params, bool closed, const BlendWindow& window,
                  const Mollifier& mollifier, const Mat& reference) {
  const auto n = static_cast<Eigen::Index>(f.rows());
  if (static_cast<std::size_t>(n) != params.size() || n < 2) {
    throw Error(ErrorCode::InvalidArgument, "sample and parameter counts disagree");
  }
  if (reference.size() != 0 && (reference.rows() != f.rows() || reference.cols() != f.cols())) {
    throw Error(ErrorCode::InvalidArgument, "reference shape differs from samples");
  }
  const double h = window.width;
  const double dt = params[1] - params[0];
  const double period = dt * static_cast<double>(n);
  if (h < 4.0 * dt) {
    throw Error(ErrorCode::InsufficientResolution, "mollifier width spans fewer than four samples");
  }
  if (window.protected_radius > 0.0 && 3.0 * h > window.protected_radius) {
    throw Error(ErrorCode::WidthTooLarge, "blend window 3h = " + std::to_string(3.0 * h) +
                                              " exceeds protected radius " + std::to_string(window.protected_radius));
  }
  if (closed && 6.0 * h >= period) throw Error(ErrorCode::WidthTooLarge, "blend window wraps the whole period");
  if (!closed && (window.center - 3.0 * h < params.front() || window.center + 3.0 * h > params.back())) {
    throw Error(ErrorCode::WidthTooLarge, "blend window leaves the open parameter range");
  }

  auto offset = [&](double t) {
    double x = t - window.center;
    if (closed) x -= period * std::round(x / period);
    return x;
  };
  auto deviation = [&](Eigen::Index i) -> Eigen::RowVectorXd {
    return reference.size() != 0 ? Eigen::RowVectorXd(f.row(i) - reference.row(i)) : Eigen::RowVectorXd(f.row(i));
  };
  auto wrap = [&](Eigen::Index i) { return closed ? ((i % n) + n) % n : i; };

  Mat out = f;
  const auto reach = static_cast<Eigen::Index>(std::ceil(mollifier.width() / dt));
  for (Eigen::Index j = 0; j < n; ++j) {
    const double x = offset(params[static_cast<std::size_t>(j)]);
    if (std::abs(x) >= 2.0 * h) continue;
    Eigen::RowVectorXd conv = Eigen::RowVectorXd::Zero(f.cols());
    double mass = 0.0;
    for (Eigen::Index k = -reach; k <= reach; ++k) {
      const Eigen::Index i = wrap(j + k);
      if (i < 0 || i >= n) continue;
      const double wgt = mollifier(static_cast<double>(k) * dt);
      if (wgt == 0.0) continue;
      conv += wgt * deviation(i);
      mass += wgt;
    }
    conv /= mass;
    const double chi = smooth_plateau(x, h, 2.0 * h);
    out.row(j) = f.row(j) + chi * (conv - deviation(j));
  }
  return out;
}

}  // namespace frenet
