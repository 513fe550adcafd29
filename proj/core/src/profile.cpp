#include "frenet/profile.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "frenet/error.hpp"

namespace frenet {

double FourierSeries::operator()(double t) const {
  double acc = cos_coeffs.empty() ? 0.0 : cos_coeffs[0];
  const std::size_t m_max = std::max(cos_coeffs.size(), sin_coeffs.size());
  for (std::size_t m = 1; m < m_max; ++m) {
    const double a = m < cos_coeffs.size() ? cos_coeffs[m] : 0.0;
    const double b = m < sin_coeffs.size() ? sin_coeffs[m] : 0.0;
    if (a == 0.0 && b == 0.0) continue;
    const double x = static_cast<double>(m) * t;
    acc += a * std::cos(x) + b * std::sin(x);
  }
  return acc;
}

CurvatureProfile CurvatureProfile::fourier(std::vector<FourierSeries> components) {
  if (components.empty()) throw Error(ErrorCode::InvalidArgument, "profile needs at least one component");
  CurvatureProfile p;
  p.kind_ = Kind::Fourier;
  p.n_ = components.size();
  p.fourier_ = std::move(components);
  p.validate();
  return p;
}

CurvatureProfile CurvatureProfile::table(std::vector<std::vector<double>> components) {
  if (components.empty()) throw Error(ErrorCode::InvalidArgument, "profile needs at least one component");
  CurvatureProfile p;
  p.kind_ = Kind::Table;
  p.n_ = components.size();
  for (const auto& c : components) {
    if (c.size() < 4) throw Error(ErrorCode::InsufficientResolution, "profile table needs at least 4 samples");
    p.interp_.emplace_back(c);
  }
  p.table_ = std::move(components);
  p.validate();
  return p;
}

CurvatureProfile CurvatureProfile::constant(std::span<const double> values) {
  std::vector<FourierSeries> comps;
  for (double v : values) comps.push_back(FourierSeries{{v}, {}});
  return fourier(std::move(comps));
}

double CurvatureProfile::component(std::size_t i, double t) const {
  if (kind_ == Kind::Fourier) return fourier_[i](t);
  return interp_[i](t);
}

Vec CurvatureProfile::operator()(double t) const {
  Vec v(static_cast<Eigen::Index>(n_));
  for (std::size_t i = 0; i < n_; ++i) v(static_cast<Eigen::Index>(i)) = component(i, t);
  return v;
}

void CurvatureProfile::validate() const {
  for (std::size_t j = 0; j < kPositivityGrid; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(kPositivityGrid);
    for (std::size_t i = 0; i < n_; ++i) {
      const double v = component(i, t);
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::InvalidArgument,
                    "component " + std::to_string(i + 1) + " is not finite at t = " + std::to_string(t));
      }
      if (i + 1 < n_ && !(v > 0.0)) {
        throw Error(ErrorCode::NonPositiveCurvature, "component " + std::to_string(i + 1) + " = " +
                                                         std::to_string(v) + " at t = " + std::to_string(t));
      }
    }
  }
}

}  // namespace frenet
