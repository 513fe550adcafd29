#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "frenet/numerics.hpp"

namespace frenet {

/// Fourier series a_0 + sum_{m>=1} a_m cos(m t) + b_m sin(m t). `sin_coeffs[0]` is unused.
struct FourierSeries {
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;

  double operator()(double t) const;
};

/// A curvature-like function S^1 -> (R_+)^{n-1} x R with period 2*pi.
class CurvatureProfile {
 public:
  enum class Kind { Fourier, Table };

  static constexpr std::size_t kPositivityGrid = 2048;

  static CurvatureProfile fourier(std::vector<FourierSeries> components);
  /// Uniform samples over [0, 2*pi), one vector per component, trigonometrically interpolated.
  static CurvatureProfile table(std::vector<std::vector<double>> components);
  static CurvatureProfile constant(std::span<const double> values);

  std::size_t n() const noexcept { return n_; }
  Kind kind() const noexcept { return kind_; }

  Vec operator()(double t) const;
  double component(std::size_t i, double t) const;

  const std::vector<FourierSeries>& fourier_components() const noexcept { return fourier_; }
  const std::vector<std::vector<double>>& table_components() const noexcept { return table_; }

  /// Throws NonPositiveCurvature naming the component and parameter on failure.
  void validate() const;

 private:
  CurvatureProfile() = default;

  Kind kind_ = Kind::Fourier;
  std::size_t n_ = 0;
  std::vector<FourierSeries> fourier_;
  std::vector<std::vector<double>> table_;
  std::vector<TrigInterpolant> interp_;
};

}  // namespace frenet
