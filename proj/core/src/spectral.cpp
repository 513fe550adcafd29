#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "frenet/error.hpp"
#include "frenet/numerics.hpp"

namespace frenet {
namespace {

using Real = long double;
using Complex = std::complex<long double>;

// FFTW planning is not thread-safe; execution with the new-array interface is.
struct PlanPair {
  fftwl_plan forward = nullptr;
  fftwl_plan backward = nullptr;
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    auto* real = static_cast<Real*>(fftwl_malloc(sizeof(Real) * static_cast<std::size_t>(n)));
    auto* spec = static_cast<fftwl_complex*>(fftwl_malloc(sizeof(fftwl_complex) * static_cast<std::size_t>(n / 2 + 1)));
    PlanPair p;
    p.forward = fftwl_plan_dft_r2c_1d(n, real, spec, FFTW_ESTIMATE);
    p.backward = fftwl_plan_dft_c2r_1d(n, spec, real, FFTW_ESTIMATE);
    fftwl_free(real);
    fftwl_free(spec);
    plans_.emplace(n, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftwl_destroy_plan(p.forward);
      fftwl_destroy_plan(p.backward);
    }
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

struct FftBuffers {
  explicit FftBuffers(int n)
      : real(static_cast<Real*>(fftwl_malloc(sizeof(Real) * static_cast<std::size_t>(n)))),
        spec(static_cast<fftwl_complex*>(fftwl_malloc(sizeof(fftwl_complex) * static_cast<std::size_t>(n / 2 + 1)))),
        work(static_cast<fftwl_complex*>(fftwl_malloc(sizeof(fftwl_complex) * static_cast<std::size_t>(n / 2 + 1)))) {}
  ~FftBuffers() {
    fftwl_free(real);
    fftwl_free(spec);
    fftwl_free(work);
  }
  FftBuffers(const FftBuffers&) = delete;
  FftBuffers& operator=(const FftBuffers&) = delete;

  Real* real;
  fftwl_complex* spec;
  fftwl_complex* work;
};

void check_resolution(std::size_t n, int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "derivative order must be non-negative");
  const auto floor = static_cast<std::size_t>(4 * (order + 1));
  if (n < floor) {
    throw Error(ErrorCode::InsufficientResolution,
                std::to_string(n) + " samples cannot resolve order " + std::to_string(order) + " (need " +
                    std::to_string(floor) + ")");
  }
}

// (i k w)^m, with the unpaired Nyquist mode dropped for odd orders.
Complex spectral_factor(int k, int n, int order, Real w) {
  if (2 * k == n && (order % 2) == 1) return Complex(0, 0);
  const Real a = static_cast<Real>(k) * w;
  Real mag = 1;
  for (int i = 0; i < order; ++i) mag *= a;
  switch (order % 4) {
    case 0: return Complex(mag, 0);
    case 1: return Complex(0, mag);
    case 2: return Complex(-mag, 0);
    default: return Complex(0, -mag);
  }
}

}  // namespace

std::vector<Mat> periodic_derivatives(const Mat& samples, int max_order, double period) {
  const auto n = static_cast<int>(samples.rows());
  check_resolution(static_cast<std::size_t>(n), max_order);
  std::vector<Mat> out(static_cast<std::size_t>(max_order), Mat(samples.rows(), samples.cols()));
  if (max_order == 0) return out;
  const PlanPair plan = PlanCache::instance().get(n);
  FftBuffers buf(n);
  const Real w = 2 * std::numbers::pi_v<Real> / static_cast<Real>(period);
  const int half = n / 2 + 1;
  for (Eigen::Index c = 0; c < samples.cols(); ++c) {
    for (int j = 0; j < n; ++j) buf.real[j] = static_cast<Real>(samples(j, c));
    fftwl_execute_dft_r2c(plan.forward, buf.real, buf.spec);
    for (int m = 1; m <= max_order; ++m) {
      for (int k = 0; k < half; ++k) {
        const Complex z(buf.spec[k][0], buf.spec[k][1]);
        const Complex r = z * spectral_factor(k, n, m, w);
        buf.work[k][0] = r.real();
        buf.work[k][1] = r.imag();
      }
      fftwl_execute_dft_c2r(plan.backward, buf.work, buf.real);
      Mat& dst = out[static_cast<std::size_t>(m - 1)];
      for (int j = 0; j < n; ++j) dst(j, c) = static_cast<double>(buf.real[j] / static_cast<Real>(n));
    }
  }
  return out;
}

std::vector<double> periodic_derivative(std::span<const double> samples, int order, double period) {
  check_resolution(samples.size(), order);
  if (order == 0) return {samples.begin(), samples.end()};
  Mat col(static_cast<Eigen::Index>(samples.size()), 1);
  for (std::size_t j = 0; j < samples.size(); ++j) col(static_cast<Eigen::Index>(j), 0) = samples[j];
  const auto all = periodic_derivatives(col, order, period);
  const Mat& d = all.back();
  return {d.data(), d.data() + d.rows()};
}

std::pair<double, std::vector<double>> periodic_antiderivative(std::span<const double> samples, double period) {
  const auto n = static_cast<int>(samples.size());
  check_resolution(samples.size(), 0);
  const PlanPair plan = PlanCache::instance().get(n);
  FftBuffers buf(n);
  for (int j = 0; j < n; ++j) buf.real[j] = samples[static_cast<std::size_t>(j)];
  fftwl_execute_dft_r2c(plan.forward, buf.real, buf.spec);
  const Real mean = buf.spec[0][0] / static_cast<Real>(n);
  const Real w = 2 * std::numbers::pi_v<Real> / static_cast<Real>(period);
  const int half = n / 2 + 1;
  for (int k = 0; k < half; ++k) {
    if (k == 0 || 2 * k == n) {
      buf.work[k][0] = 0;
      buf.work[k][1] = 0;
      continue;
    }
    const Complex z(buf.spec[k][0], buf.spec[k][1]);
    const Complex r = z / Complex(0, static_cast<Real>(k) * w);
    buf.work[k][0] = r.real();
    buf.work[k][1] = r.imag();
  }
  fftwl_execute_dft_c2r(plan.backward, buf.work, buf.real);
  std::vector<double> out(static_cast<std::size_t>(n));
  const Real base = buf.real[0] / static_cast<Real>(n);
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = static_cast<double>(buf.real[j] / static_cast<Real>(n) - base);
  return {static_cast<double>(mean), std::move(out)};
}

Eigen::RowVectorXd local_interpolate(const Mat& table, double x, bool periodic, int width) {
  const auto n = static_cast<int>(table.rows());
  if (n < width) throw Error(ErrorCode::InsufficientResolution, "interpolation table is too short");
  const int base = static_cast<int>(std::floor(x)) - width / 2 + 1;
  const int start = periodic ? base : std::clamp(base, 0, n - width);
  std::vector<double> nodes(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) nodes[static_cast<std::size_t>(i)] = start + i;
  const Mat w = fornberg_weights(x, nodes, 0);
  Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(table.cols());
  for (int i = 0; i < width; ++i) {
    const int idx = periodic ? (((start + i) % n) + n) % n : start + i;
    acc += w(0, i) * table.row(idx);
  }
  return acc;
}

Mat fornberg_weights(double x0, std::span<const double> xs, int max_order) {
  const int n = static_cast<int>(xs.size());
  Mat c = Mat::Zero(max_order + 1, n);
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  c(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, max_order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[static_cast<std::size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c(k, i) = c1 * (k * c(k - 1, i - 1) - c5 * c(k, i - 1)) / c2;
        c(0, i) = -c1 * c5 * c(0, i - 1) / c2;
      }
      for (int k = mn; k >= 1; --k) c(k, j) = (c4 * c(k, j) - k * c(k - 1, j)) / c3;
      c(0, j) = c4 * c(0, j) / c3;
    }
    c1 = c2;
  }
  return c;
}

std::vector<Mat> stencil_derivatives(const Mat& samples, int max_order, double h, int stencil_width) {
  const auto n = static_cast<int>(samples.rows());
  if (stencil_width < max_order + 1 || n < stencil_width) {
    throw Error(ErrorCode::InsufficientResolution,
                "open grid of " + std::to_string(n) + " samples cannot carry a width-" +
                    std::to_string(stencil_width) + " stencil for order " + std::to_string(max_order));
  }
  std::vector<Mat> out(static_cast<std::size_t>(max_order), Mat::Zero(samples.rows(), samples.cols()));
  std::vector<double> nodes(static_cast<std::size_t>(stencil_width));
  for (int i = 0; i < stencil_width; ++i) nodes[static_cast<std::size_t>(i)] = i;
  // offset of the evaluation point inside the stencil -> weights
  std::vector<Mat> weights(static_cast<std::size_t>(stencil_width));
  for (int off = 0; off < stencil_width; ++off) weights[static_cast<std::size_t>(off)] = fornberg_weights(off, nodes, max_order);
  for (int j = 0; j < n; ++j) {
    const int start = std::clamp(j - stencil_width / 2, 0, n - stencil_width);
    const Mat& wts = weights[static_cast<std::size_t>(j - start)];
    for (int m = 1; m <= max_order; ++m) {
      const double scale = std::pow(h, -m);
      auto row = out[static_cast<std::size_t>(m - 1)].row(j);
      for (int i = 0; i < stencil_width; ++i) row += (wts(m, i) * scale) * samples.row(start + i);
    }
  }
  return out;
}

TrigInterpolant::TrigInterpolant(std::span<const double> samples, double period)
    : n_(samples.size()), period_(period) {
  if (n_ == 0) throw Error(ErrorCode::InvalidArgument, "empty sample table");
  const int n = static_cast<int>(n_);
  const PlanPair plan = PlanCache::instance().get(n);
  FftBuffers buf(n);
  for (int j = 0; j < n; ++j) buf.real[j] = samples[static_cast<std::size_t>(j)];
  fftwl_execute_dft_r2c(plan.forward, buf.real, buf.spec);
  const Real inv = 1.0L / static_cast<Real>(n);
  mean_ = static_cast<double>(buf.spec[0][0] * inv);
  const int m_max = n / 2;
  cos_.assign(static_cast<std::size_t>(m_max), 0.0);
  sin_.assign(static_cast<std::size_t>(m_max), 0.0);
  for (int k = 1; k <= m_max; ++k) {
    // Nyquist term is split evenly between +-N/2 and contributes only its cosine.
    const Real f = (2 * k == n) ? inv : 2 * inv;
    cos_[static_cast<std::size_t>(k - 1)] = static_cast<double>(buf.spec[k][0] * f);
    sin_[static_cast<std::size_t>(k - 1)] = (2 * k == n) ? 0.0 : static_cast<double>(-buf.spec[k][1] * f);
  }
}

double TrigInterpolant::operator()(double t) const { return derivative(t, 0); }

double TrigInterpolant::derivative(double t, int order) const {
  const double w = 2.0 * std::numbers::pi / period_;
  double acc = order == 0 ? mean_ : 0.0;
  // Chebyshev-style recurrence for cos/sin(k w t) keeps this O(N) without libm calls.
  const double c1 = std::cos(w * t);
  const double s1 = std::sin(w * t);
  double ck = c1;
  double sk = s1;
  for (std::size_t k = 1; k <= cos_.size(); ++k) {
    const double a = cos_[k - 1];
    const double b = sin_[k - 1];
    double scale = 1.0;
    for (int i = 0; i < order; ++i) scale *= static_cast<double>(k) * w;
    // d^m/dt^m of a cos + b sin cycles through (a, b) -> (b, -a) -> (-a, -b) -> (-b, a)
    double ca = a;
    double sb = b;
    for (int i = 0; i < order % 4; ++i) {
      const double nc = sb;
      const double ns = -ca;
      ca = nc;
      sb = ns;
    }
    acc += scale * (ca * ck + sb * sk);
    const double nc = ck * c1 - sk * s1;
    const double ns = sk * c1 + ck * s1;
    ck = nc;
    sk = ns;
  }
  return acc;
}

double trig_interpolate(std::span<const double> samples, double t, double period) {
  return TrigInterpolant(samples, period)(t);
}

}  // namespace frenet
