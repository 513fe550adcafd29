#include "frenet/helix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/LU>

#include "frenet/error.hpp"

namespace frenet {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// d^m/dx^m cos(x) = cos(x + m pi/2), likewise for sin.
double cos_derivative(double x, int m) { return std::cos(x + m * kHalfPi); }
double sin_derivative(double x, int m) { return std::sin(x + m * kHalfPi); }

// Oscillating part X(t) = sum_l A_l cos(b_l t) + B_l sin(b_l t) and its derivatives.
Mat oscillation_jet(const HelixSpec& spec, double t, int orders) {
  const auto d = static_cast<Eigen::Index>(spec.dim);
  Mat jet = Mat::Zero(d, orders + 1);
  for (std::size_t l = 0; l < spec.frequencies.size(); ++l) {
    const double b = spec.frequencies[l];
    const double x = b * t;
    double scale = 1.0;
    for (int m = 0; m <= orders; ++m) {
      jet.col(m) += scale * (cos_derivative(x, m) * spec.a[l] + sin_derivative(x, m) * spec.b[l]);
      scale *= b;
    }
  }
  return jet;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double HelixSpec::basis_gram_ratio() const {
  std::vector<Vec> vs;
  for (std::size_t l = 0; l < a.size(); ++l) {
    vs.push_back(a[l]);
    vs.push_back(b[l]);
  }
  if (drift) vs.push_back(*drift);
  const auto d = static_cast<Eigen::Index>(dim);
  if (static_cast<Eigen::Index>(vs.size()) != d) return 0.0;
  Mat m(d, d);
  double norms = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    m.col(i) = vs[static_cast<std::size_t>(i)];
    norms *= vs[static_cast<std::size_t>(i)].squaredNorm();
  }
  const Mat gram = m.transpose() * m;
  return gram.determinant() / norms;
}

HelixSpec helix_from_constants(std::span<const double> kappas, const Vec& point, const Frame& frame) {
  const auto k = build_frenet_matrix(kappas);
  if (kappas.back() == 0.0) throw Error(ErrorCode::DegenerateSpectrum, "last curvature is zero, the constant-curvature curve is not twisted");
  const auto structure = eigen_structure(k);
  require_positive_frame(frame);
  const auto d = static_cast<Eigen::Index>(k.dim());
  if (frame.rows() != d || point.size() != d) {
    throw Error(ErrorCode::InvalidArgument, "point/frame dimension does not match the curvature count");
  }

  // Unit-speed solution: e_1(t) = F exp(-tK) e_0, integrated plane by plane.
  HelixSpec spec;
  spec.dim = static_cast<std::size_t>(d);
  spec.kappas = Eigen::Map<const Vec>(kappas.data(), static_cast<Eigen::Index>(kappas.size()));
  Vec anchor = point;
  for (const auto& plane : structure.planes) {
    const double u0 = plane.u(0);
    const double w0 = plane.w(0);
    const double b = plane.frequency;
    Vec a = frame * ((u0 * plane.w - w0 * plane.u) / b);
    Vec bb = frame * ((u0 * plane.u + w0 * plane.w) / b);
    anchor -= a;
    spec.frequencies.push_back(b);
    spec.a.push_back(std::move(a));
    spec.b.push_back(std::move(bb));
  }
  if (structure.kernel_axis) {
    const Vec& z = *structure.kernel_axis;
    spec.drift = frame * (z * z(0));
  }
  spec.anchor = anchor;
  return spec;
}

Mat eval_helix(const HelixSpec& spec, double t, int orders) {
  if (orders < 0) throw Error(ErrorCode::InvalidArgument, "orders must be non-negative");
  Mat jet = oscillation_jet(spec, t, orders);
  jet.col(0) += spec.anchor;
  if (spec.drift) {
    jet.col(0) += t * *spec.drift;
    if (orders >= 1) jet.col(1) += *spec.drift;
  }
  return jet;
}

double jet_gap(const HelixSpec& spec, double u, int orders) {
  const Mat a = eval_helix(spec, u, orders);
  const Mat b = eval_helix(spec, 0.0, orders);
  double gap = 0.0;
  for (int m = 0; m <= orders; ++m) gap = std::max(gap, (a.col(m) - b.col(m)).norm());
  return gap;
}

SampledCurve sample_helix(const HelixSpec& spec, double t0, double t1, std::size_t n, bool closed) {
  auto f = [&](double t) -> Vec { return eval_helix(spec, t, 0).col(0); };
  if (closed) {
    auto shifted = [&](double t) -> Vec { return f(t0 + t); };
    SampledCurve c = SampledCurve::closed_from(n, spec.dim, shifted, t1 - t0);
    for (auto& p : c.params) p += t0;
    return c;
  }
  return SampledCurve::open_from(n, spec.dim, t0, t1, f);
}

ReturnResult return_search(const HelixSpec& spec, double delta, int orders, double horizon,
                           const ReturnSearchOptions& options) {
  if (spec.frequencies.empty()) throw Error(ErrorCode::InvalidArgument, "helix has no frequencies");
  if (orders < 0 || orders > static_cast<int>(spec.dim)) {
    throw Error(ErrorCode::InvalidArgument, "orders must lie in [0, dim]");
  }
  const double b_max = *std::max_element(spec.frequencies.begin(), spec.frequencies.end());
  const double step = (2.0 * std::numbers::pi / b_max) / 64.0;
  const double u_min = options.u_min.value_or(std::numbers::pi / b_max);
  auto gap = [&](double u) { return jet_gap(spec, u, orders); };

  auto refine = [&](double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = gap(x1);
    double f2 = gap(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = gap(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = gap(x2);
      }
    }
    return f1 < f2 ? x1 : x2;
  };

  double u_prev = u_min;
  double g_prev = gap(u_prev);
  double u_cur = u_min + step;
  double g_cur = gap(u_cur);
  // Candidates are local minima of the sampled gap, independent of delta, so that a
  // smaller delta can only move the answer to a later, not larger, minimum.
  for (double u_next = u_cur + step; u_cur <= horizon; u_next += step) {
    const double g_next = gap(u_next);
    if (g_cur <= g_prev && g_cur <= g_next) {
      double u = refine(u_prev, u_next);
      double g = gap(u);
      if (g > g_cur) {
        u = u_cur;
        g = g_cur;
      }
      if (g < delta && u <= horizon) return ReturnResult{u, g};
    }
    u_prev = u_cur;
    g_prev = g_cur;
    u_cur = u_next;
    g_cur = g_next;
  }
  throw Error(ErrorCode::NotFound, "no return with gap < " + std::to_string(delta) + " before u = " + std::to_string(horizon));
}

double BentHelix::lap() const { return 2.0 * std::numbers::pi / core_rate; }

Mat BentHelix::eval(double t, int orders) const {
  const auto d = static_cast<Eigen::Index>(base.dim);
  const Mat x = oscillation_jet(base, t, orders);
  const double w = core_rate;
  const double phi = w * t;
  const Mat plane_proj = axis * axis.transpose() + bend * bend.transpose();
  const Mat plane_rot = bend * axis.transpose() - axis * bend.transpose();
  Mat out = Mat::Zero(d, orders + 1);
  for (int m = 0; m <= orders; ++m) {
    const double wm = std::pow(w, m);
    // core circle C(phi) = c + r (sin(phi) axis + (1 - cos(phi)) bend)
    if (m == 0) {
      out.col(0) = base.anchor + radius * (std::sin(phi) * axis + (1.0 - std::cos(phi)) * bend);
    } else {
      out.col(m) = radius * wm * (sin_derivative(phi, m) * axis - cos_derivative(phi, m) * bend);
    }
    for (int j = 0; j <= m; ++j) {
      const double wj = std::pow(w, j);
      Mat rj = wj * (cos_derivative(phi, j) * plane_proj + sin_derivative(phi, j) * plane_rot);
      if (j == 0) rj += Mat::Identity(d, d) - plane_proj;
      out.col(m) += binomial(m, j) * rj * x.col(m - j);
    }
  }
  return out;
}

BentHelix bend_helix(const HelixSpec& spec, double min_radius) {
  if (!spec.drift) throw Error(ErrorCode::InvalidArgument, "only drifting (odd-dimensional) helices are bent");
  if (!(min_radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "bending radius must be positive");
  BentHelix out;
  out.base = spec;
  const double drift_speed = spec.drift->norm();
  out.axis = *spec.drift / drift_speed;
  out.bend = spec.a.front().normalized();
  const double b_max = spec.frequencies.front();
  // lap * b_max = 2 pi m  <=>  r = m |A_0| / b_max
  const double m = std::ceil(min_radius * b_max / drift_speed);
  out.radius = m * drift_speed / b_max;
  out.core_rate = drift_speed / out.radius;
  return out;
}

Vec CurvatureTable::evaluate(double sigma) const {
  Vec out(values.cols());
  evaluate(sigma, std::span<double>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

void CurvatureTable::evaluate(double sigma, std::span<double> out) const {
  const double x = sigma / length * static_cast<double>(values.rows());
  const Eigen::RowVectorXd v = local_interpolate(values, x, true);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = v(static_cast<Eigen::Index>(i));
}

double CurvatureTable::max_deviation(std::span<const double> k) const {
  double dev = 0.0;
  for (Eigen::Index j = 0; j < values.rows(); ++j)
    for (Eigen::Index i = 0; i < values.cols(); ++i) dev = std::max(dev, std::abs(values(j, i) - k[static_cast<std::size_t>(i)]));
  return dev;
}

CurvatureTable bent_curvatures(const BentHelix& bent, std::size_t samples_per_turn) {
  const double lap = bent.lap();
  const double b_max = bent.base.frequencies.front();
  const double turns = b_max * lap / (2.0 * std::numbers::pi);
  std::size_t m = 256;
  while (static_cast<double>(m) < static_cast<double>(samples_per_turn) * turns) m *= 2;
  SampledCurve curve = SampledCurve::closed_from(m, bent.base.dim, [&](double t) -> Vec { return bent.eval(t, 0).col(0); }, lap);
  const auto app = analyze_curve(curve);
  std::vector<double> speed(m);
  for (std::size_t j = 0; j < m; ++j) speed[j] = app[j].speed;
  const auto [mean_speed, periodic] = periodic_antiderivative(speed, lap);
  const Mat kappa = curvature_table(app);

  CurvatureTable table;
  table.length = mean_speed * lap;
  table.values.resize(static_cast<Eigen::Index>(m), kappa.cols());
  // sigma(t_j) on the t grid, then invert onto a uniform sigma grid.
  std::vector<double> sigma(m);
  for (std::size_t j = 0; j < m; ++j) sigma[j] = mean_speed * curve.params[j] + periodic[j];
  const double dt = lap / static_cast<double>(m);
  std::size_t cursor = 0;
  constexpr int width = 8;
  std::vector<double> nodes(width);
  std::vector<double> ts(width);
  for (std::size_t i = 0; i < m; ++i) {
    const double s = table.length * static_cast<double>(i) / static_cast<double>(m);
    while (cursor + 1 < m && sigma[cursor + 1] <= s) ++cursor;
    const long start = static_cast<long>(cursor) - width / 2 + 1;
    for (int q = 0; q < width; ++q) {
      const long idx = start + q;
      const long wrapped = ((idx % static_cast<long>(m)) + static_cast<long>(m)) % static_cast<long>(m);
      const long laps = (idx - wrapped) / static_cast<long>(m);
      nodes[static_cast<std::size_t>(q)] = sigma[static_cast<std::size_t>(wrapped)] + static_cast<double>(laps) * table.length;
      ts[static_cast<std::size_t>(q)] = curve.params[static_cast<std::size_t>(wrapped)] + static_cast<double>(laps) * lap;
    }
    const Mat w = fornberg_weights(s, nodes, 0);
    double t = 0.0;
    for (int q = 0; q < width; ++q) t += w(0, q) * ts[static_cast<std::size_t>(q)];
    table.values.row(static_cast<Eigen::Index>(i)) = local_interpolate(kappa, t / dt, true);
  }
  return table;
}

}  // namespace frenet
