#include "frenet/curve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include <Eigen/LU>

#include "frenet/error.hpp"

namespace frenet {

double SampledCurve::span_length() const {
  if (params.size() < 2) return 0.0;
  return closed ? spacing() * static_cast<double>(params.size()) : params.back() - params.front();
}

void SampledCurve::validate() const {
  const std::size_t n = params.size();
  if (n < kMinSamples) {
    throw Error(ErrorCode::InsufficientResolution,
                "curve has " + std::to_string(n) + " samples, at least " + std::to_string(kMinSamples) + " required");
  }
  if (dim < 2) throw Error(ErrorCode::InvalidArgument, "curves live in R^d with d >= 2");
  if (static_cast<std::size_t>(points.rows()) != n || static_cast<std::size_t>(points.cols()) != dim) {
    throw Error(ErrorCode::InvalidArgument, "points array does not match params and dim");
  }
  if (!points.allFinite()) throw Error(ErrorCode::InvalidArgument, "curve contains non-finite points");
  const double dt = spacing();
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "params must be strictly increasing");
  for (std::size_t j = 1; j < n; ++j) {
    const double step = params[j] - params[j - 1];
    if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "params must be strictly increasing");
    if (std::abs(step - dt) > 1e-8 * std::max(1.0, std::abs(dt))) {
      throw Error(ErrorCode::InvalidArgument, "params must be uniformly spaced");
    }
  }
}

SampledCurve SampledCurve::closed_from(std::size_t n, std::size_t dim, const std::function<Vec(double)>& f,
                                       double period) {
  SampledCurve c;
  c.dim = dim;
  c.closed = true;
  c.params.resize(n);
  c.points.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < n; ++j) {
    const double t = period * static_cast<double>(j) / static_cast<double>(n);
    c.params[j] = t;
    c.points.row(static_cast<Eigen::Index>(j)) = f(t).transpose();
  }
  return c;
}

SampledCurve SampledCurve::open_from(std::size_t n, std::size_t dim, double a, double b,
                                     const std::function<Vec(double)>& f) {
  SampledCurve c;
  c.dim = dim;
  c.closed = false;
  c.params.resize(n);
  c.points.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < n; ++j) {
    const double t = a + (b - a) * static_cast<double>(j) / static_cast<double>(n - 1);
    c.params[j] = t;
    c.points.row(static_cast<Eigen::Index>(j)) = f(t).transpose();
  }
  return c;
}

namespace {

// Unit vector orthogonal to the first `count` columns of q, from the least aligned axis.
Vec orthogonal_complement(const Mat& q, Eigen::Index count) {
  const Eigen::Index d = q.rows();
  Eigen::Index best = 0;
  double best_proj = 2.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    double proj = 0.0;
    for (Eigen::Index i = 0; i < count; ++i) proj += q(j, i) * q(j, i);
    if (proj < best_proj) {
      best_proj = proj;
      best = j;
    }
  }
  Vec v = Vec::Unit(d, best);
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index i = 0; i < count; ++i) v -= q.col(i).dot(v) * q.col(i);
  }
  return v.normalized();
}

}  // namespace

Frame frenet_frame_at(const Mat& derivs, double t) {
  const Eigen::Index d = derivs.rows();
  const Eigen::Index n = derivs.cols();
  if (n != d - 1) throw Error(ErrorCode::InvalidArgument, "need exactly dim-1 derivative vectors");
  Frame frame(d, d);
  double ratio = 1.0;  // sqrt(Gram det) / product of norms
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec v = derivs.col(i);
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw DegenerateFrameError(t, "vanishing derivative of order " + std::to_string(i + 1));
    // modified Gram-Schmidt, twice for stability
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < i; ++j) v -= frame.col(j).dot(v) * frame.col(j);
    }
    const double r = v.norm();
    ratio *= r / norm;
    if (ratio < 1e-5) {  // Gram determinant below 1e-10 x (product of norms)^2
      throw DegenerateFrameError(t, "derivatives are linearly dependent");
    }
    frame.col(i) = v / r;
  }
  frame.col(d - 1) = orthogonal_complement(frame, d - 1);
  if (frame.determinant() < 0.0) frame.col(d - 1) = -frame.col(d - 1);
  return frame;
}

namespace {

constexpr int kLocalWidth = 13;
constexpr double kPointsPerRadian = 64.0;
constexpr double kRoundoff = 1.1e-16;
constexpr double kSpectralNoiseTolerance = 1e-10;

Eigen::RowVectorXd local_derivative(const Mat& samples, std::span<const long> nodes, const Mat& weights, int order) {
  const auto N = samples.rows();
  Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(samples.cols());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    acc += weights(order, static_cast<Eigen::Index>(k)) * samples.row(((nodes[k] % N) + N) % N);
  }
  return acc;
}

struct Stencil {
  std::array<long, kLocalWidth> nodes{};
  Mat weights;  // Fornberg weights, d/dsigma
  int centre = 0;
};

// On a uniform grid the spectral derivative of order m carries roundoff of about
// eps |x| (N/2)^m, which swamps slow stretches of strongly non-uniform
// parametrizations. Such samples are instead differentiated with respect to an
// arclength estimate sigma(t) on a local stencil spaced by geometry, not by index.
// The curvatures do not depend on the parameter, so any smooth sigma will do.
class LocalGeometry {
 public:
  LocalGeometry(const SampledCurve& curve, const std::vector<Mat>& derivs, int n) : curve_(curve), n_(n) {
    N_ = static_cast<long>(curve.size());
    const double dt = curve.spacing();
    speed_.resize(static_cast<std::size_t>(N_));
    for (long j = 0; j < N_; ++j) speed_[static_cast<std::size_t>(j)] = derivs[0].row(j).norm();
    const double v_max = *std::max_element(speed_.begin(), speed_.end());

    // Geometric frequency from samples moving at least half the top speed.
    double k_geo = 0.0;
    for (long j = 0; j < N_; ++j) {
      const double v = speed_[static_cast<std::size_t>(j)];
      if (v < 0.5 * v_max) continue;
      for (int m = 2; m <= n; ++m) {
        const double ratio = derivs[static_cast<std::size_t>(m - 1)].row(j).norm() / std::pow(v, m);
        k_geo = std::max(k_geo, std::pow(ratio, 1.0 / (m - 1)));
      }
    }
    const Eigen::RowVectorXd mean = curve.points.colwise().mean();
    const double radius = (curve.points.rowwise() - mean).rowwise().norm().maxCoeff();
    if (!(k_geo > 0.0)) k_geo = 1.0 / std::max(radius, 1e-300);
    h0_ = 1.0 / (kPointsPerRadian * k_geo);

    local_.assign(static_cast<std::size_t>(N_), 0);
    for (std::size_t j = 0; j < speed_.size(); ++j) {
      const double theta = k_geo * speed_[j] * dt;  // geometric radians per sample
      if (theta * kPointsPerRadian >= 0.25) continue;
      if (kRoundoff * radius * k_geo * std::pow(std::numbers::pi / theta, n + 1) >= kSpectralNoiseTolerance) {
        local_[j] = 1;
        any_ = true;
      }
    }
    if (!any_) return;
    const auto [mean_speed, periodic] = periodic_antiderivative(speed_, curve.span_length());
    length_ = mean_speed * curve.span_length();
    sigma_.resize(speed_.size());
    for (std::size_t j = 0; j < speed_.size(); ++j) sigma_[j] = mean_speed * (curve.params[j] - curve.params[0]) + periodic[j];
  }

  bool any() const { return any_; }
  bool local(long j) const { return local_[static_cast<std::size_t>(j)] != 0; }
  long wrap(long j) const { return ((j % N_) + N_) % N_; }
  // spacing 1/(64 K) resolves the helix-like part of the geometry
  double h() const { return h0_; }

  double sigma_at(long idx) const {
    const long w = wrap(idx);
    return sigma_[static_cast<std::size_t>(w)] + static_cast<double>((idx - w) / N_) * length_;
  }

  // Nodes nearest to sigma_j + k h without repeats. The window is centred unless one
  // side runs into samples spaced wider than the targets, in which case it is shifted
  // towards the dense side.
  Stencil build(long j, double h) const {
    Stencil st;
    const double s0 = sigma_at(j);
    constexpr int half = kLocalWidth / 2;
    std::array<std::vector<long>, 2> reach;
    for (int side : {-1, 1}) {
      auto& r = reach[side > 0 ? 1 : 0];
      long idx = j;
      for (int k = 1; k < kLocalWidth; ++k) {
        const double target = s0 + side * k * h;
        const long next = nearest(idx, target, side);
        if (std::abs(sigma_at(next) - target) > 0.25 * h) break;
        r.push_back(idx = next);
        if (side < 0 && k >= half && static_cast<int>(reach[1].size()) >= kLocalWidth - 1 - k) break;
      }
    }
    const int avail_left = static_cast<int>(reach[0].size());
    const int avail_right = static_cast<int>(reach[1].size());
    int left = std::min(half, avail_left);
    if (kLocalWidth - 1 - left > avail_right) left = std::min(avail_left, kLocalWidth - 1 - avail_right);
    if (left + avail_right < kLocalWidth - 1) {
      // too sparse on both sides: nearest samples, centred
      left = half;
      st.nodes[half] = j;
      for (int side : {-1, 1}) {
        long idx = j;
        for (int k = 1; k <= half; ++k) st.nodes[static_cast<std::size_t>(half + side * k)] = idx = nearest(idx, s0 + side * k * h, side);
      }
    } else {
      std::size_t at = 0;
      for (int k = left - 1; k >= 0; --k) st.nodes[at++] = reach[0][static_cast<std::size_t>(k)];
      st.nodes[at++] = j;
      for (int k = 0; k < kLocalWidth - 1 - left; ++k) st.nodes[at++] = reach[1][static_cast<std::size_t>(k)];
    }
    st.centre = left;
    std::array<double, kLocalWidth> xs{};
    for (int k = 0; k < kLocalWidth; ++k) xs[static_cast<std::size_t>(k)] = sigma_at(st.nodes[static_cast<std::size_t>(k)]) - s0;
    st.weights = fornberg_weights(0.0, xs, n_);
    return st;
  }

  // sigma-derivatives of orders 1..n, dim x n
  Mat derivatives(const Stencil& st) const {
    Mat der(static_cast<Eigen::Index>(curve_.dim), n_);
    for (int m = 0; m < n_; ++m) der.col(m) = local_derivative(curve_.points, st.nodes, st.weights, m + 1).transpose();
    return der;
  }

 private:
  long nearest(long from, double target, int side) const {
    // guess from the local spacing and correct by single steps, which is exact on
    // slowly varying stretches
    const double gap = (sigma_at(from + side) - sigma_at(from)) * side;
    if (gap > 0.0) {
      const double jump = (target - sigma_at(from)) * side / gap;
      if (jump < 1e6) {
        long g = from + side * std::max(1L, std::lround(jump));
        for (int tries = 0; tries < 4; ++tries) {
          const double here = std::abs(sigma_at(g) - target);
          if (g != from + side && (g - side - from) * side > 0 && std::abs(sigma_at(g - side) - target) < here) {
            g -= side;
          } else if (std::abs(sigma_at(g + side) - target) < here) {
            g += side;
          } else {
            return g;
          }
        }
      }
    }
    // walk by doubling, then bisect: sigma is monotone in the index
    long step = 1;
    long lo = from;
    long hi = from + side;
    while ((sigma_at(hi) - target) * side < 0.0) {
      lo = hi;
      step *= 2;
      hi = from + side * step;
    }
    while (std::abs(hi - lo) > 1) {
      const long mid = (lo + hi) / 2;
      if ((sigma_at(mid) - target) * side < 0.0) lo = mid; else hi = mid;
    }
    return std::abs(sigma_at(lo) - target) < std::abs(sigma_at(hi) - target) && lo != from ? lo : hi;
  }

  const SampledCurve& curve_;
  int n_ = 0;
  long N_ = 0;
  std::vector<double> speed_;
  std::vector<char> local_;
  std::vector<double> sigma_;
  double length_ = 0.0;
  double h0_ = 0.0;
  bool any_ = false;
};

Vec kappas_from(const Mat& de, const Frame& frame, double rate) {
  const auto n = de.cols() - 1;
  Vec k(n);
  for (Eigen::Index i = 0; i < n; ++i) k(i) = de.col(i).dot(frame.col(i + 1)) / rate;
  return k;
}

Mat unflatten(const Eigen::RowVectorXd& flat, Eigen::Index d) {
  Mat m(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) m(r, c) = flat(c * d + r);
  return m;
}

// Curvatures of the local samples. `frames_flat` holds spectral frames of the other
// samples on entry and receives the local frames.
void analyze_local(const LocalGeometry& geo, Eigen::Index d, Mat& frames_flat, std::vector<FrenetApparatus>& out) {
  const auto N = static_cast<long>(out.size());
  const double h = geo.h();
  std::vector<Stencil> stencils(static_cast<std::size_t>(N));
  std::vector<double> rate(static_cast<std::size_t>(N), 0.0);  // |d alpha / d sigma|
  for (long j = 0; j < N; ++j) {
    if (!geo.local(j)) continue;
    const auto ju = static_cast<std::size_t>(j);
    stencils[ju] = geo.build(j, h);
    const Mat der = geo.derivatives(stencils[ju]);
    out[ju].frame = frenet_frame_at(der, out[ju].t);
    frames_flat.row(j) = Eigen::Map<const Eigen::RowVectorXd>(out[ju].frame.data(), d * d);
    rate[ju] = der.col(0).norm();
  }
  for (long j = 0; j < N; ++j) {
    if (!geo.local(j)) continue;
    const auto ju = static_cast<std::size_t>(j);
    const Stencil& st = stencils[ju];
    const Eigen::RowVectorXd de_flat = local_derivative(frames_flat, st.nodes, st.weights, 1);
    out[ju].kappas = kappas_from(unflatten(de_flat, d), out[ju].frame, rate[ju]);
  }
}

}  // namespace

constexpr double kDegenerateCurvature = 1e-8;  // kappa times arclength

std::vector<FrenetApparatus> analyze_curve(const SampledCurve& curve, const AnalyzeOptions& options) {
  curve.validate();
  const auto N = static_cast<Eigen::Index>(curve.size());
  const auto d = static_cast<Eigen::Index>(curve.dim);
  const int n = static_cast<int>(d - 1);
  const int width = std::max(options.stencil_width, n + 4);
  const double dt = curve.spacing();

  auto differentiate = [&](const Mat& samples, int order) {
    return curve.closed ? periodic_derivatives(samples, order, curve.span_length())
                        : stencil_derivatives(samples, order, dt, width);
  };

  std::vector<Mat> derivs = differentiate(curve.points, n);
  std::optional<LocalGeometry> geo;
  if (curve.closed && options.adaptive) {
    geo.emplace(curve, derivs, n);
    if (!geo->any()) geo.reset();
  }

  std::vector<FrenetApparatus> out(static_cast<std::size_t>(N));
  Mat frames_flat(N, d * d);
  for (Eigen::Index j = 0; j < N; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    auto& a = out[ju];
    a.t = curve.params[ju];
    a.speed = derivs[0].row(j).norm();
    if (geo && geo->local(j)) continue;
    Mat local_derivs(d, n);
    for (int m = 0; m < n; ++m) local_derivs.col(m) = derivs[static_cast<std::size_t>(m)].row(j).transpose();
    a.frame = frenet_frame_at(local_derivs, a.t);
    frames_flat.row(j) = Eigen::Map<const Eigen::RowVectorXd>(a.frame.data(), d * d);
  }
  if (geo) analyze_local(*geo, d, frames_flat, out);

  const Mat frame_rate = differentiate(frames_flat, 1).front();
  for (Eigen::Index j = 0; j < N; ++j) {
    if (geo && geo->local(j)) continue;
    auto& a = out[static_cast<std::size_t>(j)];
    a.kappas = kappas_from(unflatten(frame_rate.row(j), d), a.frame, a.speed);
  }

  // a roundoff-sized curvature means the derivatives were dependent all along
  double length = 0.0;
  for (const auto& a : out) length += a.speed * dt;
  for (const auto& a : out) {
    for (int i = 0; i + 1 < n; ++i) {
      if (std::abs(a.kappas(i)) * length < kDegenerateCurvature) {
        throw DegenerateFrameError(a.t, "curvature " + std::to_string(i + 1) + " vanishes at roundoff level");
      }
    }
  }
  return out;
}

Mat curvature_table(std::span<const FrenetApparatus> apparatus) {
  if (apparatus.empty()) return {};
  Mat out(static_cast<Eigen::Index>(apparatus.size()), apparatus.front().kappas.size());
  for (std::size_t j = 0; j < apparatus.size(); ++j) out.row(static_cast<Eigen::Index>(j)) = apparatus[j].kappas.transpose();
  return out;
}

void require_positive_frame(const Frame& frame, double tol) {
  if (frame.rows() != frame.cols() || frame.rows() < 2) {
    throw Error(ErrorCode::InvalidArgument, "frame must be square of size >= 2");
  }
  if (orthonormality_residual(frame) > tol) throw Error(ErrorCode::InvalidArgument, "initial frame is not orthonormal");
  if (frame.determinant() < 0.0) throw Error(ErrorCode::InvalidArgument, "initial frame is negatively oriented");
}

FrenetTrajectory integrate_frenet(const CurvatureFn& kappa, const SpeedFn& speed, const Vec& point, const Frame& frame,
                                  std::span<const double> nodes, int substeps) {
  if (nodes.empty()) throw Error(ErrorCode::InvalidArgument, "no integration nodes");
  if (substeps < 1) throw Error(ErrorCode::InvalidArgument, "substeps must be >= 1");
  const auto d = frame.rows();
  std::vector<double> k(static_cast<std::size_t>(d - 1));
  FrenetTrajectory out;
  out.params.assign(nodes.begin(), nodes.end());
  out.points.reserve(nodes.size());
  out.frames.reserve(nodes.size());
  Vec p = point;
  Frame f = frame;
  out.points.push_back(p);
  out.frames.push_back(f);
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    const double a = nodes[j - 1];
    const double h = (nodes[j] - a) / substeps;
    for (int s = 0; s < substeps; ++s) {
      const double mid = a + (s + 0.5) * h;
      kappa(mid, k);
      for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        if (!(k[i] > 0.0)) {
          throw Error(ErrorCode::NonPositiveCurvature,
                      "kappa_" + std::to_string(i + 1) + " = " + std::to_string(k[i]) + " at parameter " + std::to_string(mid));
        }
      }
      pose_step(p, f, k, speed(mid), h);
    }
    out.points.push_back(p);
    out.frames.push_back(f);
  }
  return out;
}

FrenetTrajectory synthesize_trajectory(const CurvatureProfile& profile, const Vec& point, const Frame& frame,
                                       double length, std::size_t steps, const SynthesisOptions& options) {
  require_positive_frame(frame);
  if (static_cast<std::size_t>(frame.rows()) != profile.n() + 1 || point.size() != frame.rows()) {
    throw Error(ErrorCode::InvalidArgument, "profile, point and frame dimensions disagree");
  }
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "arc length must be positive");
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "at least one step");
  auto schedule = options.schedule;
  if (!schedule) schedule = [length](double sigma) { return 2.0 * std::numbers::pi * sigma / length; };
  std::vector<double> nodes(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) nodes[j] = length * static_cast<double>(j) / static_cast<double>(steps);
  nodes.back() = length;
  auto kappa = [&](double sigma, std::span<double> out) {
    const double t = schedule(sigma);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = profile.component(i, t);
  };
  return integrate_frenet(kappa, [](double) { return 1.0; }, point, frame, nodes, 1);
}

SampledCurve synthesize_curve(const CurvatureProfile& profile, const Vec& point, const Frame& frame, double length,
                              std::size_t steps, const SynthesisOptions& options) {
  const FrenetTrajectory tr = synthesize_trajectory(profile, point, frame, length, steps, options);
  SampledCurve c;
  c.dim = static_cast<std::size_t>(frame.rows());
  c.closed = false;
  c.params = tr.params;
  c.points.resize(static_cast<Eigen::Index>(tr.points.size()), frame.rows());
  for (std::size_t j = 0; j < tr.points.size(); ++j) c.points.row(static_cast<Eigen::Index>(j)) = tr.points[j].transpose();
  return c;
}

SampledCurve reparametrize(const SampledCurve& curve, std::span<const double> q) {
  curve.validate();
  const std::size_t n = curve.size();
  if (q.size() != n) throw Error(ErrorCode::InvalidArgument, "q must be sampled on the curve's parameter grid");
  const double dt = curve.spacing();
  const double period = curve.span_length();

  // Orientation and non-vanishing derivative of q.
  if (curve.closed) {
    std::vector<double> periodic_part(n);
    for (std::size_t j = 0; j < n; ++j) periodic_part[j] = q[j] - curve.params[j];
    const auto dq = periodic_derivative(periodic_part, 1, period);
    for (std::size_t j = 0; j < n; ++j) {
      if (!(1.0 + dq[j] > 1e-8)) {
        throw Error(ErrorCode::NotADiffeomorphism, "q' = " + std::to_string(1.0 + dq[j]) + " at t = " + std::to_string(curve.params[j]));
      }
    }
    if (!(q[n - 1] < q[0] + period)) throw Error(ErrorCode::NotADiffeomorphism, "q does not wind exactly once");
  }
  for (std::size_t j = 1; j < n; ++j) {
    if (!((q[j] - q[j - 1]) / dt > 1e-8)) {
      throw Error(ErrorCode::NotADiffeomorphism, "q is not increasing at t = " + std::to_string(curve.params[j]));
    }
  }
  if (!curve.closed && (q.front() < curve.params.front() - 1e-12 || q.back() > curve.params.back() + 1e-12)) {
    throw Error(ErrorCode::NotADiffeomorphism, "q leaves the open parameter interval");
  }

  SampledCurve out = curve;
  const auto d = static_cast<Eigen::Index>(curve.dim);
  if (curve.closed) {
    std::vector<TrigInterpolant> coords;
    for (Eigen::Index c = 0; c < d; ++c) {
      std::vector<double> col(curve.points.col(c).data(), curve.points.col(c).data() + n);
      coords.emplace_back(col, period);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (q[j] == curve.params[j]) continue;
      const double t = q[j] - curve.params.front();
      for (Eigen::Index c = 0; c < d; ++c) out.points(static_cast<Eigen::Index>(j), c) = coords[static_cast<std::size_t>(c)](t);
    }
    return out;
  }

  constexpr int width = 8;
  std::vector<double> nodes(width);
  for (std::size_t j = 0; j < n; ++j) {
    if (q[j] == curve.params[j]) continue;
    const double x = (q[j] - curve.params.front()) / dt;
    const int start = std::clamp(static_cast<int>(std::floor(x)) - width / 2 + 1, 0, static_cast<int>(n) - width);
    for (int i = 0; i < width; ++i) nodes[static_cast<std::size_t>(i)] = start + i;
    const Mat w = fornberg_weights(x, nodes, 0);
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(d);
    for (int i = 0; i < width; ++i) acc += w(0, i) * curve.points.row(start + i);
    out.points.row(static_cast<Eigen::Index>(j)) = acc;
  }
  return out;
}

}  // namespace frenet
