#include "frenet/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/QR>

#include "frenet/error.hpp"

namespace frenet {
namespace {

double peak_bump(double x) { return std::abs(x) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - x * x)) : 0.0; }

std::size_t harmonic_count(const BridgePerturbation& p) { return 1 + 2 * p.frequencies.size(); }

// All mode values at sigma; returns false when sigma lies outside every window.
bool mode_values(const BridgePerturbation& p, double sigma, std::vector<double>& psi) {
  const std::size_t h = harmonic_count(p);
  psi.assign(p.modes(), 0.0);
  const double span = p.u - 2.0 * p.u0;
  const double half = span / (p.windows + 1);
  bool any = false;
  thread_local std::vector<double> harm;
  harm.resize(h);
  bool harm_ready = false;
  for (int w = 0; w < p.windows; ++w) {
    const double center = p.u0 + (w + 1) * half;
    const double bump = peak_bump((sigma - center) / half);
    if (bump == 0.0) continue;
    if (!harm_ready) {
      harm[0] = 1.0;
      for (std::size_t f = 0; f < p.frequencies.size(); ++f) {
        harm[1 + 2 * f] = std::cos(p.frequencies[f] * sigma);
        harm[2 + 2 * f] = std::sin(p.frequencies[f] * sigma);
      }
      harm_ready = true;
    }
    for (std::size_t j = 0; j < h; ++j) psi[static_cast<std::size_t>(w) * h + j] = bump * harm[j];
    any = true;
  }
  return any;
}

// Harmonics resonant with the frame rotation of the comparison helix; a bent base
// adds its slow core rate `core`.
std::vector<double> harmonic_frequencies(const std::vector<double>& b, double core = 0.0) {
  std::vector<double> f;
  auto add = [&](double x) {
    if (x < 1e-6) return;
    for (double y : f) {
      if (std::abs(x - y) < 1e-9 * std::max(1.0, x)) return;
    }
    f.push_back(x);
  };
  for (std::size_t l = 0; l < b.size(); ++l) {
    add(b[l]);
    add(2.0 * b[l]);
    for (std::size_t m = l + 1; m < b.size(); ++m) {
      add(b[l] + b[m]);
      add(std::abs(b[l] - b[m]));
    }
    if (core > 0.0) {
      add(b[l] + core);
      add(std::abs(b[l] - core));
    }
  }
  if (core > 0.0) {
    add(core);
    add(2.0 * core);
  }
  return f;
}

struct Integration {
  Vec point;
  Frame frame;
  Vec residual;
  Mat jacobian;  // residual rows x coefficients
  std::vector<Vec> points;
  std::vector<Frame> frames;
};

std::size_t residual_size(Eigen::Index d) { return static_cast<std::size_t>(d + d * (d - 1) / 2); }

Vec pose_residual(const Vec& p, const Frame& f, const Pose& to) {
  const auto d = p.size();
  Vec r(static_cast<Eigen::Index>(residual_size(d)));
  r.head(d) = p - to.point;
  const Mat a = f * to.frame.transpose();
  Eigen::Index row = d;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) r(row++) = 0.5 * (a(i, j) - a(j, i));
  return r;
}

Integration integrate(const Pose& from, const Pose& to, const BridgeBase& base, const BridgePerturbation& pert,
                      std::span<const double> nodes, bool with_jacobian, bool keep_path) {
  const auto d = from.point.size();
  const auto n = d - 1;
  const std::size_t modes = pert.modes();
  const std::size_t unknowns = static_cast<std::size_t>(n) * modes;
  Integration out;
  Vec p = from.point;
  Frame f = from.frame;
  std::vector<Mat> mr;
  std::vector<Vec> mt;
  if (with_jacobian) {
    mr.assign(unknowns, Mat::Zero(d, d));
    mt.assign(unknowns, Vec::Zero(d));
  }
  if (keep_path) {
    out.points.reserve(nodes.size());
    out.frames.reserve(nodes.size());
    out.points.push_back(p);
    out.frames.push_back(f);
  }
  std::vector<double> kappa(static_cast<std::size_t>(n));
  std::vector<double> psi;
  Mat w(d, d);
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    const double h = nodes[j] - nodes[j - 1];
    const double mid = 0.5 * (nodes[j] + nodes[j - 1]);
    base.evaluate(mid, kappa);
    const bool active = mode_values(pert, mid, psi);
    if (active) {
      for (Eigen::Index i = 0; i < n; ++i) {
        double delta = 0.0;
        for (std::size_t m = 0; m < modes; ++m) delta += pert.coefficients(i, static_cast<Eigen::Index>(m)) * psi[m];
        kappa[static_cast<std::size_t>(i)] += delta;
      }
    }
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (!(kappa[static_cast<std::size_t>(i)] > 0.0)) {
        throw Error(ErrorCode::NonPositiveCurvature, "bridge curvature kappa_" + std::to_string(i + 1) + " left (0, inf)");
      }
    }
    if (with_jacobian && active) {
      for (Eigen::Index i = 0; i < n; ++i) {
        w.noalias() = f.col(i + 1) * f.col(i).transpose();
        w -= w.transpose().eval();
        const Vec wp = w * p;
        for (std::size_t m = 0; m < modes; ++m) {
          if (psi[m] == 0.0) continue;
          const std::size_t col = static_cast<std::size_t>(i) * modes + m;
          mr[col] += (h * psi[m]) * w;
          mt[col] -= (h * psi[m]) * wp;
        }
      }
    }
    pose_step(p, f, kappa, 1.0, h);
    if (keep_path) {
      out.points.push_back(p);
      out.frames.push_back(f);
    }
  }
  out.point = p;
  out.frame = f;
  out.residual = pose_residual(p, f, to);
  if (with_jacobian) {
    const Mat a = f * to.frame.transpose();
    out.jacobian = Mat::Zero(static_cast<Eigen::Index>(residual_size(d)), static_cast<Eigen::Index>(unknowns));
    for (std::size_t col = 0; col < unknowns; ++col) {
      const auto c = static_cast<Eigen::Index>(col);
      out.jacobian.col(c).head(d) = mr[col] * p + mt[col];
      const Mat da = mr[col] * a;
      Eigen::Index row = d;
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index k = i + 1; k < d; ++k) out.jacobian(row++, c) = 0.5 * (da(i, k) - da(k, i));
    }
  }
  return out;
}

std::vector<double> uniform_nodes(double u, double per_length) {
  const auto steps = static_cast<std::size_t>(std::max(16.0, std::ceil(u * per_length)));
  std::vector<double> nodes(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) nodes[j] = u * static_cast<double>(j) / static_cast<double>(steps);
  nodes.back() = u;
  return nodes;
}

bool is_uniform(std::span<const double> nodes) {
  if (nodes.size() < 3) return false;
  const double h = nodes[1] - nodes[0];
  for (std::size_t j = 2; j < nodes.size(); ++j) {
    if (std::abs(nodes[j] - nodes[j - 1] - h) > 1e-9 * h) return false;
  }
  return true;
}

void check_inputs(const Pose& from, const Pose& to, std::span<const double> k, double eps) {
  const auto d = static_cast<Eigen::Index>(k.size() + 1);
  if (k.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one curvature");
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  if (from.point.size() != d || to.point.size() != d || from.frame.rows() != d || to.frame.rows() != d) {
    throw Error(ErrorCode::InvalidArgument, "pose dimension does not match the curvature count");
  }
  require_positive_frame(from.frame, 1e-9);
  require_positive_frame(to.frame, 1e-9);
}

// Candidate bridge lengths in increasing order.
class Candidates {
 public:
  Candidates(const Pose& from, std::span<const double> k, const BridgeBase& base, double delta, double horizon,
             const std::vector<double>& freqs, std::optional<double> fixed = std::nullopt)
      : base_(base), delta_(delta), horizon_(horizon), fixed_(fixed) {
    if (!base.table && !fixed) spec_ = helix_from_constants(k, from.point, from.frame);
    b_max_ = *std::max_element(freqs.begin(), freqs.end());
  }

  std::optional<double> next() {
    if (fixed_) {
      if (laps_++ > 0) return std::nullopt;
      return fixed_;
    }
    if (base_.table) {
      const double u = base_.table->length * static_cast<double>(++laps_);
      if (u > horizon_) return std::nullopt;
      return u;
    }
    ReturnSearchOptions opts;
    if (last_) opts.u_min = *last_ + 2.0 * std::numbers::pi / b_max_ / 8.0;
    try {
      last_ = return_search(*spec_, delta_, static_cast<int>(spec_->dim), horizon_, opts).u;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotFound) return std::nullopt;
      throw;
    }
    return last_;
  }

 private:
  const BridgeBase& base_;
  std::optional<HelixSpec> spec_;
  double delta_;
  double horizon_;
  double b_max_ = 1.0;
  std::optional<double> fixed_;
  std::optional<double> last_;
  int laps_ = 0;
};

BridgePerturbation make_perturbation(double u, std::size_t n, int windows, const std::vector<double>& freqs) {
  BridgePerturbation p;
  p.u = u;
  p.u0 = 0.1 * u;
  p.windows = windows;
  p.frequencies = freqs;
  p.coefficients = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p.modes()));
  return p;
}

void set_coefficients(BridgePerturbation& p, const Vec& c) {
  const auto n = p.coefficients.rows();
  const auto m = p.coefficients.cols();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) p.coefficients(i, j) = c(i * m + j);
}

Vec min_norm_step(const Mat& jac, const Vec& r) {
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(jac);
  cod.setThreshold(1e-12);
  return -cod.solve(r);
}

BridgeBase default_base(std::span<const double> k, double eps) {
  if (k.size() % 2 == 0) return bent_base(k, 0.75 * eps);
  BridgeBase base;
  base.k = Eigen::Map<const Vec>(k.data(), static_cast<Eigen::Index>(k.size()));
  return base;
}

std::vector<double> base_frequencies(std::span<const double> k) {
  return eigen_structure(build_frenet_matrix(k)).frequencies();
}

double core_rate(const BridgeBase& base) {
  return base.table ? 2.0 * std::numbers::pi / base.table->length : 0.0;
}

}  // namespace

void BridgeBase::evaluate(double sigma, std::span<double> out) const {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = k(static_cast<Eigen::Index>(i));
  if (!table) return;
  const double half = 0.5 * length;
  const double chi = smooth_plateau(sigma - half, half - collar, half);
  if (chi == 0.0) return;
  thread_local std::vector<double> v;
  v.resize(out.size());
  double s = std::fmod(sigma, table->length);
  if (s < 0.0) s += table->length;
  table->evaluate(s, v);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += chi * (v[i] - out[i]);
}

double BridgeBase::deviation() const {
  if (!table) return 0.0;
  return table->max_deviation(std::span<const double>(k.data(), static_cast<std::size_t>(k.size())));
}

std::size_t BridgePerturbation::modes() const { return static_cast<std::size_t>(windows) * harmonic_count(*this); }

double BridgePerturbation::mode(std::size_t index, double sigma) const {
  std::vector<double> psi;
  mode_values(*this, sigma, psi);
  return psi.at(index);
}

void BridgePerturbation::add_to(double sigma, std::span<double> kappas) const {
  std::vector<double> psi;
  if (!mode_values(*this, sigma, psi)) return;
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    double delta = 0.0;
    for (std::size_t m = 0; m < psi.size(); ++m) delta += coefficients(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(m)) * psi[m];
    kappas[i] += delta;
  }
}

double BridgePerturbation::sup_norm(std::size_t samples) const {
  const auto n = static_cast<std::size_t>(coefficients.rows());
  std::vector<double> kap(n);
  double sup = 0.0;
  // resolve the fastest harmonic with at least 16 points per period
  double f_max = 0.0;
  for (double f : frequencies) f_max = std::max(f_max, f);
  const auto count = std::max<std::size_t>(samples, static_cast<std::size_t>(16.0 * f_max * u / (2.0 * std::numbers::pi)));
  for (std::size_t j = 0; j <= count; ++j) {
    std::fill(kap.begin(), kap.end(), 0.0);
    add_to(u * static_cast<double>(j) / static_cast<double>(count), kap);
    for (double x : kap) sup = std::max(sup, std::abs(x));
  }
  return sup;
}

// longer laps make the tabulation itself the expensive part
constexpr double kMaxBentLap = 2.0e5;

BridgeBase bent_base(std::span<const double> k, double max_deviation) {
  const auto d = static_cast<Eigen::Index>(k.size() + 1);
  const HelixSpec spec = helix_from_constants(k, Vec::Zero(d), Mat::Identity(d, d));
  double kmin = std::numeric_limits<double>::infinity();
  for (double x : k) kmin = std::min(kmin, std::abs(x));
  const double b_max = *std::max_element(spec.frequencies.begin(), spec.frequencies.end());
  auto table_at = [&](double radius) { return bent_curvatures(bend_helix(spec, radius)); };
  auto make = [&](CurvatureTable table) {
    BridgeBase base;
    base.k = Eigen::Map<const Vec>(k.data(), static_cast<Eigen::Index>(k.size()));
    base.collar = std::min(4.0 * std::numbers::pi / b_max, 0.05 * table.length);
    base.length = table.length;
    base.table = std::move(table);
    return base;
  };

  // the deviation falls off like 1/r: double to bracket, then bisect for the shortest lap
  double lo = 0.0;
  double hi = 4.0 / kmin;
  std::optional<CurvatureTable> found;
  for (int attempt = 0; attempt < 16 && !found; ++attempt) {
    if (bend_helix(spec, hi).lap() > kMaxBentLap) break;
    CurvatureTable table = table_at(hi);
    if (table.max_deviation(k) < max_deviation) {
      found = std::move(table);
    } else {
      lo = hi;
      hi *= 2.0;
    }
  }
  if (!found) {
    throw Error(ErrorCode::BudgetExceeded, "bending radius did not bring the curvature deviation below " + std::to_string(max_deviation));
  }
  if (lo > 0.0) {
    for (int step = 0; step < 10; ++step) {
      const double mid = 0.5 * (lo + hi);
      CurvatureTable table = table_at(mid);
      if (table.max_deviation(k) < max_deviation) {
        hi = mid;
        found = std::move(table);
      } else {
        lo = mid;
      }
    }
  }
  return make(std::move(*found));
}

BridgeResult bridge_to_pose(const Pose& from, const Pose& to, std::span<const double> k, double eps,
                            const BridgeOptions& options) {
  check_inputs(from, to, k, eps);
  const auto d = from.point.size();
  const std::size_t n = k.size();
  BridgeBase base = options.base ? *options.base : default_base(k, eps);
  const double base_dev = base.deviation();
  if (base_dev >= eps) throw Error(ErrorCode::BudgetExceeded, "base curvature deviation exceeds eps");
  const std::vector<double> b = base_frequencies(k);
  const std::vector<double> freqs = harmonic_frequencies(b, core_rate(base));
  const double b_max = *std::max_element(b.begin(), b.end());
  const double per_length = options.samples_per_radian * std::max(1.0, b_max);

  Candidates candidates(from, k, base, options.return_delta.value_or(eps), options.horizon, b, options.length);
  std::string last_failure = "no candidate bridge length within the horizon";
  for (int attempt = 0; attempt < options.max_candidates; ++attempt) {
    const auto u = candidates.next();
    if (!u) break;
    base.length = *u;
    const std::vector<double> nodes = options.node_builder ? options.node_builder(*u) : uniform_nodes(*u, per_length);
    if (nodes.size() < 2 || nodes.front() != 0.0 || std::abs(nodes.back() - *u) > 1e-9 * *u) {
      throw Error(ErrorCode::InvalidArgument, "bridge nodes must run from 0 to u");
    }
    BridgePerturbation pert = make_perturbation(*u, n, options.windows, freqs);
    Vec c = Vec::Zero(static_cast<Eigen::Index>(n * pert.modes()));
    if (options.initial_coefficients && options.initial_coefficients->rows() == pert.coefficients.rows() &&
        options.initial_coefficients->cols() == pert.coefficients.cols()) {
      pert.coefficients = *options.initial_coefficients;
      const auto m = pert.coefficients.cols();
      for (Eigen::Index i = 0; i < pert.coefficients.rows(); ++i)
        for (Eigen::Index j = 0; j < m; ++j) c(i * m + j) = pert.coefficients(i, j);
    }
    try {
      Integration run = integrate(from, to, base, pert, nodes, true, false);
      // linear screen: skip lengths whose first-order correction already busts the budget
      {
        BridgePerturbation trial = pert;
        set_coefficients(trial, c + min_norm_step(run.jacobian, run.residual));
        if (base_dev + trial.sup_norm(1024) > 2.0 * eps) {
          last_failure = "linearized correction too large at u = " + std::to_string(*u);
          continue;
        }
      }
      int it = 0;
      bool converged = false;
      for (; it < options.max_iterations; ++it) {
        if (run.residual.lpNorm<Eigen::Infinity>() < options.tolerance) {
          converged = true;
          break;
        }
        const Vec step = min_norm_step(run.jacobian, run.residual);
        const double r0 = run.residual.norm();
        bool accepted = false;
        for (double lambda = 1.0; lambda > 1.0 / 512.0; lambda *= 0.5) {
          const Vec trial = c + lambda * step;
          set_coefficients(pert, trial);
          Integration next = integrate(from, to, base, pert, nodes, true, false);
          if (next.residual.norm() < r0) {
            c = trial;
            run = std::move(next);
            accepted = true;
            break;
          }
        }
        if (!accepted) break;
      }
      set_coefficients(pert, c);
      if (!converged) {
        last_failure = "Newton iteration stalled at residual " + std::to_string(run.residual.norm()) + " for u = " + std::to_string(*u);
        continue;
      }
      const double predicted = base_dev + pert.sup_norm();
      if (predicted >= eps) {
        last_failure = "perturbation " + std::to_string(predicted) + " exceeds eps at u = " + std::to_string(*u);
        continue;
      }

      Integration full = integrate(from, to, base, pert, nodes, false, true);
      BridgeResult result;
      result.u = *u;
      result.iterations = it;
      result.base_deviation = base_dev;
      result.predicted_deviation = predicted;
      result.max_curvature_deviation = predicted;
      result.end_point_gap = (full.point - to.point).norm();
      result.end_frame_gap = (full.frame - to.frame).lpNorm<Eigen::Infinity>();
      result.curve.dim = static_cast<std::size_t>(d);
      result.curve.closed = false;
      result.curve.params = nodes;
      result.curve.points.resize(static_cast<Eigen::Index>(nodes.size()), d);
      for (std::size_t j = 0; j < nodes.size(); ++j) result.curve.points.row(static_cast<Eigen::Index>(j)) = full.points[j].transpose();
      result.frames = std::move(full.frames);
      result.perturbation = std::move(pert);

      if (options.verify && is_uniform(nodes)) {
        const auto app = analyze_curve(result.curve);
        double dev = 0.0;
        for (const auto& a : app)
          for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(a.kappas(static_cast<Eigen::Index>(i)) - k[i]));
        const int width = std::max(9, static_cast<int>(n) + 5);
        const auto jets = stencil_derivatives(result.curve.points, static_cast<int>(n) + 1, result.curve.spacing(), width);
        const auto last = result.curve.points.rows() - 1;
        result.derivative_gaps.clear();
        for (const Mat& m : jets) result.derivative_gaps.push_back((m.row(0) - m.row(last)).norm());
        result.max_curvature_deviation = dev;
        result.verified = true;
        if (dev >= eps) {
          last_failure = "measured curvature deviation " + std::to_string(dev) + " exceeds eps at u = " + std::to_string(*u);
          continue;
        }
      }
      return result;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonPositiveCurvature) throw;
      last_failure = e.what();
    }
  }
  throw Error(ErrorCode::BudgetExceeded, "bridge: " + last_failure);
}

double admissible_gap(std::span<const double> k, double eps, const BridgeOptions& options) {
  const auto d = static_cast<Eigen::Index>(k.size() + 1);
  const Pose origin{Vec::Zero(d), Mat::Identity(d, d)};
  check_inputs(origin, origin, k, eps);
  BridgeBase base = options.base ? *options.base : default_base(k, eps);
  const double budget = eps - base.deviation();
  if (!(budget > 0.0)) return 0.0;
  const std::vector<double> b = base_frequencies(k);
  const std::vector<double> freqs = harmonic_frequencies(b, core_rate(base));
  const double per_length = options.samples_per_radian * std::max(1.0, *std::max_element(b.begin(), b.end()));
  Candidates candidates(origin, k, base, options.return_delta.value_or(eps), options.horizon, b);
  const auto u = candidates.next();
  if (!u) throw Error(ErrorCode::NotFound, "no candidate bridge length within the horizon");
  base.length = *u;
  const auto nodes = uniform_nodes(*u, per_length);
  BridgePerturbation pert = make_perturbation(*u, k.size(), options.windows, freqs);
  const Integration run = integrate(origin, origin, base, pert, nodes, true, false);
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(run.jacobian);
  cod.setThreshold(1e-12);
  double sum = 0.0;
  for (Eigen::Index a = 0; a < d; ++a) {
    Vec rhs = Vec::Zero(run.jacobian.rows());
    rhs(a) = 1.0;
    set_coefficients(pert, cod.solve(rhs));
    const double s = pert.sup_norm(1024);
    sum += s * s;
  }
  return 0.5 * budget / std::sqrt(sum);
}

BridgeResult bridge(const Vec& p, const Vec& q, const Frame& frame_p, std::span<const double> k, double eps,
                    const BridgeOptions& options) {
  BridgeOptions opts = options;
  if (!opts.base && k.size() % 2 == 0) opts.base = default_base(k, eps);
  const double limit = admissible_gap(k, eps, opts);
  const double gap = (p - q).norm();
  if (!(gap < limit)) {
    throw Error(ErrorCode::GapTooLarge, "endpoint gap " + std::to_string(gap) + " is not below the admissible " + std::to_string(limit));
  }
  return bridge_to_pose(Pose{p, frame_p}, Pose{q, frame_p}, k, eps, opts);
}

}  // namespace frenet
