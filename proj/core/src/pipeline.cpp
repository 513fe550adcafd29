#include "frenet/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "frenet/error.hpp"
#include "frenet/helix.hpp"

namespace frenet {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Absolute budgets are scaled below the fractions so that their sum stays strictly under eps.
constexpr double kBudgetMargin = 0.95;
constexpr std::size_t kPlanGrid = std::size_t{1} << 16;
constexpr double kClosureTolerance = 1e-9;

double wrap_signed(double x) {
  x = std::fmod(x, kTwoPi);
  if (x <= -std::numbers::pi) x += kTwoPi;
  if (x > std::numbers::pi) x -= kTwoPi;
  return x;
}

double wrap_unit(double x) {
  x = std::fmod(x, kTwoPi);
  return x < 0.0 ? x + kTwoPi : x;
}

double sup_diff(const Vec& a, const Vec& b) { return (a - b).lpNorm<Eigen::Infinity>(); }

// 8-point Gauss-Legendre on [a, b].
template <class F>
double gauss8(F&& f, double a, double b) {
  static constexpr std::array<double, 4> x = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                              0.9602898564975363};
  static constexpr std::array<double, 4> w = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                              0.1012285362903763};
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) sum += w[i] * (f(c - r * x[i]) + f(c + r * x[i]));
  return r * sum;
}

struct Measurement {
  VerificationReport report;
  std::vector<FrenetApparatus> apparatus;
};

// One-sided arclength derivatives 0..orders on both sides of the stored seam. Nodes
// sit at a fixed fraction of the local curvature radius apart in arclength, which
// keeps them inside the smooth stretch around the seam whatever the parameter speed.
std::vector<double> seam_gaps(const SampledCurve& c, std::span<const FrenetApparatus> app, int orders) {
  const auto n = static_cast<std::ptrdiff_t>(c.size());
  const int width = std::max(9, orders + 4);
  const double dt = c.spacing();
  auto at = [&](std::ptrdiff_t j) -> const FrenetApparatus& { return app[static_cast<std::size_t>(((j % n) + n) % n)]; };
  double freq = 1e-3;
  for (std::ptrdiff_t j = -16; j < 16; ++j) freq = std::max(freq, at(j).kappas.cwiseAbs().maxCoeff());
  const double target = 1.0 / (32.0 * freq);

  std::vector<double> speed(static_cast<std::size_t>(n));
  for (std::ptrdiff_t j = 0; j < n; ++j) speed[static_cast<std::size_t>(j)] = at(j).speed;
  const auto [mean, periodic] = periodic_antiderivative(speed, c.span_length());
  const double length = mean * c.span_length();
  auto sigma_at = [&](std::ptrdiff_t j) {
    const std::ptrdiff_t w = ((j % n) + n) % n;
    const double lap = static_cast<double>((j - w) / n) * length;
    return mean * static_cast<double>(w) * dt + periodic[static_cast<std::size_t>(w)] - periodic[0] + lap;
  };

  // the left stencil excludes sample 0, so order 0 measures a true extrapolation across the seam
  auto side = [&](int dir, double spacing, std::vector<double>& sigma, std::vector<std::ptrdiff_t>& index) {
    sigma.clear();
    index.clear();
    if (dir > 0) {
      sigma.push_back(0.0);
      index.push_back(0);
    }
    double next = dir > 0 ? spacing : 0.0;
    for (std::ptrdiff_t j = 1; j < n / 4 && static_cast<int>(sigma.size()) < width; ++j) {
      const double x = sigma_at(dir * j);
      if (std::abs(x) >= next) {
        sigma.push_back(x);
        index.push_back(dir * j);
        next = std::abs(x) + spacing;
      }
    }
    return static_cast<int>(sigma.size()) == width;
  };
  auto row = [&](std::ptrdiff_t j) { return c.points.row(((j % n) + n) % n); };
  // jump vectors for every order at one node spacing; false once the stencil no longer fits
  auto jumps = [&](double spacing, std::vector<Eigen::RowVectorXd>& out) {
    std::vector<double> sl, sr;
    std::vector<std::ptrdiff_t> il, ir;
    if (!side(-1, spacing, sl, il) || !side(1, spacing, sr, ir)) return false;
    const Mat wl = fornberg_weights(0.0, sl, orders);
    const Mat wr = fornberg_weights(0.0, sr, orders);
    out.assign(static_cast<std::size_t>(orders) + 1, Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(c.dim)));
    for (int m = 0; m <= orders; ++m) {
      for (std::size_t j = 0; j < sl.size(); ++j) out[static_cast<std::size_t>(m)] += wl(m, static_cast<Eigen::Index>(j)) * row(il[j]);
      for (std::size_t j = 0; j < sr.size(); ++j) out[static_cast<std::size_t>(m)] -= wr(m, static_cast<Eigen::Index>(j)) * row(ir[j]);
    }
    return true;
  };

  // halve the spacing while the stencils fit; per order keep the estimate that agrees
  // best with its successor (truncation falls and roundoff grows as the spacing shrinks)
  std::vector<std::vector<Eigen::RowVectorXd>> levels;
  const double finest = dt * std::max(at(0).speed, at(-1).speed);
  for (double spacing = target; levels.size() < 40; spacing *= 0.5) {
    std::vector<Eigen::RowVectorXd> j;
    if (!jumps(spacing, j)) {
      if (levels.empty()) continue;
      break;
    }
    levels.push_back(std::move(j));
    if (spacing < finest) break;
  }
  std::vector<double> gaps(static_cast<std::size_t>(orders) + 1, std::numeric_limits<double>::infinity());
  if (levels.empty()) return gaps;
  for (int m = 0; m <= orders; ++m) {
    const auto mm = static_cast<std::size_t>(m);
    if (levels.size() == 1) {
      gaps[mm] = levels[0][mm].norm();
      continue;
    }
    double agreement = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
      const double diff = (levels[l][mm] - levels[l + 1][mm]).norm();
      if (diff < agreement) {
        agreement = diff;
        gaps[mm] = std::min(levels[l][mm].norm(), levels[l + 1][mm].norm());
      }
    }
  }
  return gaps;
}

Measurement measure(const SampledCurve& c, const CurvatureProfile& s, double eps, bool intersections) {
  c.validate();
  if (!c.closed) throw Error(ErrorCode::InvalidArgument, "closed curve required");
  if (c.dim != s.n() + 1) {
    throw Error(ErrorCode::InvalidArgument, "curve dimension " + std::to_string(c.dim) +
                                                " does not match profile with n = " + std::to_string(s.n()));
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  Measurement out;
  out.apparatus = analyze_curve(c);
  VerificationReport& r = out.report;
  r.eps = eps;
  r.max_curvature_deviation.assign(s.n(), 0.0);
  r.min_speed = std::numeric_limits<double>::infinity();
  for (const auto& a : out.apparatus) {
    const Vec target = s(a.t);
    for (std::size_t i = 0; i < s.n(); ++i) {
      const double dev = std::abs(a.kappas(static_cast<Eigen::Index>(i)) - target(static_cast<Eigen::Index>(i)));
      r.max_curvature_deviation[i] = std::max(r.max_curvature_deviation[i], std::isfinite(dev) ? dev : INFINITY);
    }
    r.frame_orthonormality = std::max(r.frame_orthonormality, orthonormality_residual(a.frame));
    r.min_speed = std::min(r.min_speed, a.speed);
  }
  r.closure_gaps = seam_gaps(c, out.apparatus, static_cast<int>(s.n()) + 1);
  if (intersections) r.self_intersections = self_intersections(c);
  r.passed = r.max_deviation() < eps;
  return out;
}

}  // namespace

// --- plan ------------------------------------------------------------------

double ApproximationPlan::gamma_length() const { return kTwoPi - 2.0 * bridge_half; }

Vec ApproximationPlan::modified(const CurvatureProfile& s, double t) const {
  Vec v = s(t);
  const double phi = smooth_plateau(wrap_signed(t - t0), plateau_half, u_half);
  if (phi != 0.0) v += phi * (k - v);
  return v;
}

ApproximationPlan choose_plan(const CurvatureProfile& s, double eps, const EpsBudget& fractions) {
  s.validate();
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  if (!(fractions.modify > 0.0 && fractions.bridge > 0.0 && fractions.stitch > 0.0) || fractions.sum() > 1.0 + 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "budget fractions must be positive with sum at most 1");
  }
  const std::size_t n = s.n();
  const auto last = static_cast<Eigen::Index>(n - 1);
  ApproximationPlan plan;
  plan.eps = eps;
  plan.budget = {fractions.modify * eps * kBudgetMargin, fractions.bridge * eps * kBudgetMargin,
                 fractions.stitch * eps * kBudgetMargin};

  const double dt = kTwoPi / static_cast<double>(kPlanGrid);
  std::vector<Vec> grid(kPlanGrid);
  std::size_t best = 0;
  double mean = 0.0;
  for (std::size_t j = 0; j < kPlanGrid; ++j) {
    grid[j] = s(static_cast<double>(j) * dt);
    mean += grid[j](last);
    if (std::abs(grid[j](last)) > std::abs(grid[best](last))) best = j;
  }
  mean /= static_cast<double>(kPlanGrid);
  plan.t0 = static_cast<double>(best) * dt;
  plan.k = grid[best];
  if (std::abs(plan.k(last)) < 0.25 * eps) {
    plan.k(last) = mean < 0.0 ? -0.25 * eps : 0.25 * eps;
    // the forced constant sits eps/4 from s_n, so the modification share must cover it
    const double need = 0.3 * eps;
    if (plan.budget.modify < need) {
      plan.budget.bridge -= need - plan.budget.modify;
      plan.budget.modify = need;
    }
  }

  auto fits = [&](std::size_t j) { return sup_diff(grid[j], plan.k) < plan.budget.modify; };
  const std::size_t cap = static_cast<std::size_t>(0.9 * std::numbers::pi / dt);
  std::size_t reach = 0;
  while (reach < cap) {
    const std::size_t next = reach + 1;
    if (!fits((best + next) % kPlanGrid) || !fits((best + kPlanGrid - next) % kPlanGrid)) break;
    reach = next;
  }
  if (reach < 8) {
    throw Error(ErrorCode::BudgetExceeded, "no arc around t0 keeps |s - k| within the modification budget");
  }
  plan.u_half = static_cast<double>(reach) * dt;
  plan.plateau_half = 0.8 * plan.u_half;
  plan.bridge_half = 0.85 * plan.plateau_half;
  plan.tau = wrap_unit(plan.t0 + plan.bridge_half);

  for (std::size_t m = 0; m <= reach; ++m) {
    for (const std::size_t j : {(best + m) % kPlanGrid, (best + kPlanGrid - m) % kPlanGrid}) {
      const double t = static_cast<double>(j) * dt;
      plan.modification_deviation = std::max(plan.modification_deviation, sup_diff(plan.modified(s, t), grid[j]));
    }
  }
  return plan;
}

Concentration concentrate(const ApproximationPlan& plan, const CurvatureProfile& s, std::size_t steps) {
  if (!(plan.delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma length delta must be positive");
  if (steps < SampledCurve::kMinSamples) throw Error(ErrorCode::InsufficientResolution, "too few gamma steps");
  const std::size_t d = s.n() + 1;
  const double scale = plan.gamma_length() / plan.delta;
  const double start = plan.tau;
  Concentration out;
  out.h = [start, scale](double sigma) { return start + scale * sigma; };

  std::vector<double> nodes(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) nodes[j] = plan.delta * static_cast<double>(j) / static_cast<double>(steps);
  nodes.back() = plan.delta;
  const auto h = out.h;
  auto kappa = [&](double sigma, std::span<double> k) {
    const Vec v = plan.modified(s, h(sigma));
    std::copy(v.data(), v.data() + v.size(), k.begin());
  };
  const auto dd = static_cast<Eigen::Index>(d);
  FrenetTrajectory traj =
      integrate_frenet(kappa, [](double) { return 1.0; }, Vec::Zero(dd), Frame::Identity(dd, dd), nodes);

  out.gamma.dim = d;
  out.gamma.closed = false;
  out.gamma.params = nodes;
  out.gamma.points.resize(static_cast<Eigen::Index>(nodes.size()), dd);
  for (std::size_t j = 0; j < nodes.size(); ++j) out.gamma.points.row(static_cast<Eigen::Index>(j)) = traj.points[j].transpose();
  out.frames = std::move(traj.frames);
  out.frame_gap = (out.frames.back() - out.frames.front()).lpNorm<Eigen::Infinity>();
  return out;
}

// --- verification ------------------------------------------------------------

double VerificationReport::max_deviation() const {
  double m = 0.0;
  for (const double v : max_curvature_deviation) m = std::max(m, v);
  return m;
}

VerificationReport verify(const SampledCurve& c, const CurvatureProfile& s, double eps) {
  return measure(c, s, eps, true).report;
}

// --- the construction ----------------------------------------------------------

namespace {

struct AttemptSettings {
  double delta = 0.0;
  double horizon = 0.0;
  double width_scale = 1.0;
};

Approximation attempt(const CurvatureProfile& s, ApproximationPlan plan, const AttemptSettings& set,
                      const ApproximateOptions& opts) {
  const std::size_t n = s.n();
  const std::size_t d = n + 1;
  const auto dd = static_cast<Eigen::Index>(d);
  plan.delta = set.delta;
  const std::span<const double> k(plan.k.data(), n);
  const double eps_bridge = plan.budget.bridge;

  BridgeOptions bo;
  bo.horizon = set.horizon;
  bo.verify = false;
  bo.max_candidates = opts.max_bridge_candidates;
  if (d % 2 == 1) bo.base = bent_base(k, 0.75 * eps_bridge);
  const Pose start{Vec::Zero(dd), Frame::Identity(dd, dd)};

  // find the bridge length on a coarse gamma
  const Concentration coarse = concentrate(plan, s, 4096);
  const Pose coarse_end{coarse.gamma.points.bottomRows(1).transpose(), coarse.frames.back()};
  const BridgeResult probe = bridge_to_pose(coarse_end, start, k, eps_bridge, bo);
  const double u = probe.u;

  // grid: bridge speed rises from v1 to v2 inside the bridge arc, v1 collars at both ends
  const auto spectrum = eigen_structure(build_frenet_matrix(k)).frequencies();
  const double b_max = std::max(1.0, *std::max_element(spectrum.begin(), spectrum.end()));
  const double bh = plan.bridge_half;
  auto phi2 = [](double x, double half) { return smooth_plateau(x, 0.5 * half, 0.8 * half); };
  const double v1_est = plan.delta / plan.gamma_length();
  const double mass_est = gauss8([&](double x) { return phi2(x, bh); }, -bh, 0.0) * 2.0;
  const double v2_est = v1_est + (u - 2.0 * bh * v1_est) / mass_est;
  const double wanted = opts.samples_per_turn * b_max * v2_est;
  std::size_t samples = std::max<std::size_t>(opts.min_samples, 16);
  while (static_cast<double>(samples) < wanted && samples < opts.max_samples) samples *= 2;
  if (static_cast<double>(samples) < wanted) {
    throw Error(ErrorCode::BudgetExceeded, "bridge of length " + std::to_string(u) + " needs more than " +
                                               std::to_string(opts.max_samples) + " samples");
  }
  const auto N = static_cast<std::ptrdiff_t>(samples);
  const double dt = kTwoPi / static_cast<double>(N);
  const std::ptrdiff_t tau_idx = static_cast<std::ptrdiff_t>(std::llround(plan.tau / dt)) % N;
  const double tau = static_cast<double>(tau_idx) * dt;
  const std::ptrdiff_t jg = std::llround(plan.gamma_length() / dt);
  if (jg <= 0 || jg >= N - 16) throw Error(ErrorCode::InsufficientResolution, "bridge arc spans too few samples");
  const double bh_eff = 0.5 * static_cast<double>(N - jg) * dt;
  const double v1 = plan.delta / (static_cast<double>(jg) * dt);

  // gamma on the final grid, starting at the pose `start` at tau
  std::vector<double> tg(static_cast<std::size_t>(jg + 1));
  for (std::ptrdiff_t m = 0; m <= jg; ++m) tg[static_cast<std::size_t>(m)] = tau + static_cast<double>(m) * dt;
  auto kappa = [&](double t, std::span<double> out) {
    const Vec v = plan.modified(s, t);
    std::copy(v.data(), v.data() + v.size(), out.begin());
  };
  const FrenetTrajectory gamma = integrate_frenet(kappa, [v1](double) { return v1; }, start.point, start.frame, tg);
  const Pose gamma_end{gamma.points.back(), gamma.frames.back()};

  // arclength nodes of the bridge on the same grid
  const std::ptrdiff_t nb = N - jg;
  std::vector<double> mass(static_cast<std::size_t>(nb + 1), 0.0);
  for (std::ptrdiff_t j = 0; j < nb; ++j) {
    const double a = -bh_eff + static_cast<double>(j) * dt;
    mass[static_cast<std::size_t>(j + 1)] =
        mass[static_cast<std::size_t>(j)] + gauss8([&](double x) { return phi2(x, bh_eff); }, a, a + dt);
  }
  const double v2 = v1 + (u - 2.0 * bh_eff * v1) / mass.back();
  if (!(v2 > 0.0)) throw Error(ErrorCode::InsufficientResolution, "bridge speed profile is not positive");
  std::vector<double> sigma(static_cast<std::size_t>(nb + 1));
  for (std::ptrdiff_t j = 0; j <= nb; ++j) {
    sigma[static_cast<std::size_t>(j)] = v1 * static_cast<double>(j) * dt + (v2 - v1) * mass[static_cast<std::size_t>(j)];
  }
  sigma.front() = 0.0;
  sigma.back() = u;

  BridgeOptions fine = bo;
  fine.length = u;
  fine.node_builder = [sigma](double) { return sigma; };
  fine.initial_coefficients = probe.perturbation.coefficients;
  const BridgeResult beta = bridge_to_pose(gamma_end, start, k, eps_bridge, fine);

  Approximation out;
  out.plan = plan;
  out.bridge_length = u;
  out.speed_ratio = v2 / v1;
  out.construction_closure_gap = beta.curve.points.bottomRows(1).norm();
  out.construction_frame_gap = (beta.frames.back() - start.frame).lpNorm<Eigen::Infinity>();

  // samples start at tau, so the stored seam is the stitch point
  SampledCurve& c = out.curve;
  c.dim = d;
  c.closed = true;
  c.params.resize(static_cast<std::size_t>(N));
  for (std::ptrdiff_t j = 0; j < N; ++j) c.params[static_cast<std::size_t>(j)] = tau + static_cast<double>(j) * dt;
  c.points.resize(N, dd);
  for (std::ptrdiff_t m = 0; m < N; ++m) {
    const Eigen::Index row = m;
    if (m <= jg) {
      c.points.row(row) = gamma.points[static_cast<std::size_t>(m)].transpose();
    } else {
      c.points.row(row) = beta.curve.points.row(m - jg);
    }
  }

  // stitch at tau against the constant-curvature helix through the junction pose
  const double gamma_collar = plan.t0 + plan.plateau_half - (tau < plan.t0 ? tau + kTwoPi : tau);
  const double protected_radius = std::min(wrap_signed(gamma_collar), 0.2 * bh_eff);
  const double h = std::min(kTwoPi / 64.0, protected_radius / 3.0) * set.width_scale;
  if (h < 4.0 * dt) throw Error(ErrorCode::InsufficientResolution, "mollifier width below four samples");
  const HelixSpec ref_spec = helix_from_constants(k, start.point, start.frame);
  Mat reference = c.points;
  const auto reach = static_cast<std::ptrdiff_t>(std::ceil(3.0 * h / dt));
  for (std::ptrdiff_t m = -reach; m <= reach; ++m) {
    const Eigen::Index row = (m + N) % N;
    reference.row(row) = eval_helix(ref_spec, v1 * static_cast<double>(m) * dt, 0).col(0).transpose();
  }
  const BlendWindow window{tau, h, protected_radius};
  c.points = mollify_blend(c.points, c.params, true, window, Mollifier(h), reference);
  out.mollifier_width = h;

  Measurement meas = measure(c, s, plan.eps, opts.detect_self_intersections);
  double stitch = 0.0;
  for (std::ptrdiff_t m = -reach; m <= reach; ++m) {
    if (std::abs(static_cast<double>(m) * dt) > 2.0 * h) continue;
    const auto& a = meas.apparatus[static_cast<std::size_t>((m + N) % N)];
    stitch = std::max(stitch, sup_diff(a.kappas, plan.k));
  }
  out.report = std::move(meas.report);
  out.stages = {{"modify", plan.modification_deviation, plan.budget.modify},
                {"bridge", beta.predicted_deviation, plan.budget.bridge},
                {"stitch", stitch, plan.budget.stitch}};
  // the shares only steer the retries; the verdict needs the measured curve and the stage total
  double total = 0.0;
  for (const auto& st : out.stages) total += st.deviation;
  out.passed = out.report.passed && total < plan.eps && out.construction_closure_gap < kClosureTolerance;
  return out;
}

void rebalance(EpsBudget& b, const std::string& stage) {
  constexpr double step = 0.05;
  constexpr double floor = 0.1;
  double* target = stage == "modify" ? &b.modify : stage == "stitch" ? &b.stitch : &b.bridge;
  for (double* other : {&b.modify, &b.bridge, &b.stitch}) {
    if (other == target || *other - step < floor) continue;
    *other -= step;
    *target += step;
  }
}

}  // namespace

Approximation approximate_best_effort(const CurvatureProfile& s, double eps, const ApproximateOptions& options) {
  if (options.deltas.empty() || options.max_retries < 1) {
    throw Error(ErrorCode::InvalidArgument, "retry schedule is empty");
  }
  EpsBudget fractions = options.budget;
  ApproximationPlan plan = choose_plan(s, eps, fractions);

  AttemptSettings set;
  set.horizon = options.horizon;
  Approximation best;
  std::vector<std::string> log;
  for (int a = 0; a < options.max_retries; ++a) {
    set.delta = options.deltas[static_cast<std::size_t>(a) % options.deltas.size()];
    std::ostringstream line;
    line << "attempt " << a + 1 << ": delta = " << set.delta << ", horizon = " << set.horizon
         << ", width scale = " << set.width_scale << ": ";
    try {
      Approximation r = attempt(s, plan, set, options);
      r.attempts = a + 1;
      if (r.passed) {
        line << "passed, max deviation " << r.report.max_deviation();
        for (const auto& st : r.stages) {
          if (st.deviation >= st.budget) line << "; " << st.name << " over its share (" << st.deviation << " / " << st.budget << ")";
        }
        log.push_back(line.str());
        r.log = std::move(log);
        return r;
      }
      std::string failing = "verify";
      for (const auto& st : r.stages) {
        if (st.deviation >= st.budget) {
          failing = st.name;
          break;
        }
      }
      line << "failed at " << failing << ", max deviation " << r.report.max_deviation();
      if (failing == "stitch") set.width_scale *= 0.5;
      if (failing != "verify") {
        rebalance(fractions, failing);
        plan = choose_plan(s, eps, fractions);
      }
      best = std::move(r);
    } catch (const Error& e) {
      switch (e.code()) {
        case ErrorCode::BudgetExceeded:
        case ErrorCode::NotFound:
        case ErrorCode::GapTooLarge:
          set.horizon *= 2.0;
          rebalance(fractions, "bridge");
          plan = choose_plan(s, eps, fractions);
          break;
        case ErrorCode::InsufficientResolution:
        case ErrorCode::WidthTooLarge:
          set.width_scale *= 0.5;
          break;
        default:
          throw;
      }
      line << e.what();
    }
    log.push_back(line.str());
  }
  best.plan = best.curve.size() != 0 ? best.plan : plan;
  best.attempts = options.max_retries;
  best.passed = false;
  best.log = std::move(log);
  return best;
}

Approximation approximate(const CurvatureProfile& s, double eps, const ApproximateOptions& options) {
  Approximation r = approximate_best_effort(s, eps, options);
  if (!r.passed) {
    std::string msg = "no attempt met the budget";
    if (!r.log.empty()) msg += "; last: " + r.log.back();
    throw Error(ErrorCode::BudgetExceeded, msg);
  }
  return r;
}

}  // namespace frenet
