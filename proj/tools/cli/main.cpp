#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "io.hpp"

#include "frenet/error.hpp"

namespace {

using frenet::cli::ParseError;
using nlohmann::json;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kDegenerate = 3, kBudget = 4 };

int exit_for(frenet::ErrorCode code) {
  using frenet::ErrorCode;
  switch (code) {
    case ErrorCode::DegenerateFrame:
    case ErrorCode::DegenerateSpectrum:
    case ErrorCode::NotADiffeomorphism:
      return kDegenerate;
    case ErrorCode::BudgetExceeded:
    case ErrorCode::GapTooLarge:
    case ErrorCode::WidthTooLarge:
    case ErrorCode::NotFound:
    case ErrorCode::RetriesExhausted:
      return kBudget;
    default:
      return kUsage;
  }
}

void emit(const std::string& path, const json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    frenet::cli::write_text(path, text);
  }
}

void check_profile_fits(const frenet::CurvatureProfile& p, const frenet::SampledCurve& c) {
  if (p.n() + 1 != c.dim) {
    throw ParseError("profile has " + std::to_string(p.n()) + " components but the curve lives in R^" + std::to_string(c.dim));
  }
}

struct AnalyzeArgs {
  std::string in, out, report;
  std::size_t samples = 0;
  std::size_t order = 0;
};

int run_analyze(const AnalyzeArgs& a) {
  frenet::SampledCurve c = frenet::cli::read_curve(a.in);
  frenet::cli::normalize_period(c);
  const auto app = frenet::analyze_curve(c);
  const std::size_t n = c.dim - 1;
  const std::size_t order = a.order ? a.order : n;
  if (order > n) throw ParseError("--order exceeds the number of curvatures (" + std::to_string(n) + ")");

  const frenet::Mat table = frenet::curvature_table(app);
  std::vector<std::vector<double>> comps(order);
  const std::size_t m = a.samples ? a.samples : c.size();
  for (std::size_t i = 0; i < order; ++i) {
    std::vector<double> col(table.rows());
    for (Eigen::Index j = 0; j < table.rows(); ++j) col[static_cast<std::size_t>(j)] = table(j, static_cast<Eigen::Index>(i));
    if (m == c.size()) {
      comps[i] = std::move(col);
    } else {
      if (!c.closed) throw ParseError("--samples resampling needs a closed curve");
      const frenet::TrigInterpolant f(col);
      for (std::size_t j = 0; j < m; ++j) comps[i].push_back(f(2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m)));
    }
  }
  json profile = {{"n", order}, {"kind", "table"}, {"components", comps}};

  double min_speed = HUGE_VAL, max_speed = 0.0, residual = 0.0;
  std::vector<double> speeds;
  for (const auto& p : app) {
    min_speed = std::min(min_speed, p.speed);
    max_speed = std::max(max_speed, p.speed);
    residual = std::max(residual, frenet::orthonormality_residual(p.frame));
    speeds.push_back(p.speed);
  }
  json report = {{"samples", c.size()},     {"dim", c.dim},           {"closed", c.closed},
                 {"min_speed", min_speed},  {"max_speed", max_speed}, {"max_frame_residual", residual},
                 {"speed", speeds}};
  emit(a.out, profile);
  if (!a.report.empty()) emit(a.report, report);
  return kPass;
}

struct ApproximateArgs {
  std::string in, out, report;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  std::optional<double> modify, bridge, stitch;
};

int run_approximate(const ApproximateArgs& a) {
  if (!(a.eps > 0.0)) throw ParseError("--eps must be positive");
  const auto s = frenet::cli::read_profile(a.in);
  frenet::ApproximateOptions opts;
  if (a.modify) opts.budget.modify = *a.modify;
  if (a.bridge) opts.budget.bridge = *a.bridge;
  if (a.stitch) opts.budget.stitch = *a.stitch;
  if (a.steps) opts.min_samples = a.steps;
  frenet::Approximation r;
  try {
    r = frenet::approximate_best_effort(s, a.eps, opts);
  } catch (const frenet::Error& e) {
    // no attempt got as far as a curve; the report still records why
    if (!a.report.empty() && exit_for(e.code()) == kBudget) {
      emit(a.report, json{{"passed", false}, {"error", e.what()}, {"eps", a.eps}});
    }
    throw;
  }

  // crossings left by the construction go through the seeded embedding pass
  json embedding = nullptr;
  if (r.passed && r.curve.dim >= 3 && !r.report.self_intersections.empty()) {
    const double slack = a.eps - r.report.max_deviation();
    try {
      const auto e = frenet::perturb_to_embedding(r.curve, slack, a.seed);
      r.curve = e.curve;
      r.report = frenet::verify(r.curve, s, a.eps);
      r.passed = r.report.passed;
      embedding = {{"draws", e.draws}, {"curvature_change", e.curvature_change}, {"seed", a.seed}};
    } catch (const frenet::Error& e) {
      embedding = {{"error", e.what()}, {"seed", a.seed}};
      r.passed = false;
    }
  }
  json report = frenet::cli::approximation_json(r);
  report["embedding"] = embedding;
  if (!a.out.empty() && r.passed) frenet::cli::write_curve(a.out, r.curve);
  if (!a.report.empty()) emit(a.report, report);
  if (!r.passed) {
    std::cerr << "approximate: no attempt met eps = " << a.eps << " (max deviation " << r.report.max_deviation() << ")\n";
    return kBudget;
  }
  return kPass;
}

struct HelixArgs {
  std::vector<double> k;
  std::string out, spec;
  double periods = 1.0;
  std::size_t samples = 1024;
  std::optional<double> return_delta;
  double horizon = 2000.0;
};

int run_helix(const HelixArgs& a) {
  if (a.k.empty()) throw ParseError("--k needs at least one curvature");
  const auto d = static_cast<Eigen::Index>(a.k.size() + 1);
  const auto h = frenet::helix_from_constants(a.k, frenet::Vec::Zero(d), frenet::Frame::Identity(d, d));
  json doc = frenet::cli::helix_json(h);
  if (a.return_delta) {
    const auto ret = frenet::return_search(h, *a.return_delta, static_cast<int>(h.dim), a.horizon);
    doc["return"] = {{"delta", *a.return_delta}, {"u", ret.u}, {"gap", ret.gap}};
  }
  // a period of the slowest plane; only the planar circle closes up exactly
  const double b_min = *std::min_element(h.frequencies.begin(), h.frequencies.end());
  const double length = a.periods * 2.0 * std::numbers::pi / b_min;
  const bool closed = h.dim == 2 && a.periods == std::round(a.periods);
  const frenet::SampledCurve c = frenet::sample_helix(h, 0.0, length, a.samples, closed);
  if (!a.out.empty()) frenet::cli::write_curve(a.out, c);
  emit(a.spec, doc);
  return kPass;
}

struct VerifyArgs {
  std::string curve, profile, out;
  double eps = 0.0;
};

int run_verify(const VerifyArgs& a) {
  if (!(a.eps > 0.0)) throw ParseError("--eps must be positive");
  frenet::SampledCurve c = frenet::cli::read_curve(a.curve);
  if (!c.closed) throw ParseError("closed curve required");
  frenet::cli::normalize_period(c);
  const auto s = frenet::cli::read_profile(a.profile);
  check_profile_fits(s, c);
  const auto r = frenet::verify(c, s, a.eps);
  emit(a.out, frenet::cli::report_json(r));
  return r.passed ? kPass : kFail;
}

struct PlotArgs {
  std::string curve, out;
  std::vector<int> plane = {0, 1};
  int size = 512;
};

int run_plot(const PlotArgs& a) {
  const frenet::SampledCurve c = frenet::cli::read_curve(a.curve);
  if (a.plane.size() != 2) throw ParseError("--plane takes two indices");
  for (int p : a.plane) {
    if (p < 0 || static_cast<std::size_t>(p) >= c.dim) throw ParseError("plane index " + std::to_string(p) + " out of range for dim " + std::to_string(c.dim));
  }
  if (a.plane[0] == a.plane[1]) throw ParseError("plane indices must differ");
  if (a.size < 64) throw ParseError("--size must be at least 64");
  frenet::cli::PlotOptions o;
  o.plane_x = a.plane[0];
  o.plane_y = a.plane[1];
  o.size = a.size;
  frenet::cli::write_text(a.out, frenet::cli::render_svg(c, o));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frenet: curvature analysis and holonomic approximation of closed curves"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Frenet apparatus of a sampled curve, written as a table profile");
  analyze->add_option("curve", an.in, "curve file (.json or .csv)")->required();
  analyze->add_option("--out", an.out, "profile output (stdout when omitted)");
  analyze->add_option("--report", an.report, "JSON report with speeds and frame residuals");
  analyze->add_option("--samples", an.samples, "table length (closed curves are resampled trigonometrically)");
  analyze->add_option("--order", an.order, "number of curvatures to keep");

  ApproximateArgs ap;
  auto* approx = app.add_subcommand("approximate", "closed curve whose curvatures stay within eps of a profile");
  approx->add_option("profile", ap.in, "profile file")->required();
  approx->add_option("--eps", ap.eps, "tolerance")->required();
  approx->add_option("--out", ap.out, "curve output");
  approx->add_option("--report", ap.report, "JSON report");
  approx->add_option("--seed", ap.seed, "seed of the embedding pass");
  approx->add_option("--steps", ap.steps, "minimum number of output samples");
  approx->add_option("--budget-modify", ap.modify, "eps fraction for the profile modification");
  approx->add_option("--budget-bridge", ap.bridge, "eps fraction for the bridge");
  approx->add_option("--budget-stitch", ap.stitch, "eps fraction for the stitch");

  HelixArgs hx;
  auto* helix = app.add_subcommand("helix", "constant-curvature curve from its curvatures");
  helix->add_option("--k", hx.k, "curvatures k1,...,kn")->required()->delimiter(',');
  helix->add_option("--out", hx.out, "sampled curve output");
  helix->add_option("--spec", hx.spec, "helix description (stdout when omitted)");
  helix->add_option("--periods", hx.periods, "periods of the slowest plane to sample");
  helix->add_option("--samples", hx.samples, "number of samples");
  helix->add_option("--return-delta", hx.return_delta, "also search the first return with jet gap below this");
  helix->add_option("--horizon", hx.horizon, "return search horizon");

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "check a closed curve against a profile");
  verify->add_option("curve", vf.curve, "curve file")->required();
  verify->add_option("profile", vf.profile, "profile file")->required();
  verify->add_option("--eps", vf.eps, "tolerance")->required();
  verify->add_option("--out", vf.out, "report output (stdout when omitted)");

  PlotArgs pl;
  auto* plot = app.add_subcommand("plot", "SVG of a coordinate-plane projection");
  plot->add_option("curve", pl.curve, "curve file")->required();
  plot->add_option("--out", pl.out, "SVG output")->required();
  plot->add_option("--plane", pl.plane, "coordinate indices i,j")->delimiter(',');
  plot->add_option("--size", pl.size, "image size in pixels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*analyze) return run_analyze(an);
    if (*approx) return run_approximate(ap);
    if (*helix) return run_helix(hx);
    if (*verify) return run_verify(vf);
    if (*plot) return run_plot(pl);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const frenet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
