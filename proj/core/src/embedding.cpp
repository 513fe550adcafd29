#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/QR>

#include "frenet/error.hpp"
#include "frenet/pipeline.hpp"

namespace frenet {
namespace {

constexpr int kMaxDraws = 32;

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double normal(std::mt19937_64& rng) {
  // Box-Muller on the library-independent uniform draw keeps runs reproducible across platforms
  const double a = 1.0 - uniform01(rng);
  const double b = uniform01(rng);
  return std::sqrt(-2.0 * std::log(a)) * std::cos(2.0 * 3.14159265358979323846 * b);
}

struct Closest {
  double distance = 0.0;
  double s = 0.0;  // fraction along the first segment
  double t = 0.0;  // fraction along the second
};

// Closest points of segments p0 + s d1 and q0 + t d2, s, t in [0, 1].
Closest segment_distance(const Eigen::RowVectorXd& p0, const Eigen::RowVectorXd& p1, const Eigen::RowVectorXd& q0,
                         const Eigen::RowVectorXd& q1) {
  const Eigen::RowVectorXd d1 = p1 - p0;
  const Eigen::RowVectorXd d2 = q1 - q0;
  const Eigen::RowVectorXd r = p0 - q0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  double s = 0.0;
  double t = 0.0;
  if (a <= 0.0 && e <= 0.0) {
    // both degenerate
  } else if (a <= 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return {(p0 + s * d1 - q0 - t * d2).norm(), s, t};
}

double bump(double x) { return std::abs(x) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - x * x)) : 0.0; }

Mat curvatures(const SampledCurve& c) { return curvature_table(analyze_curve(c)); }

}  // namespace

std::vector<double> chord_arclength(const SampledCurve& c) {
  const auto n = static_cast<Eigen::Index>(c.size());
  std::vector<double> s(static_cast<std::size_t>(n) + 1, 0.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index next = j + 1 < n ? j + 1 : 0;
    const double step = (j + 1 < n || c.closed) ? (c.points.row(next) - c.points.row(j)).norm() : 0.0;
    s[static_cast<std::size_t>(j) + 1] = s[static_cast<std::size_t>(j)] + step;
  }
  return s;
}

std::vector<SelfIntersection> self_intersections(const SampledCurve& c, const IntersectionOptions& options) {
  c.validate();
  const double tol = options.tolerance;
  const double separation = options.min_arclength_separation > 0.0 ? options.min_arclength_separation : 100.0 * tol;
  const auto n = static_cast<Eigen::Index>(c.size());
  const Eigen::Index segments = c.closed ? n : n - 1;
  const std::vector<double> arc = chord_arclength(c);
  const double total = arc.back();
  const auto dim = static_cast<Eigen::Index>(c.dim);

  auto end = [&](Eigen::Index j) { return j + 1 < n ? j + 1 : 0; };
  Mat lo(segments, dim);
  Mat hi(segments, dim);
  for (Eigen::Index j = 0; j < segments; ++j) {
    lo.row(j) = c.points.row(j).cwiseMin(c.points.row(end(j))).array() - tol;
    hi.row(j) = c.points.row(j).cwiseMax(c.points.row(end(j))).array() + tol;
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(segments));
  for (Eigen::Index j = 0; j < segments; ++j) order[static_cast<std::size_t>(j)] = j;
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return lo(a, 0) < lo(b, 0) || (lo(a, 0) == lo(b, 0) && a < b);
  });

  struct Hit {
    Eigen::Index i, j;
    Closest at;
  };
  std::vector<Hit> hits;
  std::vector<Eigen::Index> active;
  for (const Eigen::Index cur : order) {
    std::erase_if(active, [&](Eigen::Index a) { return hi(a, 0) < lo(cur, 0); });
    for (const Eigen::Index other : active) {
      bool overlap = true;
      for (Eigen::Index k = 1; k < dim && overlap; ++k) overlap = lo(cur, k) <= hi(other, k) && lo(other, k) <= hi(cur, k);
      if (!overlap) continue;
      const Eigen::Index i = std::min(cur, other);
      const Eigen::Index j = std::max(cur, other);
      if (j - i <= 1 || (c.closed && i == 0 && j == segments - 1)) continue;
      double along = arc[static_cast<std::size_t>(j)] - arc[static_cast<std::size_t>(i)];
      if (c.closed) along = std::min(along, total - along);
      if (along < separation) continue;
      const Closest cl = segment_distance(c.points.row(i), c.points.row(end(i)), c.points.row(j), c.points.row(end(j)));
      if (cl.distance < tol) hits.push_back({i, j, cl});
    }
    active.push_back(cur);
  }

  // neighbouring segment pairs around one crossing collapse to the closest pair
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.at.distance < b.at.distance || (a.at.distance == b.at.distance && (a.i < b.i || (a.i == b.i && a.j < b.j)));
  });
  auto near = [&](Eigen::Index a, Eigen::Index b) {
    Eigen::Index steps = a > b ? a - b : b - a;
    if (c.closed) steps = std::min(steps, segments - steps);
    if (steps <= 2) return true;
    double along = std::abs(arc[static_cast<std::size_t>(a)] - arc[static_cast<std::size_t>(b)]);
    if (c.closed) along = std::min(along, total - along);
    return along < separation;
  };
  std::vector<Hit> kept;
  for (const Hit& h : hits) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const Hit& k) {
      return (near(h.i, k.i) && near(h.j, k.j)) || (near(h.i, k.j) && near(h.j, k.i));
    });
    if (!dup) kept.push_back(h);
  }
  const double dt = c.spacing();
  std::vector<SelfIntersection> out;
  for (const Hit& h : kept) {
    out.push_back({c.params[static_cast<std::size_t>(h.i)] + h.at.s * dt, c.params[static_cast<std::size_t>(h.j)] + h.at.t * dt,
                   h.at.distance});
  }
  std::sort(out.begin(), out.end(), [](const SelfIntersection& a, const SelfIntersection& b) {
    return a.t1 < b.t1 || (a.t1 == b.t1 && a.t2 < b.t2);
  });
  return out;
}

EmbeddingResult perturb_to_embedding(const SampledCurve& c, double eps_slack, std::uint64_t seed, bool throw_planar) {
  c.validate();
  if (!c.closed) throw Error(ErrorCode::InvalidArgument, "closed curve required");
  if (!(eps_slack > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps_slack must be positive");
  EmbeddingResult result;
  result.curve = c;
  if (c.dim == 2) {
    if (throw_planar) throw Error(ErrorCode::NotApplicable, "planar curves are out of scope for the embedding pass");
    result.planar = true;
    result.remaining = self_intersections(c);
    return result;
  }
  const std::vector<SelfIntersection> hits = self_intersections(c);
  if (hits.empty()) return result;

  const auto n = static_cast<Eigen::Index>(c.size());
  const auto dim = static_cast<Eigen::Index>(c.dim);
  const std::vector<double> arc = chord_arclength(c);
  const double total = arc.back();
  const double dt = c.spacing();
  const auto app = analyze_curve(c);
  const Mat base = curvature_table(app);

  std::mt19937_64 rng(seed);
  double amplitude = 1e-4;
  for (int draw = 1; draw <= kMaxDraws; ++draw) {
    SampledCurve trial = c;
    for (const auto& hit : hits) {
      const double pick = uniform01(rng) < 0.5 ? hit.t1 : hit.t2;
      const auto centre = static_cast<Eigen::Index>(std::llround((pick - c.params.front()) / dt)) % n;
      const auto& a1 = app[static_cast<std::size_t>(centre)];
      const double other_t = pick == hit.t1 ? hit.t2 : hit.t1;
      const auto other = static_cast<Eigen::Index>(std::llround((other_t - c.params.front()) / dt)) % n;
      const Vec t1 = a1.frame.col(0);
      const Vec t2 = app[static_cast<std::size_t>(other)].frame.col(0);

      // random direction normal to both tangents
      Vec dir(dim);
      for (Eigen::Index k = 0; k < dim; ++k) dir(k) = normal(rng);
      Mat span(dim, 2);
      span << t1, t2;
      const Eigen::HouseholderQR<Mat> qr(span);
      const Mat q = qr.householderQ() * Mat::Identity(dim, 2);
      dir -= q * (q.transpose() * dir);
      if (dir.norm() < 1e-12) dir = q.col(0);
      dir.normalize();

      const double kmax = std::max(1e-3, a1.kappas.cwiseAbs().maxCoeff());
      const double local = a1.speed * dt;
      const double s0 = arc[static_cast<std::size_t>(centre)];
      double apart = std::abs(arc[static_cast<std::size_t>(other)] - s0);
      apart = std::min(apart, total - apart);
      // the bump must leave the other strand where it is
      const double width = std::min(std::max(2.0 / kmax, 32.0 * local), 0.25 * apart);
      const double amp = amplitude * (0.5 + 0.5 * uniform01(rng));
      for (Eigen::Index j = 0; j < n; ++j) {
        double x = arc[static_cast<std::size_t>(j)] - s0;
        x -= total * std::round(x / total);
        const double w = bump(x / width);
        if (w != 0.0) trial.points.row(j) += amp * w * dir.transpose();
      }
    }
    const Mat k = curvatures(trial);
    const double change = (k - base).cwiseAbs().maxCoeff();
    const auto remaining = self_intersections(trial);
    result.draws = draw;
    if (remaining.empty() && change < eps_slack) {
      result.curve = std::move(trial);
      result.curvature_change = change;
      result.remaining.clear();
      return result;
    }
    if (change >= eps_slack) {
      amplitude *= 0.5;
    } else {
      amplitude *= 2.0;
    }
  }
  throw Error(ErrorCode::RetriesExhausted, "no embedding within the curvature slack after 32 draws");
}

}  // namespace frenet
