#include "frenet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "frenet/error.hpp"

namespace frenet {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveCurvature: return "NonPositiveCurvature";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::InsufficientResolution: return "InsufficientResolution";
    case ErrorCode::WidthTooLarge: return "WidthTooLarge";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::NotADiffeomorphism: return "NotADiffeomorphism";
    case ErrorCode::GapTooLarge: return "GapTooLarge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
  }
  return "Unknown";
}

SkewFrenetMatrix::SkewFrenetMatrix(std::vector<double> kappas) : kappas_(std::move(kappas)) {
  const auto d = static_cast<Eigen::Index>(kappas_.size() + 1);
  matrix_ = Mat::Zero(d, d);
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    matrix_(i, i + 1) = kappas_[static_cast<std::size_t>(i)];
    matrix_(i + 1, i) = -kappas_[static_cast<std::size_t>(i)];
  }
}

SkewFrenetMatrix SkewFrenetMatrix::from_curvatures(std::span<const double> kappas) {
  if (kappas.empty()) {
    throw Error(ErrorCode::InvalidArgument, "at least one curvature is required");
  }
  for (std::size_t i = 0; i + 1 < kappas.size(); ++i) {
    if (!(kappas[i] > 0.0)) {
      throw Error(ErrorCode::NonPositiveCurvature,
                  "kappa_" + std::to_string(i + 1) + " = " + std::to_string(kappas[i]) + " must be positive");
    }
  }
  for (double k : kappas) {
    if (!std::isfinite(k)) throw Error(ErrorCode::InvalidArgument, "curvature is not finite");
  }
  return SkewFrenetMatrix(std::vector<double>(kappas.begin(), kappas.end()));
}

SkewFrenetMatrix SkewFrenetMatrix::unchecked(std::span<const double> kappas) {
  return SkewFrenetMatrix(std::vector<double>(kappas.begin(), kappas.end()));
}

SkewFrenetMatrix build_frenet_matrix(std::span<const double> kappas) {
  return SkewFrenetMatrix::from_curvatures(kappas);
}

std::vector<double> EigenStructure::frequencies() const {
  std::vector<double> out;
  out.reserve(planes.size());
  for (const auto& p : planes) out.push_back(p.frequency);
  return out;
}

Mat EigenStructure::reassemble(std::size_t dim) const {
  const auto d = static_cast<Eigen::Index>(dim);
  Mat k = Mat::Zero(d, d);
  for (const auto& p : planes) {
    k += p.frequency * (p.w * p.u.transpose() - p.u * p.w.transpose());
  }
  return k;
}

EigenStructure eigen_structure(const SkewFrenetMatrix& frenet) {
  const Mat& k = frenet.matrix();
  const Eigen::Index d = k.rows();
  const Mat m = k.transpose() * k;  // = -K^2
  Eigen::SelfAdjointEigenSolver<Mat> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::DegenerateSpectrum, "symmetric eigensolver failed");
  }
  const Vec& values = solver.eigenvalues();  // ascending
  const Mat& vectors = solver.eigenvectors();
  const double max_b2 = values(d - 1);
  if (!(max_b2 > 0.0)) throw Error(ErrorCode::DegenerateSpectrum, "zero Frenet matrix");
  const double floor = kRelativeSpectrumFloor * max_b2;

  Eigen::Index zeros = 0;
  while (zeros < d && values(zeros) < floor) ++zeros;
  const Eigen::Index expected_zeros = d % 2;
  if (zeros != expected_zeros) {
    throw Error(ErrorCode::DegenerateSpectrum,
                "expected " + std::to_string(expected_zeros) + " zero frequencies, found " + std::to_string(zeros) +
                    " (last curvature too close to zero?)");
  }

  EigenStructure out;
  std::vector<Vec> used;
  for (Eigen::Index idx = d - 1; idx >= zeros; --idx) {
    Vec u = vectors.col(idx);
    for (const Vec& q : used) u -= q.dot(u) * q;
    const double norm = u.norm();
    if (norm < 0.5) continue;  // already covered by a plane of a repeated frequency
    u /= norm;
    const double b = std::sqrt(values(idx));
    Vec w = k * u / b;
    for (const Vec& q : used) w -= q.dot(w) * q;
    w -= u.dot(w) * u;
    w.normalize();
    used.push_back(u);
    used.push_back(w);
    out.planes.push_back(InvariantPlane{b, std::move(u), std::move(w)});
  }
  if (zeros == 1) {
    Vec z = vectors.col(0);
    for (const Vec& q : used) z -= q.dot(z) * q;
    z.normalize();
    const double lead = std::abs(z(0)) > 1e-12 ? z(0) : z(d - 1);
    if (lead < 0) z = -z;
    out.kernel_axis = std::move(z);
  }
  return out;
}

Mat expm(const Mat& a) {
  Mat out = a.exp();
  return out;
}

Frame frame_step(const Frame& frame, std::span<const double> kappas_mid, double speed, double h) {
  if (h == 0.0) return frame;
  const auto k = SkewFrenetMatrix::unchecked(kappas_mid);
  return frame * expm((speed * h) * k.matrix().transpose());
}

void pose_step(Vec& point, Frame& frame, std::span<const double> kappas_mid, double speed, double h) {
  if (h == 0.0) return;
  const Eigen::Index d = frame.rows();
  const double s = speed * h;
  Mat g = Mat::Zero(d + 1, d + 1);
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    const double kv = s * kappas_mid[static_cast<std::size_t>(i)];
    g(i + 1, i) = kv;  // K^T
    g(i, i + 1) = -kv;
  }
  g(0, d) = s;
  const Mat e = expm(g);
  point += frame * e.topRightCorner(d, 1);
  frame = frame * e.topLeftCorner(d, d);
}

double orthonormality_residual(const Frame& frame) {
  const Mat r = frame.transpose() * frame - Mat::Identity(frame.cols(), frame.cols());
  return r.cwiseAbs().maxCoeff();
}

}  // namespace frenet
