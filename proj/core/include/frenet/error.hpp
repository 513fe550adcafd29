#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frenet {

enum class ErrorCode {
  InvalidArgument,
  NonPositiveCurvature,
  DegenerateSpectrum,
  InsufficientResolution,
  WidthTooLarge,
  DegenerateFrame,
  NotADiffeomorphism,
  GapTooLarge,
  BudgetExceeded,
  NotFound,
  NotApplicable,
  RetriesExhausted,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// front ends can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the frame construction at a non-Frenet point.
class DegenerateFrameError : public Error {
 public:
  DegenerateFrameError(double t, const std::string& message)
      : Error(ErrorCode::DegenerateFrame, message + " (t = " + std::to_string(t) + ")"), t_(t) {}

  double parameter() const noexcept { return t_; }

 private:
  double t_;
};

}  // namespace frenet
