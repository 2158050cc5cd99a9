#pragma once

#include <stdexcept>
#include <string>

namespace fchs {

enum class ErrorCode {
  DimensionMismatch,
  HermitianViolation,
  InvalidArgument,
  Domain,
  SupportViolation,
  BlowUp,
  Config,
  Io,
  BadMagic,
  BadVersion,
  BadChecksum,
  InvariantViolation,
  NonMonotoneConvergence,
};

const char* to_string(ErrorCode code) noexcept;

/// Structured error carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// Raised when a time step produces non-finite coefficients.
class BlowUpError : public Error {
public:
  BlowUpError(double t, double norm, double last_good_t, const std::string& what)
      : Error(ErrorCode::BlowUp, what), t_(t), norm_(norm), last_good_t_(last_good_t) {}

  double time() const noexcept { return t_; }
  double offending_norm() const noexcept { return norm_; }
  double last_good_time() const noexcept { return last_good_t_; }

  // Filled in by callers that persisted the last good state.
  std::string checkpoint_path;

private:
  double t_;
  double norm_;
  double last_good_t_;
};

}  // namespace fchs
