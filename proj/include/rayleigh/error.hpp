#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rayleigh {

enum class ErrorCode {
  MissingField,
  NonFinite,
  ParseError,
  NotStronglyElliptic,
  IndistinctRoots,
  DomainError,
  CommonRoot,
  InadmissibleSpeed,
  NonDecaying,
  UnsupportedCoupling,
  DegenerateKernel,
  Unclassified,
  ModeFailure,
  NotARoot,
  InvalidWindow,
  AllPointsFailed,
  StartFailure,
  WrongCase,
  DegenerateRoots,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Every failure raised by the solver carries one of the codes above; the
/// CLI prints error_name() so scripts can match on it.
class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

/// Raised for grid points and objective evaluations; keeps the upstream code.
class ModeFailure : public SolverError {
 public:
  explicit ModeFailure(const SolverError& cause);

  ErrorCode cause() const noexcept { return cause_; }

 private:
  ErrorCode cause_;
};

}  // namespace rayleigh
