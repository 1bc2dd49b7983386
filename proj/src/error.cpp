#include "rayleigh/error.hpp"

namespace rayleigh {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotStronglyElliptic: return "NotStronglyElliptic";
    case ErrorCode::IndistinctRoots: return "IndistinctRoots";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::CommonRoot: return "CommonRoot";
    case ErrorCode::InadmissibleSpeed: return "InadmissibleSpeed";
    case ErrorCode::NonDecaying: return "NonDecaying";
    case ErrorCode::UnsupportedCoupling: return "UnsupportedCoupling";
    case ErrorCode::DegenerateKernel: return "DegenerateKernel";
    case ErrorCode::Unclassified: return "Unclassified";
    case ErrorCode::ModeFailure: return "ModeFailure";
    case ErrorCode::NotARoot: return "NotARoot";
    case ErrorCode::InvalidWindow: return "InvalidWindow";
    case ErrorCode::AllPointsFailed: return "AllPointsFailed";
    case ErrorCode::StartFailure: return "StartFailure";
    case ErrorCode::WrongCase: return "WrongCase";
    case ErrorCode::DegenerateRoots: return "DegenerateRoots";
  }
  return "Unknown";
}

SolverError::SolverError(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

ModeFailure::ModeFailure(const SolverError& cause)
    : SolverError(ErrorCode::ModeFailure, cause.what()), cause_(cause.code()) {}

}  // namespace rayleigh
