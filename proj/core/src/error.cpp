#include "mlfc/error.hpp"

namespace mlfc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::OutsideValidity: return "OutsideValidity";
    case ErrorKind::OutsideSector: return "OutsideSector";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::NotCertifiable: return "NotCertifiable";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::TailBoundFailure: return "TailBoundFailure";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::SvgError: return "SvgError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
      kind_(kind) {}

bool is_numerical_failure(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFinite:
    case ErrorKind::ToleranceUnreachable:
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::OutsideValidity:
    case ErrorKind::QuadratureFailure:
    case ErrorKind::TailBoundFailure:
    case ErrorKind::BudgetExceeded:
    case ErrorKind::DegenerateFit:
    case ErrorKind::NotCertifiable:
      return true;
    default:
      return false;
  }
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace mlfc
