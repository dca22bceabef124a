#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mlfc {

enum class ErrorKind {
  NonFinite,
  ToleranceUnreachable,
  PrecisionExhausted,
  OutsideValidity,
  OutsideSector,
  UnsupportedOrder,
  NotCertifiable,
  QuadratureFailure,
  TailBoundFailure,
  BudgetExceeded,
  HypothesisViolation,
  DegenerateFit,
  SvgError,
  InvalidArgument,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Numerical failures are reported by the CLI with a distinct exit code.
bool is_numerical_failure(ErrorKind kind);

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace mlfc
