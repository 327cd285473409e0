#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hardy {

enum class ErrorCode {
  InvalidParameters,
  PointOutsideDomain,
  PointInsideDomain,
  UnboundedDomainNoRegion,
  OutOfRange,
  PreconditionViolated,
  NoApplicableBound,
  DomainViolation,
  ZeroArgument,
  BranchCutHit,
  DegenerateDerivative,
  MeshFailure,
  QuadraturePointOutsideDomain,
  NoConvergence,
  SupportNotContained,
  SpecParse,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A hypothesis of the form `lhs <= rhs` (or `lhs < rhs`) did not hold.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, double lhs, double rhs)
      : Error(ErrorCode::PreconditionViolated, what), lhs_(lhs), rhs_(rhs) {}

  double lhs() const noexcept { return lhs_; }
  double rhs() const noexcept { return rhs_; }

 private:
  double lhs_;
  double rhs_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace hardy
