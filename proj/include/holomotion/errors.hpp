#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holomotion {

/// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class ErrorKind {
  PreconditionViolated,
  ParseError,
  NonZeroConstantTerm,
  NonInvertibleGerm,
  NotAFixedPoint,
  NoValidRadius,
  UnsupportedClass,
  DivergentCoefficients,
  EscapedDomain,
  BranchBreakdown,
  IncompatibleNormalForms,
  InsufficientSampling,
  NonCrossingViolated,
  NotInjectiveOnMesh,
  BoundaryMismatch,
  BranchAmbiguity,
  RootFindingDivergence,
  RadiusUnderflow,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::PreconditionViolated, what);
}

}  // namespace holomotion
