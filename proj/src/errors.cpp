#include "holomotion/errors.hpp"

namespace holomotion {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonZeroConstantTerm: return "NonZeroConstantTerm";
    case ErrorKind::NonInvertibleGerm: return "NonInvertibleGerm";
    case ErrorKind::NotAFixedPoint: return "NotAFixedPoint";
    case ErrorKind::NoValidRadius: return "NoValidRadius";
    case ErrorKind::UnsupportedClass: return "UnsupportedClass";
    case ErrorKind::DivergentCoefficients: return "DivergentCoefficients";
    case ErrorKind::EscapedDomain: return "EscapedDomain";
    case ErrorKind::BranchBreakdown: return "BranchBreakdown";
    case ErrorKind::IncompatibleNormalForms: return "IncompatibleNormalForms";
    case ErrorKind::InsufficientSampling: return "InsufficientSampling";
    case ErrorKind::NonCrossingViolated: return "NonCrossingViolated";
    case ErrorKind::NotInjectiveOnMesh: return "NotInjectiveOnMesh";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::RootFindingDivergence: return "RootFindingDivergence";
    case ErrorKind::RadiusUnderflow: return "RadiusUnderflow";
  }
  return "Unknown";
}

}  // namespace holomotion
