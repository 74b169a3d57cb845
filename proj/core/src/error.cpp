#include "coxinv/error.hpp"

namespace coxinv {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::AsymmetryError: return "AsymmetryError";
    case ErrorKind::DiagonalError: return "DiagonalError";
    case ErrorKind::BadEntry: return "BadEntry";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::ThicknessClassError: return "ThicknessClassError";
    case ErrorKind::NotRightAngled: return "NotRightAngled";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::AffineDegenerate: return "AffineDegenerate";
    case ErrorKind::DegenerateWeights: return "DegenerateWeights";
    case ErrorKind::NoWitness: return "NoWitness";
    case ErrorKind::ThinBuilding: return "ThinBuilding";
    case ErrorKind::MarginViolation: return "MarginViolation";
    case ErrorKind::ResourceExceeded: return "ResourceExceeded";
    case ErrorKind::RadiusExceeded: return "RadiusExceeded";
    case ErrorKind::ValidationMismatch: return "ValidationMismatch";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ResourceExceeded:
    case ErrorKind::RadiusExceeded:
      return 3;
    case ErrorKind::ValidationMismatch:
    case ErrorKind::Internal:
      return 4;
    default:
      return 2;
  }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace coxinv
