#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coxinv {

enum class ErrorKind {
  // malformed or inadmissible input
  SchemaError,
  AsymmetryError,
  DiagonalError,
  BadEntry,
  UnknownGenerator,
  ThicknessClassError,
  NotRightAngled,
  NotHyperbolic,
  AffineDegenerate,
  DegenerateWeights,
  NoWitness,
  ThinBuilding,
  MarginViolation,
  // resource caps
  ResourceExceeded,
  RadiusExceeded,
  // internal consistency failures
  ValidationMismatch,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Process exit code for an error of this kind: 2 input, 3 resource cap,
/// 4 internal validation failure.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace coxinv
