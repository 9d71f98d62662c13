#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qlinset {

enum class ErrorKind {
  NotPrime,
  TooLarge,
  NotPrimitive,
  NoPrimitiveModulus,
  DivisionByZero,
  NotADivisor,
  ParseError,
  FieldMismatch,
  NotInvertible,
  ZeroPolynomial,
  ZeroScalar,
  TooLargeForExhaustive,
  NotAdmissible,
  DegenerateSet,
  WrongDegree,
  PreconditionViolated,
  ImagesDiffer,
  NotMonomial,
  NotStrictlyLinear,
  Inconsistent,
  InvalidParameters,
  NoSource,
  InvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// Exception carrying a machine-readable kind; what() is "<Kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qlinset
