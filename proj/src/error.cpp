#include "qlinset/error.hpp"

namespace qlinset {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::NoPrimitiveModulus: return "NoPrimitiveModulus";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotADivisor: return "NotADivisor";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::ZeroScalar: return "ZeroScalar";
    case ErrorKind::TooLargeForExhaustive: return "TooLargeForExhaustive";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::DegenerateSet: return "DegenerateSet";
    case ErrorKind::WrongDegree: return "WrongDegree";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ImagesDiffer: return "ImagesDiffer";
    case ErrorKind::NotMonomial: return "NotMonomial";
    case ErrorKind::NotStrictlyLinear: return "NotStrictlyLinear";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::NoSource: return "NoSource";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail), kind_(kind) {}

}  // namespace qlinset
