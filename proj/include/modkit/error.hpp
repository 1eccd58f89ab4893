#ifndef MODKIT_ERROR_HPP
#define MODKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace modkit {

enum class ErrorKind {
  NotAntilinear,
  NotComplexLinear,
  Singular,
  NotPositive,
  DimensionMismatch,
  NotStandard,
  ModularRelationViolated,
  NormBoundViolated,
  ConjugationMismatch,
  InvalidRep,
  NotIrreducible,
  DimensionOverflow,
  NotCyclicSeparating,
  NotInvertible,
  NotSubalgebra,
  NotIsometric,
  NotContained,
  EmptyRegion,
  NotProper,
  InvalidGrid,
  NotBuilt,
  NotDecaying,
  NotConverged,
  InvalidParameters,
  UsageError,
  IoError
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAntilinear: return "NotAntilinear";
    case ErrorKind::NotComplexLinear: return "NotComplexLinear";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotStandard: return "NotStandard";
    case ErrorKind::ModularRelationViolated: return "ModularRelationViolated";
    case ErrorKind::NormBoundViolated: return "NormBoundViolated";
    case ErrorKind::ConjugationMismatch: return "ConjugationMismatch";
    case ErrorKind::InvalidRep: return "InvalidRep";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::DimensionOverflow: return "DimensionOverflow";
    case ErrorKind::NotCyclicSeparating: return "NotCyclicSeparating";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotSubalgebra: return "NotSubalgebra";
    case ErrorKind::NotIsometric: return "NotIsometric";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::EmptyRegion: return "EmptyRegion";
    case ErrorKind::NotProper: return "NotProper";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::NotBuilt: return "NotBuilt";
    case ErrorKind::NotDecaying: return "NotDecaying";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace modkit

#endif
