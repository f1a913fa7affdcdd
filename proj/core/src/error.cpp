#include "clarklab/error.hpp"

#include <sstream>

namespace clarklab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotEnoughAtoms: return "NotEnoughAtoms";
    case ErrorCode::kSpectrumPoint: return "SpectrumPoint";
    case ErrorCode::kDegenerateSymbol: return "DegenerateSymbol";
    case ErrorCode::kPhaseMonotonicityViolation: return "PhaseMonotonicityViolation";
    case ErrorCode::kEmptyArc: return "EmptyArc";
    case ErrorCode::kSupportMismatch: return "SupportMismatch";
    case ErrorCode::kMateZero: return "MateZero";
    case ErrorCode::kQuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kBoundaryAtom: return "BoundaryAtom";
    case ErrorCode::kWrongFamily: return "WrongFamily";
    case ErrorCode::kInvalidConstants: return "InvalidConstants";
    case ErrorCode::kConstraintViolation: return "ConstraintViolation";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

namespace {
std::string describe_violation(std::size_t index, const std::string& bound, double value,
                               double limit) {
  std::ostringstream os;
  os.precision(17);
  os << "atom " << index << " violates " << bound << " (" << value << " > " << limit << ")";
  return os.str();
}
}  // namespace

ConstraintViolation::ConstraintViolation(std::size_t index, std::string bound, double value,
                                         double limit)
    : Error(ErrorCode::kConstraintViolation, describe_violation(index, bound, value, limit)),
      index_(index),
      bound_(std::move(bound)),
      value_(value),
      limit_(limit) {}

}  // namespace clarklab
