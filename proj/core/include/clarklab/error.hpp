#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace clarklab {

enum class ErrorCode {
  kNotEnoughAtoms,
  kSpectrumPoint,
  kDegenerateSymbol,
  kPhaseMonotonicityViolation,
  kEmptyArc,
  kSupportMismatch,
  kMateZero,
  kQuadratureNotConverged,
  kDimensionMismatch,
  kBoundaryAtom,
  kWrongFamily,
  kInvalidConstants,
  kConstraintViolation,
  kInvalidArgument,
  kInvalidInput,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is
/// stable and is what the CLI maps to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A perturbation plan broke one of its bounds at a specific atom.
class ConstraintViolation : public Error {
 public:
  ConstraintViolation(std::size_t index, std::string bound, double value, double limit);

  std::size_t index() const noexcept { return index_; }
  const std::string& bound() const noexcept { return bound_; }
  double value() const noexcept { return value_; }
  double limit() const noexcept { return limit_; }

 private:
  std::size_t index_;
  std::string bound_;
  double value_;
  double limit_;
};

}  // namespace clarklab
