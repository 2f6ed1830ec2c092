#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dmtherm {

enum class ErrorKind {
  NonHermitianInput,
  NonPositiveTemperature,
  InvalidDensityMatrix,
  ComplexRootsDetected,
  WrongDmCase,
  DegenerateDmPhase,
  NoTransition,
  YMaxOutOfRange,
  OutOfRange,
  IncompatibleQuantity,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for every library failure; `kind()` identifies the
// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dmtherm
