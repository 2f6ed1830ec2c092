#include "dmtherm/errors.hpp"

namespace dmtherm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitianInput: return "NonHermitianInput";
    case ErrorKind::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorKind::InvalidDensityMatrix: return "InvalidDensityMatrix";
    case ErrorKind::ComplexRootsDetected: return "ComplexRootsDetected";
    case ErrorKind::WrongDmCase: return "WrongDmCase";
    case ErrorKind::DegenerateDmPhase: return "DegenerateDmPhase";
    case ErrorKind::NoTransition: return "NoTransition";
    case ErrorKind::YMaxOutOfRange: return "YMaxOutOfRange";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::IncompatibleQuantity: return "IncompatibleQuantity";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace dmtherm
