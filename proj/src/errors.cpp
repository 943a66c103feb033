#include "waveflow/errors.hpp"

namespace waveflow {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonHermitianInput: return "NonHermitianInput";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::NonPhysicalBloch: return "NonPhysicalBloch";
    case ErrorKind::InvalidGamma: return "InvalidGamma";
    case ErrorKind::NonDiagonalConfig: return "NonDiagonalConfig";
    case ErrorKind::NonOrthogonalEnvPair: return "NonOrthogonalEnvPair";
    case ErrorKind::EmptyCurve: return "EmptyCurve";
    case ErrorKind::NonMonotoneTimeGrid: return "NonMonotoneTimeGrid";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace waveflow
