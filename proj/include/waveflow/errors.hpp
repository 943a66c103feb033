#pragma once

#include <stdexcept>
#include <string>

namespace waveflow {

enum class ErrorKind {
  NonHermitianInput,
  ConvergenceFailure,
  DimensionMismatch,
  NonFinite,
  ConfigInvalid,
  NonPhysicalBloch,
  InvalidGamma,
  NonDiagonalConfig,
  NonOrthogonalEnvPair,
  EmptyCurve,
  NonMonotoneTimeGrid,
  IoError,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  // what() without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace waveflow
