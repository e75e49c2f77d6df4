#pragma once

#include <stdexcept>
#include <string>

namespace evowave {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct CertificationError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

/// Dense assembly requested above the configured unknown cap.
struct CapError : Error {
  using Error::Error;
};

struct SolverError : Error {
  SolverError(const std::string& what, int iterations_, double residual_)
      : Error(what), iterations(iterations_), residual(residual_) {}
  int iterations;
  double residual;
};

}  // namespace evowave
