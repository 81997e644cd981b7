#pragma once

#include <stdexcept>
#include <string>

namespace critnls {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Adaptive quadrature hit its subdivision budget before reaching the tolerance.
struct QuadratureNonConvergence : Error {
  using Error::Error;
};

// A root finder was handed an interval that does not bracket a sign change.
struct RootBracketFailure : Error {
  using Error::Error;
};

// An (energy, gradSq) pair that violates the sharp Sobolev bound, i.e. cannot
// come from an actual H^1 function.
struct InfeasiblePair : Error {
  using Error::Error;
};

// A quantity specific to one classification region was requested for a pair
// that lies in a different region.
struct RegionMismatch : Error {
  using Error::Error;
};

// The tridiagonal solve broke down (vanishing pivot / non-finite input).
struct SolveFailure : Error {
  using Error::Error;
};

// A time series is too short for the requested finite-difference stencil.
struct InsufficientSamples : Error {
  using Error::Error;
};

// A trajectory ended in a state that the requested analysis cannot use.
struct WrongTermination : Error {
  using Error::Error;
};

// Malformed configuration input (missing keys, unknown keys, bad values).
struct SchemaError : Error {
  using Error::Error;
};

}  // namespace critnls
