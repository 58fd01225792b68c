#pragma once

#include <stdexcept>
#include <string>

namespace qwt {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filter name not present in the registry (message lists what is).
struct UnknownFilterError : Error {
  using Error::Error;
};

// Coefficient vector rejected by validation.
struct InvalidFilterError : Error {
  using Error::Error;
};

// Rotation-cascade back-substitution left a residual above threshold.
struct FactorizationError : Error {
  using Error::Error;
};

// Matrix/register size constraint violated (2^n < M, width caps, ...).
struct DimensionError : Error {
  using Error::Error;
};

// Decomposition depth d out of range for the given n and filter.
struct DepthError : Error {
  using Error::Error;
};

// Coefficient or qubit index out of range.
struct IndexError : Error {
  using Error::Error;
};

// Register layouts disagree (compose/controlled wiring).
struct LayoutError : Error {
  using Error::Error;
};

// A macro gate cannot be lowered under the requested configuration.
struct LoweringError : Error {
  using Error::Error;
};

// Projection onto a zero-probability subspace.
struct ProjectionError : Error {
  using Error::Error;
};

// File parse/read failures.
struct IoError : Error {
  using Error::Error;
};

}  // namespace qwt
