#pragma once

#include <stdexcept>
#include <string>

namespace schurcomm {

// Base class for everything this library throws on contract violations.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSquare : Error {
  using Error::Error;
};

struct NotHermitian : Error {
  using Error::Error;
};

struct DimMismatch : Error {
  using Error::Error;
};

struct FunctionUndefinedAtSpectrum : Error {
  using Error::Error;
};

// Requested analytic row bound with n <= alpha + 1/2 (the tail series diverges).
struct BoundInapplicable : Error {
  using Error::Error;
};

struct NonIntegrable : Error {
  using Error::Error;
};

struct POutOfRange : Error {
  using Error::Error;
};

struct NoPositiveSpectrum : Error {
  using Error::Error;
};

struct NonInvertible : Error {
  using Error::Error;
};

struct HolderBoundViolated : Error {
  using Error::Error;
};

// An eigenvalue is numerically indistinguishable from zero but was not
// declared part of the kernel at construction time (or vice versa).
struct AmbiguousKernel : Error {
  using Error::Error;
};

struct ConfigInvalid : Error {
  using Error::Error;
};

}  // namespace schurcomm
