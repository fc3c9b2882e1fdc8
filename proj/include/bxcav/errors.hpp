#pragma once

#include <stdexcept>
#include <string>

namespace bxcav {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operator/state dimension mismatches between module boundaries.
struct DimensionError : Error {
    using Error::Error;
};

// Bad user input: config files, flags, malformed grids. CLI exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

// Solver failures: singular systems, residuals out of tolerance,
// propagation breakdown. CLI exit code 3.
struct NumericalError : Error {
    using Error::Error;
};

struct DegenerateSteadyStateError : NumericalError {
    using NumericalError::NumericalError;
};

// Grid too coarse for a requested convolution or fit.
struct ResolutionError : Error {
    using Error::Error;
};

}  // namespace bxcav
