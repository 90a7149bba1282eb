#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace spikelab {

// Thrown when an evaluation point lies inside the support (or on an atom).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Thrown when a transform hits a pole (G = 0 and the reciprocal is requested).
struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fixed-point iteration did not converge; carries the last residual.
struct IterationFailure : std::runtime_error {
    double last_residual;
    IterationFailure(const std::string& what, double residual)
        : std::runtime_error(what + " (last residual " + std::to_string(residual) + ")"),
          last_residual(residual) {}
};

// The real-axis ladder extension of a subordination function failed to settle.
struct BoundaryExtensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace spikelab
