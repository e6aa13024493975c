#pragma once

#include <stdexcept>
#include <string>

namespace bandsim {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A model assumption fails (K <= 0, delta*alpha >= 1, gamma == 1, mu <= r, sigma <= 0).
struct AssumptionViolation : Error {
    using Error::Error;
};

/// An input lies outside a function's mathematical domain.
struct DomainError : Error {
    using Error::Error;
};

/// A root bracket could not be established (parameter pathology or numeric breakdown).
struct BracketFailure : Error {
    using Error::Error;
};

/// A solved quantity violates a postcondition; signals an upstream numeric failure.
struct InvariantViolation : Error {
    using Error::Error;
};

/// Bad configuration value or key.
struct ConfigError : Error {
    using Error::Error;
};

/// Regressor carries no usable variation.
struct DegenerateRegression : Error {
    using Error::Error;
};

} // namespace bandsim
