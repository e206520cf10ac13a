#pragma once

#include <stdexcept>
#include <string>

namespace skdv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mixing elements of different algebras (kind or generator count).
struct IncompatibleAlgebraError : Error {
    using Error::Error;
};

/// Operation not defined for the given algebra kind.
struct UnsupportedOperationError : Error {
    using Error::Error;
};

/// Field does not satisfy the boundary decay contract required by a
/// line-approximation observable.
struct DecayContractError : Error {
    using Error::Error;
};

/// Requested profile does not fit the grid.
struct DomainTooSmallError : Error {
    using Error::Error;
};

/// Constraint projection in perturbation construction failed.
struct ConstraintError : Error {
    using Error::Error;
};

/// Time integration produced NaN/Inf; carries the last valid time.
struct BlowUpError : Error {
    double last_valid_time;
    explicit BlowUpError(double t, const std::string& msg)
        : Error(msg), last_valid_time(t) {}
};

/// Invalid or inconsistent run configuration.
struct ConfigError : Error {
    using Error::Error;
};

/// A derivation produced something that contradicts its own consistency
/// checks (e.g. a series coefficient that should integrate to zero does not).
struct InternalConsistencyError : Error {
    using Error::Error;
};

}  // namespace skdv
