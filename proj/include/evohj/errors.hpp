#pragma once

#include <stdexcept>
#include <string>

namespace evohj {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Model parameters violate a structural assumption (positivity, viability).
struct InvalidParams : Error {
    using Error::Error;
};

/// No demographic equilibrium with strictly positive weights exists.
struct NoPositiveEquilibrium : Error {
    using Error::Error;
};

/// An iterative solve ran out of its iteration budget.
struct NonConvergence : Error {
    using Error::Error;
};

/// Every candidate support failed global fitness verification.
struct NoEssFound : Error {
    using Error::Error;
};

/// Adaptive quadrature could not meet its tolerance within the depth budget.
struct QuadratureFailure : Error {
    using Error::Error;
};

/// The fitness curvature vanishes at an ESS point; Taylor data is invalid.
struct DegenerateEss : Error {
    using Error::Error;
};

/// The corrector linear system is rank deficient.
struct SingularSystem : Error {
    using Error::Error;
};

/// An evaluation left the validity region (e.g. log of a nonpositive value).
struct DomainError : Error {
    using Error::Error;
};

/// Solver masses decayed to numerical zero.
struct Extinction : Error {
    using Error::Error;
};

/// No interior minimum separating two density peaks was found.
struct BimodalSplitFailure : Error {
    using Error::Error;
};

/// Configuration file is malformed or inconsistent.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace evohj
