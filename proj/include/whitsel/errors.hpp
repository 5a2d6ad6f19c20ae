#pragma once

#include <stdexcept>
#include <string>

namespace whitsel {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Vector or matrix extents disagree.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// A Cholesky pivot was not strictly positive.
struct NotPositiveDefinite : Error {
    using Error::Error;
};

/// Difference order outside the supported set {1, 2, 3}.
struct InvalidOrder : Error {
    using Error::Error;
};

/// Stochastic probe count below the supported minimum.
struct InvalidProbeCount : Error {
    using Error::Error;
};

/// Input contained NaN or infinity where a finite value is required.
struct NonFiniteInput : Error {
    using Error::Error;
};

/// Invalid interval bounds (for example a reversed grid range).
struct InvalidRange : Error {
    using Error::Error;
};

/// A leverage value reached 1 within tolerance; the fast
/// cross-validation identity would divide by ~0.
struct DegenerateHat : Error {
    using Error::Error;
};

/// Too few usable points survived the degeneracy guards.
struct AllPointsDegenerate : Error {
    using Error::Error;
};

/// Benchmark expression id not among the built-ins.
struct UnknownExpression : Error {
    using Error::Error;
};

/// Function evaluated outside its mathematical domain.
struct DomainError : Error {
    using Error::Error;
};

/// Malformed input file; message carries the 1-based line number.
struct ParseError : Error {
    using Error::Error;
};

/// Two rows share the same sample position.
struct DuplicateAbscissa : Error {
    using Error::Error;
};

/// Fewer parseable rows than the minimum signal length.
struct TooFewRows : Error {
    using Error::Error;
};

/// Precondition violation not covered by a more specific type.
struct InvalidArgument : Error {
    using Error::Error;
};

} // namespace whitsel
