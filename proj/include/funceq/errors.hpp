#pragma once

#include <stdexcept>
#include <string>

namespace funceq {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A call broke an interface contract: wrong arity, too few points,
/// malformed option strings, invalid flag combinations.
struct UsageError : Error {
    using Error::Error;
};

/// Input data is unusable: non-finite values, malformed files, bad headers.
struct InputError : Error {
    using Error::Error;
};

/// An evaluation left the valid domain (out-of-table point, empty domain).
struct DomainError : Error {
    using Error::Error;
};

/// A quantity that must stay strictly positive failed to.
struct PositivityError : Error {
    using Error::Error;
};

/// An iteration exhausted its budget without reaching its target.
struct DivergenceError : Error {
    using Error::Error;
};

/// A computed value left the representable range (overflow).
struct RangeError : Error {
    using Error::Error;
};

/// Inputs are degenerate for the requested operation (nothing to estimate).
struct DegenerateError : Error {
    using Error::Error;
};

/// A limit estimate failed to settle.
struct NonConvergenceError : Error {
    using Error::Error;
};

} // namespace funceq
