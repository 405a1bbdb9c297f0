#pragma once

#include <stdexcept>
#include <string>

namespace voltspec {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid input data or configuration (bad kernel terms, malformed config, ...).
struct ValidationError : Error {
    using Error::Error;
};

/// Evaluation requested too close to a pole -gamma_k of the transform.
struct PoleError : Error {
    using Error::Error;
};

/// Argument of lambda outside the admissible sector |arg lambda| < pi - delta.
struct SectorError : Error {
    using Error::Error;
};

/// A sign change could not be bracketed where a zero was expected.
struct BracketError : Error {
    using Error::Error;
};

/// Fixed-point iteration failed the contraction acceptance test.
struct ContractionError : Error {
    using Error::Error;
};

/// An iterative scheme (Newton, QR) did not converge.
struct ConvergenceError : Error {
    using Error::Error;
};

/// Not enough data in a trace or table to perform the requested fit.
struct InsufficientDataError : Error {
    using Error::Error;
};

}  // namespace voltspec
