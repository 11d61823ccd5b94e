#pragma once

#include <stdexcept>
#include <string>

namespace dsdim {

// Base class for all library failures. Subclasses exist where callers need
// to distinguish outcomes (CLI exit codes, tests exercising error paths).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// A polynomial in K was passed where a leader/initial/separant is required.
struct ConstantPolynomial : Error {
    using Error::Error;
};

// Interpolation block solved, but an extra validation point disagreed: the
// grid has not reached the stability region of the counting function.
struct ValidationMismatch : Error {
    using Error::Error;
};

// The solved binomial-basis coefficients are not integers: the input is not
// an integer-valued polynomial.
struct NonIntegralFit : Error {
    using Error::Error;
};

struct NonAutoreducedInput : Error {
    using Error::Error;
};

struct NonLinearInput : Error {
    using Error::Error;
};

struct IterationCapExceeded : Error {
    using Error::Error;
};

struct CertificationFailed : Error {
    using Error::Error;
};

// Repeated widening of the fit grid never produced a validated polynomial.
struct FitUnstable : Error {
    using Error::Error;
};

// The symbolic dimension polynomial disagrees with the elimination oracle.
struct OracleMismatch : Error {
    using Error::Error;
};

// Window-system dimension failed to stabilize under buffer doubling.
struct BufferCapExceeded : Error {
    using Error::Error;
};

// Global enumeration cap (DSDIM_MAX_CELLS) would be exceeded.
struct CellCapExceeded : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& msg, int line_, int column_)
        : Error(msg + " at line " + std::to_string(line_) + ", column " +
                std::to_string(column_)),
          line(line_),
          column(column_) {}
};

struct SemanticError : Error {
    using Error::Error;
};

}  // namespace dsdim
