#pragma once

#include <stdexcept>
#include <string>

namespace feaskit {

// Common base so callers can catch all library failures in one clause.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// Circumcenter does not exist in the affine hull of the given points
// (singular or inconsistent Gram system, e.g. three distinct collinear points).
struct DegenerateConfiguration : Error {
    using Error::Error;
};

// A subgradient of zero was returned at a point that violates the perturbed
// inequality; the separating halfspace is undefined there.
struct ZeroSubgradientAtViolation : Error {
    using Error::Error;
};

struct InvalidParams : Error {
    using Error::Error;
};

// Infeasible-start sampling exhausted its doubling budget.
struct CannotEscape : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

// Side-by-side solver/oracle runs stopped at different iterations.
struct MismatchedTermination : Error {
    using Error::Error;
};

struct EmptyResults : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace feaskit
