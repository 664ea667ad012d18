#pragma once

#include <stdexcept>
#include <string>

namespace hecke_f2 {

// All precision / domain violations are programming errors at the call site,
// so they throw rather than returning sentinels. Linear-algebra "no solution"
// is a value (std::optional), not an error; see f2la.hpp.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Asked for a coefficient at or beyond the series' known precision.
struct IndexBeyondPrecision : Error {
    using Error::Error;
};

// An operation needs more known coefficients than the operands carry.
struct InsufficientPrecision : Error {
    using Error::Error;
};

// Index / parameter outside the valid domain (negative exponent, bad level...).
struct InvalidIndex : Error {
    using Error::Error;
};

// q-expansion is not a polynomial in the generator up to the requested bound;
// carries the residual's first term for diagnostics.
struct NotInAlgebra : Error {
    long long residual_order;
    NotInAlgebra(const std::string& msg, long long ord)
        : Error(msg), residual_order(ord) {}
};

// No companion recurrence of order <= the searched bound fits the data.
struct NoRecurrenceFound : Error {
    using Error::Error;
};

// A Gram matrix that must be invertible is not, at the current scale.
struct SingularPairing : Error {
    using Error::Error;
};

// Could not split a residue into the expected class data.
struct ClassDecompositionFailed : Error {
    using Error::Error;
};

// A check needs a bigger algebra (degree bound / precision) than was built.
struct InsufficientScale : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace hecke_f2
