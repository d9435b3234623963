#pragma once

#include <stdexcept>
#include <string>

namespace meanlab {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed arguments: bad dimensions, non-finite entries, parameters
// outside their documented range.
struct InvalidInput : Error {
  using Error::Error;
};

// An eigenvalue fell outside the domain of the scalar function being
// applied (beyond the PSD clamping tolerance).
struct DomainError : Error {
  using Error::Error;
};

// Congruence with a matrix whose condition estimate exceeds 1e12.
struct IllConditioned : Error {
  using Error::Error;
};

// A root-finding target lies outside the range of the monotone branch.
struct OutOfRange : Error {
  using Error::Error;
};

// An inverse problem's order/ratio hypothesis does not hold for the
// given pair (X, Y).
struct HypothesisViolated : Error {
  using Error::Error;
};

// A mathematically guaranteed construction failed numerically
// (e.g. the square-root consistency check of the p = 1/2 solver).
struct NumericalFailure : Error {
  using Error::Error;
};

// CLI-level: malformed JSON input.
struct ParseError : Error {
  using Error::Error;
};

// CLI-level: well-formed JSON that violates the matrix-file schema.
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace meanlab
