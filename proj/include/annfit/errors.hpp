#pragma once

#include <stdexcept>

namespace annfit {

// Recoverable failures are typed so the CLI can map them to exit codes:
// configuration/input problems exit 1, theorem-check failures are reported
// (never thrown) and exit 2.

struct NotInvertibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Element has an l in its denominator where an l-integral value is required.
struct NotIntegralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoSolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cokernel / homology is infinite.
struct NotFiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite but with torsion at a prime other than the working l.
struct NotLPowerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Differentials do not compose to zero.
struct NotAComplexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Homology lives outside degrees 0 and 1.
struct NotConcentratedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Could not certify a free basis for the degree-1 boundary module.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested working precision is below the documented minimum.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RamifiedPrimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IncompatibleFieldsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A redundant internal cross-check disagreed with the primary computation.
// These indicate a bug (or insufficient guard precision), never bad input.
struct InternalCheckError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace annfit
