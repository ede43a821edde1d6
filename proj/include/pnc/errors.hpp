#pragma once

#include <stdexcept>

namespace pnc {

// Exhaustive enumeration of a matrix family was requested but the family is
// beyond the configured size gate.
struct EnumerationTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A denominator that must stay positive came out non-positive.
struct NumericalDegeneracy : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fewer qualifying data points than a fit requires.
struct InsufficientPoints : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pnc
