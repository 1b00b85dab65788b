#ifndef CCFRAG_ERRORS_HPP_
#define CCFRAG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ccfrag {

// Bad run configuration (grid bounds, truncation index, mismatched pairs).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user-supplied data (initial condition values, tables).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite intermediate inside the solver.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Step size collapsed below the underflow floor.
struct StiffnessError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace ccfrag

#endif
