// errors.hpp — Failure type shared by the numerical routines.

#pragma once

#include <stdexcept>

namespace tcsim {

// Raised on singular systems, unmet tolerances, positivity violations, or
// integrator instability. Routines never return a garbage result instead.
class SolveError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace tcsim
