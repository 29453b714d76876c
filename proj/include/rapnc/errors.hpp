#pragma once

#include <stdexcept>
#include <string>

namespace rapnc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The instance (or a derived subproblem) admits no feasible point.
struct InfeasibleError : Error {
  using Error::Error;
};

struct InfeasibleSubproblem : InfeasibleError {
  using InfeasibleError::InfeasibleError;
};

// Objective evaluated outside its domain (Crash/Fuel at x <= 0).
struct DomainError : Error {
  using Error::Error;
};

// Brute-force oracle asked to solve something too large.
struct SizeLimitExceeded : Error {
  using Error::Error;
};

// Discretizing a continuous instance destroyed feasibility; retry with a
// smaller epsilon.
struct ScaledInfeasible : InfeasibleError {
  using InfeasibleError::InfeasibleError;
};

// Sampled forward differences of a custom objective decreased.
struct NonConvexDetected : Error {
  using Error::Error;
};

// A solver invariant failed; indicates a bug, not bad input.
struct InternalInvariantError : Error {
  using Error::Error;
};

}  // namespace rapnc
