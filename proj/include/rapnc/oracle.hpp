#pragma once

// Ground-truth companions to the main solver: an exact dynamic program over
// prefix sums for small integer instances, a uniform sampler of feasible
// points, and a variational-inequality test for projections. None of these
// share code with the solver, which is the point.

#include <cstdint>
#include <vector>

#include "rapnc/instance.hpp"

namespace rapnc {

// Exact integer optimum by forward DP over absolute prefix sums. The state
// budget guards against accidental huge instances; exceeding it throws
// SizeLimitExceeded.
Allocation dp_solve(const NestedInstance& ins,
                    long long max_states = 50'000'000);

// One feasible point, sampled by backward interval propagation followed by a
// forward uniform walk over prefix sums. Never fails on a valid instance.
// integral=true keeps all prefix sums on the integer grid.
std::vector<double> sample_feasible(const NestedInstance& ins,
                                    std::uint64_t seed, bool integral = false);

struct ProjectionVerdict {
  bool ok = false;
  double worst = 0.0;             // largest inner product seen
  std::vector<double> witness;    // feasible z achieving it, when failing
};

// Checks <point - candidate, z - candidate> <= tol over `samples` random
// feasible z; this inequality characterizes candidate as the Euclidean
// projection of point onto the feasible set.
ProjectionVerdict projection_check(const NestedInstance& ins,
                                   const std::vector<double>& point,
                                   const std::vector<double>& candidate,
                                   int samples, double tol,
                                   std::uint64_t seed);

}  // namespace rapnc
