#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rapnc/objective.hpp"

namespace rapnc {

enum class Mode { kInteger, kContinuous };

const char* mode_name(Mode mode);
std::optional<Mode> mode_from_name(const std::string& name);

// A RAP-NC instance: minimize a separable convex objective subject to box
// bounds, two-sided bounds on the prefix sums at the breakpoints sigma[1..m],
// and the total-resource equality encoded as a[m] = b[m] = B.
//
// sigma is stored 1-based in a vector of size m+1 with sigma[0] = 0 and
// sigma[m] = n; a and b likewise carry the a[0] = b[0] = 0 convention so the
// root recursion has well-defined left bounds.
struct NestedInstance {
  int n = 0;
  int m = 0;
  std::vector<int> sigma;  // size m+1, sigma[0] = 0
  std::vector<double> a;   // size m+1, a[0] = 0
  std::vector<double> b;   // size m+1, b[0] = 0
  std::vector<double> c;   // size n
  std::vector<double> d;   // size n
  ObjectiveSpec objective;

  double total() const { return a[m]; }

  // Convenience constructor from 1-based user data (sigma/a/b of size m).
  static NestedInstance make(std::vector<int> sigma_in, std::vector<double> a_in,
                             std::vector<double> b_in, std::vector<double> c_in,
                             std::vector<double> d_in, ObjectiveSpec objective);
};

struct Allocation {
  std::vector<double> x;
  double objective_value = 0.0;
  Mode mode = Mode::kContinuous;
};

struct FeasibilityReport {
  double max_nested_violation = 0.0;
  double max_box_violation = 0.0;
  double sum_residual = 0.0;

  bool all_zero(double tol = 0.0) const {
    return max_nested_violation <= tol && max_box_violation <= tol &&
           sum_residual <= tol;
  }
};

struct SolverConfig {
  double epsilon = 1e-6;               // continuous solution-space accuracy
  std::optional<double> penalty_M;     // auto-derived when unset
  double feasibility_tol = 1e-9;
};

struct KktCertificate {
  std::vector<double> phi;     // per-variable dual value, size n
  std::vector<double> kappa;   // lower nested multipliers, size m (1-based m)
  std::vector<double> lambda;  // upper nested multipliers, size m
};

enum class ValidationError {
  kNone,
  kBadShape,
  kNonMonotoneSigma,
  kBoundOrderViolation,
  kNonIntegral,
  kBadDomain,
  kInfeasible,
};

struct ValidationResult {
  bool ok = false;
  ValidationError error = ValidationError::kNone;
  std::string message;
  // Witnessing constraint-index pair for infeasibility (0-based into 0..m).
  int witness_i = -1;
  int witness_j = -1;
};

// Accepts exactly the instances whose invariants hold and that admit a
// feasible point; the feasibility test runs in O(n + m) via prefix sums and
// a running envelope over all breakpoint pairs.
ValidationResult validate(const NestedInstance& ins, Mode mode);

double evaluate(const ObjectiveSpec& objective, const std::vector<double>& x);

// One prefix-sum pass; in integer mode (integral instance and point) the
// residuals are computed in exact 64-bit integer arithmetic.
FeasibilityReport check_feasibility(const NestedInstance& ins,
                                    const std::vector<double>& x,
                                    double tol = 1e-9);

// Penalty slope strictly above every f_i's Lipschitz constant over the
// reachable range [min c - B, max d + B].
double derive_penalty_m(const NestedInstance& ins);

bool is_integral(double v, double tol = 1e-9);

}  // namespace rapnc
