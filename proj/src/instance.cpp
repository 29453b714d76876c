#include "rapnc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rapnc/errors.hpp"

namespace rapnc {

namespace {

ValidationResult fail(ValidationError err, std::string msg, int wi = -1,
                      int wj = -1) {
  ValidationResult r;
  r.ok = false;
  r.error = err;
  r.message = std::move(msg);
  r.witness_i = wi;
  r.witness_j = wj;
  return r;
}

}  // namespace

const char* mode_name(Mode mode) {
  return mode == Mode::kInteger ? "integer" : "continuous";
}

std::optional<Mode> mode_from_name(const std::string& name) {
  if (name == "integer") return Mode::kInteger;
  if (name == "continuous") return Mode::kContinuous;
  return std::nullopt;
}

bool is_integral(double v, double tol) {
  return std::fabs(v - std::round(v)) <= tol;
}

NestedInstance NestedInstance::make(std::vector<int> sigma_in,
                                    std::vector<double> a_in,
                                    std::vector<double> b_in,
                                    std::vector<double> c_in,
                                    std::vector<double> d_in,
                                    ObjectiveSpec objective) {
  NestedInstance ins;
  ins.n = static_cast<int>(c_in.size());
  ins.m = static_cast<int>(sigma_in.size());
  ins.sigma.assign(1, 0);
  ins.sigma.insert(ins.sigma.end(), sigma_in.begin(), sigma_in.end());
  ins.a.assign(1, 0.0);
  ins.a.insert(ins.a.end(), a_in.begin(), a_in.end());
  ins.b.assign(1, 0.0);
  ins.b.insert(ins.b.end(), b_in.begin(), b_in.end());
  ins.c = std::move(c_in);
  ins.d = std::move(d_in);
  ins.objective = std::move(objective);
  return ins;
}

ValidationResult validate(const NestedInstance& ins, Mode mode) {
  const int n = ins.n;
  const int m = ins.m;
  if (n < 1 || m < 1 ||
      static_cast<int>(ins.sigma.size()) != m + 1 ||
      static_cast<int>(ins.a.size()) != m + 1 ||
      static_cast<int>(ins.b.size()) != m + 1 ||
      static_cast<int>(ins.c.size()) != n ||
      static_cast<int>(ins.d.size()) != n ||
      static_cast<int>(ins.objective.size()) != n) {
    return fail(ValidationError::kBadShape, "inconsistent dimensions");
  }
  if (ins.sigma[0] != 0 || ins.a[0] != 0.0 || ins.b[0] != 0.0) {
    return fail(ValidationError::kBadShape,
                "sigma[0], a[0], b[0] must be zero");
  }
  if (ins.sigma[m] != n) {
    return fail(ValidationError::kNonMonotoneSigma, "sigma[m] must equal n");
  }
  for (int i = 1; i <= m; ++i) {
    if (ins.sigma[i] <= ins.sigma[i - 1]) {
      return fail(ValidationError::kNonMonotoneSigma,
                  "sigma must be strictly increasing", i - 1, i);
    }
  }
  if (ins.a[m] != ins.b[m]) {
    return fail(ValidationError::kBoundOrderViolation,
                "a[m] and b[m] must both equal the total resource B");
  }
  for (int i = 1; i <= m; ++i) {
    if (ins.a[i] > ins.b[i]) {
      return fail(ValidationError::kBoundOrderViolation,
                  "a[" + std::to_string(i) + "] > b[" + std::to_string(i) + "]",
                  i, i);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (ins.c[i] > ins.d[i]) {
      return fail(ValidationError::kBoundOrderViolation,
                  "c[" + std::to_string(i) + "] > d[" + std::to_string(i) + "]",
                  i, i);
    }
  }
  if (ins.objective.positive_domain()) {
    for (int i = 0; i < n; ++i) {
      // Zero-length legs of a travel-time objective cost nothing and have no
      // domain restriction.
      if (ins.objective.kind == ObjectiveKind::kCustom &&
          i < (int)ins.objective.c.size() && ins.objective.c[i] <= 0.0) {
        continue;
      }
      if (ins.c[i] <= 0.0) {
        return fail(ValidationError::kBadDomain,
                    "positive-domain objectives require c[i] > 0", i, i);
      }
    }
  }
  if (mode == Mode::kInteger) {
    for (int i = 1; i <= m; ++i) {
      if (!is_integral(ins.a[i]) || !is_integral(ins.b[i])) {
        return fail(ValidationError::kNonIntegral,
                    "integer mode requires integral nested bounds", i, i);
      }
    }
    for (int i = 0; i < n; ++i) {
      if (!is_integral(ins.c[i]) || !is_integral(ins.d[i])) {
        return fail(ValidationError::kNonIntegral,
                    "integer mode requires integral box bounds", i, i);
      }
    }
  }

  // Feasibility: for every 0 <= i < j <= m the prefix increment between
  // breakpoints must fit, i.e. a_j - b_i <= sum d and b_j - a_i >= sum c over
  // (sigma[i], sigma[j]]. With prefix sums C_k, D_k this is a running
  // envelope over (b_i - D_i) and (a_i - C_i).
  std::vector<double> csum(m + 1, 0.0), dsum(m + 1, 0.0);
  {
    double cs = 0.0, ds = 0.0;
    int k = 0;
    for (int i = 1; i <= m; ++i) {
      for (; k < ins.sigma[i]; ++k) {
        cs += ins.c[k];
        ds += ins.d[k];
      }
      csum[i] = cs;
      dsum[i] = ds;
    }
  }
  double min_b_minus_d = ins.b[0] - dsum[0];
  double max_a_minus_c = ins.a[0] - csum[0];
  int arg_min = 0, arg_max = 0;
  for (int j = 1; j <= m; ++j) {
    if (ins.a[j] - dsum[j] - min_b_minus_d > 1e-9) {
      return fail(ValidationError::kInfeasible,
                  "lower nested bound " + std::to_string(j) +
                      " unreachable from constraint " + std::to_string(arg_min),
                  arg_min, j);
    }
    if (max_a_minus_c - (ins.b[j] - csum[j]) > 1e-9) {
      return fail(ValidationError::kInfeasible,
                  "upper nested bound " + std::to_string(j) +
                      " conflicts with constraint " + std::to_string(arg_max),
                  arg_max, j);
    }
    if (ins.b[j] - dsum[j] < min_b_minus_d) {
      min_b_minus_d = ins.b[j] - dsum[j];
      arg_min = j;
    }
    if (ins.a[j] - csum[j] > max_a_minus_c) {
      max_a_minus_c = ins.a[j] - csum[j];
      arg_max = j;
    }
  }

  ValidationResult ok;
  ok.ok = true;
  return ok;
}

double evaluate(const ObjectiveSpec& objective, const std::vector<double>& x) {
  double total = 0.0;
  for (int i = 0; i < static_cast<int>(x.size()); ++i) {
    total += objective.value(i, x[i]);
  }
  return total;
}

FeasibilityReport check_feasibility(const NestedInstance& ins,
                                    const std::vector<double>& x, double tol) {
  FeasibilityReport report;
  bool exact = true;
  for (double v : x) exact = exact && is_integral(v, 0.0);
  for (int i = 1; i <= ins.m && exact; ++i) {
    exact = is_integral(ins.a[i], 0.0) && is_integral(ins.b[i], 0.0);
  }
  for (int i = 0; i < ins.n && exact; ++i) {
    exact = is_integral(ins.c[i], 0.0) && is_integral(ins.d[i], 0.0);
  }

  if (exact) {
    long long prefix = 0;
    long long nested = 0, box = 0;
    int k = 0;
    for (int i = 1; i <= ins.m; ++i) {
      for (; k < ins.sigma[i]; ++k) {
        const auto xi = static_cast<long long>(x[k]);
        prefix += xi;
        box = std::max(box, static_cast<long long>(ins.c[k]) - xi);
        box = std::max(box, xi - static_cast<long long>(ins.d[k]));
      }
      if (i < ins.m) {
        nested = std::max(nested, static_cast<long long>(ins.a[i]) - prefix);
        nested = std::max(nested, prefix - static_cast<long long>(ins.b[i]));
      } else {
        report.sum_residual = static_cast<double>(
            std::llabs(prefix - static_cast<long long>(ins.a[ins.m])));
      }
    }
    report.max_nested_violation = static_cast<double>(nested);
    report.max_box_violation = static_cast<double>(box);
  } else {
    double prefix = 0.0, nested = 0.0, box = 0.0;
    int k = 0;
    for (int i = 1; i <= ins.m; ++i) {
      for (; k < ins.sigma[i]; ++k) {
        prefix += x[k];
        box = std::max(box, ins.c[k] - x[k]);
        box = std::max(box, x[k] - ins.d[k]);
      }
      if (i < ins.m) {
        nested = std::max(nested, ins.a[i] - prefix);
        nested = std::max(nested, prefix - ins.b[i]);
      } else {
        report.sum_residual = std::fabs(prefix - ins.a[ins.m]);
      }
    }
    report.max_nested_violation = std::max(0.0, nested);
    report.max_box_violation = std::max(0.0, box);
  }
  (void)tol;
  return report;
}

double derive_penalty_m(const NestedInstance& ins) {
  const double B = std::fabs(ins.total());
  double lo = *std::min_element(ins.c.begin(), ins.c.end()) - B;
  double hi = *std::max_element(ins.d.begin(), ins.d.end()) + B;
  double worst = 0.0;
  for (int i = 0; i < ins.n; ++i) {
    double l = lo, h = hi;
    if (ins.objective.positive_domain()) {
      l = ins.c[i];
      h = std::max(ins.d[i], l);
    }
    worst = std::max(worst, ins.objective.slope_bound(i, l, h));
  }
  return 1.0 + worst;
}

}  // namespace rapnc
