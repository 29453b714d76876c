#include "rapnc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rapnc/errors.hpp"
#include "rapnc/rng.hpp"

namespace rapnc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Allocation dp_solve(const NestedInstance& ins, long long max_states) {
  const ValidationResult vr = validate(ins, Mode::kInteger);
  if (!vr.ok) {
    if (vr.error == ValidationError::kInfeasible) {
      throw InfeasibleError(vr.message);
    }
    throw DomainError(vr.message);
  }
  const int n = ins.n, m = ins.m;
  std::vector<long long> c(n), d(n);
  for (int i = 0; i < n; ++i) {
    c[i] = (long long)std::llround(ins.c[i]);
    d[i] = (long long)std::llround(ins.d[i]);
  }
  // Which nested bound (if any) caps the prefix sum after each variable.
  std::vector<int> bp(n + 1, 0);  // 0 = none, else constraint index
  for (int k = 1; k <= m; ++k) bp[ins.sigma[k]] = k;

  // Reachable prefix-sum window per layer.
  std::vector<long long> lo(n + 1, 0), hi(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    lo[i] = lo[i - 1] + c[i - 1];
    hi[i] = hi[i - 1] + d[i - 1];
    if (bp[i]) {
      lo[i] = std::max(lo[i], (long long)std::llround(ins.a[bp[i]]));
      hi[i] = std::min(hi[i], (long long)std::llround(ins.b[bp[i]]));
    }
    if (lo[i] > hi[i]) throw InfeasibleError("dp: empty prefix window");
  }

  long long work = 0;
  for (int i = 1; i <= n; ++i) {
    work += (hi[i] - lo[i] + 1) * (d[i - 1] - c[i - 1] + 1);
    if (work > max_states) {
      throw SizeLimitExceeded("dp: state budget exceeded");
    }
  }

  std::vector<std::vector<double>> best(n + 1);
  std::vector<std::vector<long long>> from(n + 1);
  best[0].assign(1, 0.0);
  from[0].assign(1, 0);
  for (int i = 1; i <= n; ++i) {
    const long long w = hi[i] - lo[i] + 1;
    best[i].assign(w, kInf);
    from[i].assign(w, -1);
    for (long long s = lo[i]; s <= hi[i]; ++s) {
      double bv = kInf;
      long long bx = -1;
      for (long long x = c[i - 1]; x <= d[i - 1]; ++x) {
        const long long prev = s - x;
        if (prev < lo[i - 1] || prev > hi[i - 1]) continue;
        const double pv = best[i - 1][prev - lo[i - 1]];
        if (pv == kInf) continue;
        const double v = pv + ins.objective.value(i - 1, (double)x);
        if (v < bv - 1e-15 * std::max(1.0, std::fabs(bv)) ||
            (bv == kInf && v < kInf)) {
          bv = v;
          bx = x;
        }
      }
      best[i][s - lo[i]] = bv;
      from[i][s - lo[i]] = bx;
    }
  }

  const long long B = (long long)std::llround(ins.total());
  if (B < lo[n] || B > hi[n] || best[n][B - lo[n]] == kInf) {
    throw InfeasibleError("dp: total resource unreachable");
  }

  Allocation out;
  out.mode = Mode::kInteger;
  out.x.assign(n, 0.0);
  long long s = B;
  for (int i = n; i >= 1; --i) {
    const long long x = from[i][s - lo[i]];
    out.x[i - 1] = (double)x;
    s -= x;
  }
  out.objective_value = evaluate(ins.objective, out.x);
  return out;
}

std::vector<double> sample_feasible(const NestedInstance& ins,
                                    std::uint64_t seed, bool integral) {
  const int n = ins.n, m = ins.m;
  std::vector<int> bp(n + 1, 0);
  for (int k = 1; k <= m; ++k) bp[ins.sigma[k]] = k;

  // Backward pass: the interval each prefix sum must lie in so that the
  // remaining variables can still reach B within all constraints.
  std::vector<double> lo(n + 1), hi(n + 1);
  lo[n] = hi[n] = ins.total();
  for (int i = n - 1; i >= 0; --i) {
    lo[i] = lo[i + 1] - ins.d[i];
    hi[i] = hi[i + 1] - ins.c[i];
    if (bp[i]) {
      lo[i] = std::max(lo[i], ins.a[bp[i]]);
      hi[i] = std::min(hi[i], ins.b[bp[i]]);
    }
    if (i == 0) {
      lo[0] = std::max(lo[0], 0.0);
      hi[0] = std::min(hi[0], 0.0);
    }
    if (lo[i] > hi[i] + 1e-9) {
      throw InfeasibleError("sampler: instance has no feasible point");
    }
  }

  Rng rng(seed, 0);
  std::vector<double> x(n);
  double prefix = 0.0;
  for (int i = 1; i <= n; ++i) {
    double l = std::max(lo[i], prefix + ins.c[i - 1]);
    double h = std::min(hi[i], prefix + ins.d[i - 1]);
    double next;
    if (integral) {
      const long long li = (long long)std::ceil(l - 1e-9);
      const long long hc = (long long)std::floor(h + 1e-9);
      if (li > hc) throw InternalInvariantError("sampler: empty integer step");
      next = (double)rng.uniform_int(li, hc);
    } else {
      if (l > h) h = l;  // float dust
      next = rng.uniform(l, h);
    }
    x[i - 1] = next - prefix;
    prefix = next;
  }
  return x;
}

ProjectionVerdict projection_check(const NestedInstance& ins,
                                   const std::vector<double>& point,
                                   const std::vector<double>& candidate,
                                   int samples, double tol,
                                   std::uint64_t seed) {
  ProjectionVerdict v;
  v.ok = true;
  for (int s = 0; s < samples; ++s) {
    const std::vector<double> z = sample_feasible(ins, seed + (std::uint64_t)s);
    double dot = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      dot += (point[i] - candidate[i]) * (z[i] - candidate[i]);
    }
    if (dot > v.worst) {
      v.worst = dot;
      if (dot > tol) {
        v.ok = false;
        v.witness = z;
      }
    }
  }
  return v;
}

}  // namespace rapnc
