#include "rapnc/mda.hpp"

#include <cmath>

namespace rapnc {

namespace {

void raise_validation(const ValidationResult& vr) {
  if (vr.error == ValidationError::kInfeasible) throw InfeasibleError(vr.message);
  throw DomainError(vr.message);
}

// Custom objectives are trusted but verified: sample the derivative at the
// box corners and midpoint of every variable and insist it is nondecreasing.
void check_custom_convexity(const NestedInstance& ins) {
  if (ins.objective.kind != ObjectiveKind::kCustom) return;
  for (int i = 0; i < ins.n; ++i) {
    const double c = ins.c[i], d = ins.d[i];
    if (!(d > c)) continue;
    const double mid = 0.5 * (c + d);
    const double g0 = ins.objective.deriv(i, c);
    const double g1 = ins.objective.deriv(i, mid);
    const double g2 = ins.objective.deriv(i, d);
    const double tol = 1e-7 * (1.0 + std::fabs(g0) + std::fabs(g2));
    if (g1 < g0 - tol || g2 < g1 - tol) {
      throw NonConvexDetected("custom objective " + std::to_string(i) +
                              " has a decreasing derivative sample");
    }
  }
}

long long checked_ll(double v, const char* what) {
  if (std::fabs(v) >= 9.0e18) {
    throw DomainError(std::string(what) + " overflows the solver grid");
  }
  return std::llround(v);
}

double slack_for(double v) { return 1e-9 * std::max(1.0, std::fabs(v)); }

// The grid solution satisfies every constraint of the rounded-inward problem,
// but the total B need not lie on the grid, leaving a quantization residual
// of order 1/s. Snap the prefix-sum trajectory back onto the exact feasible
// tube: backward interval propagation, then a forward clamp. Each coordinate
// moves by at most the accumulated grid error, far below epsilon.
void snap_feasible(const NestedInstance& ins, std::vector<double>& x) {
  const int n = ins.n, m = ins.m;
  std::vector<int> bp(n + 1, 0);
  for (int k = 1; k <= m; ++k) bp[ins.sigma[k]] = k;
  std::vector<double> lo(n + 1), hi(n + 1);
  lo[n] = hi[n] = ins.total();
  for (int i = n - 1; i >= 1; --i) {
    lo[i] = lo[i + 1] - ins.d[i];
    hi[i] = hi[i + 1] - ins.c[i];
    if (bp[i]) {
      lo[i] = std::max(lo[i], ins.a[bp[i]]);
      hi[i] = std::min(hi[i], ins.b[bp[i]]);
    }
    if (lo[i] > hi[i]) {
      if (lo[i] > hi[i] + 1e-7) return;  // genuinely tight; leave x alone
      hi[i] = lo[i];
    }
  }
  double prev = 0.0;
  for (int i = 1; i <= n; ++i) {
    double p = prev + x[i - 1];
    p = std::clamp(p, prev + ins.c[i - 1], prev + ins.d[i - 1]);
    p = std::clamp(p, lo[i], hi[i]);
    x[i - 1] = p - prev;
    prev = p;
  }
}

}  // namespace

void rap_quadratic_int(const ObjectiveAdapter& f, int i0, int i1,
                       const long long* lo, const long long* hi,
                       long long budget, long long* x) {
  check_rap_feasible(lo, hi, i0, i1, budget);
  std::vector<double> dlo(i1), dhi(i1), xd(i1);
  for (int i = i0; i < i1; ++i) {
    dlo[i] = (double)lo[i];
    dhi[i] = (double)hi[i];
  }
  rap_quadratic_cont(f, i0, i1, dlo.data(), dhi.data(), (double)budget,
                     xd.data());

  long long placed = 0;
  long long capacity = 0;
  std::vector<long long> base(i1);
  for (int i = i0; i < i1; ++i) {
    long long fl = (long long)std::floor(xd[i]);
    fl = std::clamp(fl, lo[i], hi[i]);
    base[i] = fl;
    placed += fl;
    capacity += std::min(hi[i], fl + 1) - fl;
  }
  const long long r = budget - placed;
  if (r < 0 || r > capacity) {
    // The continuous point was too noisy to round locally; redo on the grid.
    IntMarginals im;
    im.unit_diff = [&f](int i, long long z) { return f.unit_diff(i, (double)z); };
    im.inv_deriv = [&f](int i, double g) { return f.inv_deriv(i, g); };
    rap_convex_int(im, i0, i1, lo, hi, budget, x);
    return;
  }
  for (int i = i0; i < i1; ++i) x[i] = base[i];
  if (r > 0) {
    std::vector<std::pair<double, int>> cand;
    cand.reserve(i1 - i0);
    for (int i = i0; i < i1; ++i) {
      if (base[i] < hi[i]) cand.emplace_back(f.unit_diff(i, (double)base[i]), i);
    }
    if ((std::size_t)r < cand.size()) {
      std::nth_element(cand.begin(), cand.begin() + r, cand.end());
    }
    for (long long j = 0; j < r; ++j) ++x[cand[j].second];
  }
}

Allocation solve_integer(const NestedInstance& ins, const SolverConfig& config,
                         SolveStats* stats) {
  const ValidationResult vr = validate(ins, Mode::kInteger);
  if (!vr.ok) raise_validation(vr);
  check_custom_convexity(ins);

  ScaledProblem<long long> prob;
  prob.objective = &ins.objective;
  prob.scale = 1.0;
  prob.sigma = ins.sigma;
  prob.a.resize(ins.m + 1);
  prob.b.resize(ins.m + 1);
  prob.c.resize(ins.n);
  prob.d.resize(ins.n);
  for (int i = 0; i <= ins.m; ++i) {
    prob.a[i] = checked_ll(ins.a[i], "a");
    prob.b[i] = checked_ll(ins.b[i], "b");
  }
  for (int i = 0; i < ins.n; ++i) {
    prob.c[i] = checked_ll(ins.c[i], "c");
    prob.d[i] = checked_ll(ins.d[i], "d");
  }

  const double mx = config.penalty_M ? *config.penalty_M : derive_penalty_m(ins);
  MdaSolver<long long> solver(prob, mx + 1.0, stats);
  const std::vector<long long> y = solver.run();

  Allocation out;
  out.mode = Mode::kInteger;
  out.x.assign(y.begin(), y.end());
  out.objective_value = evaluate(ins.objective, out.x);
  return out;
}

Allocation solve_continuous(const NestedInstance& ins,
                            const SolverConfig& config, SolveStats* stats) {
  const ValidationResult vr = validate(ins, Mode::kContinuous);
  if (!vr.ok) raise_validation(vr);
  check_custom_convexity(ins);

  Allocation out;
  out.mode = Mode::kContinuous;

  if (ins.n == 1) {
    out.x = {ins.total()};
    out.objective_value = evaluate(ins.objective, out.x);
    return out;
  }

  const bool quad_exact =
      ins.objective.kind == ObjectiveKind::kQuadratic &&
      std::all_of(ins.objective.w.begin(), ins.objective.w.end(),
                  [](double w) { return w > 0.0; });
  const double mx = config.penalty_M ? *config.penalty_M : derive_penalty_m(ins);

  if (quad_exact) {
    ScaledProblem<double> prob;
    prob.objective = &ins.objective;
    prob.scale = 1.0;
    prob.sigma = ins.sigma;
    prob.a = ins.a;
    prob.b = ins.b;
    prob.c = ins.c;
    prob.d = ins.d;
    MdaSolver<double> solver(prob, mx + 1.0, stats);
    out.x = solver.run();
    out.objective_value = evaluate(ins.objective, out.x);
    return out;
  }

  // Everything else runs on a grid of 1/s, which keeps every coordinate
  // within epsilon of an exact optimum. Interval bounds round inward so the
  // grid problem stays a restriction of the original.
  if (!(config.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const double s_real = std::ceil((double)ins.n / config.epsilon);
  if (s_real >= 9.0e15) throw DomainError("epsilon too small for the grid");
  const long long s = (long long)s_real;

  ScaledProblem<long long> prob;
  prob.objective = &ins.objective;
  prob.scale = (double)s;
  prob.sigma = ins.sigma;
  prob.a.assign(ins.m + 1, 0);
  prob.b.assign(ins.m + 1, 0);
  prob.c.resize(ins.n);
  prob.d.resize(ins.n);
  auto in_lo = [&](double v) {
    const double y = v * (double)s;
    return checked_ll(std::ceil(y - slack_for(y)), "scaled lower bound");
  };
  auto in_hi = [&](double v) {
    const double y = v * (double)s;
    return checked_ll(std::floor(y + slack_for(y)), "scaled upper bound");
  };
  for (int i = 1; i <= ins.m; ++i) {
    if (ins.a[i] == ins.b[i]) {
      prob.a[i] = prob.b[i] = checked_ll(ins.a[i] * (double)s, "scaled bound");
    } else {
      prob.a[i] = in_lo(ins.a[i]);
      prob.b[i] = in_hi(ins.b[i]);
    }
  }
  for (int i = 0; i < ins.n; ++i) {
    if (ins.c[i] == ins.d[i]) {
      prob.c[i] = prob.d[i] = checked_ll(ins.c[i] * (double)s, "scaled box");
    } else {
      prob.c[i] = in_lo(ins.c[i]);
      prob.d[i] = in_hi(ins.d[i]);
    }
  }

  {
    NestedInstance grid;
    grid.n = ins.n;
    grid.m = ins.m;
    grid.sigma = ins.sigma;
    grid.objective = ins.objective;
    grid.a.assign(prob.a.begin(), prob.a.end());
    grid.b.assign(prob.b.begin(), prob.b.end());
    grid.c.assign(prob.c.begin(), prob.c.end());
    grid.d.assign(prob.d.begin(), prob.d.end());
    const ValidationResult gvr = validate(grid, Mode::kInteger);
    if (!gvr.ok) {
      throw ScaledInfeasible("instance became infeasible on the 1/" +
                             std::to_string(s) + " grid: " + gvr.message);
    }
  }

  MdaSolver<long long> solver(prob, mx / (double)s + 1.0, stats);
  const std::vector<long long> y = solver.run();
  out.x.resize(ins.n);
  for (int i = 0; i < ins.n; ++i) out.x[i] = (double)y[i] / (double)s;
  snap_feasible(ins, out.x);
  out.objective_value = evaluate(ins.objective, out.x);
  return out;
}

Allocation solve(const NestedInstance& ins, Mode mode,
                 const SolverConfig& config, SolveStats* stats) {
  return mode == Mode::kInteger ? solve_integer(ins, config, stats)
                                : solve_continuous(ins, config, stats);
}

}  // namespace rapnc
