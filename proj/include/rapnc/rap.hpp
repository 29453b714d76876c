#pragma once

// Single-constraint RAP solvers: minimize sum f_i(x_i) subject to
// sum x_i = budget and lo_i <= x_i <= hi_i, over a contiguous index range
// [i0, i1) of a parent instance. Three routes, chosen by objective family:
//   - linear:     weighted-median greedy fill, expected O(k)
//   - quadratic:  breakpoint search on the common KKT multiplier
//   - convex:     bisection on the dual multiplier of the sum constraint
// All tie-breaking is lowest-index-first, which makes every solver
// deterministic and nearly stable in the budget.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "rapnc/errors.hpp"
#include "rapnc/objective.hpp"

namespace rapnc {

template <class T>
void check_rap_feasible(const T* lo, const T* hi, int i0, int i1, T budget) {
  long double slo = 0, shi = 0;
  for (int i = i0; i < i1; ++i) {
    if (lo[i] > hi[i]) {
      throw InfeasibleSubproblem("rap: lo > hi at index " + std::to_string(i));
    }
    slo += lo[i];
    shi += hi[i];
  }
  const long double eps =
      std::is_integral_v<T> ? 0 : 1e-9L * std::max<long double>(1, std::fabs((double)budget));
  if ((long double)budget < slo - eps || (long double)budget > shi + eps) {
    throw InfeasibleSubproblem("rap: budget outside [sum lo, sum hi]");
  }
}

// --- linear -----------------------------------------------------------------

template <class T>
void rap_linear(const std::vector<double>& slope, int i0, int i1, const T* lo,
                const T* hi, T budget, T* x) {
  check_rap_feasible(lo, hi, i0, i1, budget);
  T rem = budget;
  for (int i = i0; i < i1; ++i) {
    x[i] = lo[i];
    rem -= lo[i];
  }
  if (rem <= T(0)) return;

  std::vector<std::pair<double, int>> e;
  e.reserve(i1 - i0);
  for (int i = i0; i < i1; ++i) {
    if (hi[i] > lo[i]) e.emplace_back(slope[i], i);
  }

  std::size_t first = 0, last = e.size();
  while (last - first > 16) {
    const std::size_t mid = (first + last) / 2;
    std::nth_element(e.begin() + first, e.begin() + mid, e.begin() + last);
    T cap_left = T(0);
    for (std::size_t j = first; j < mid; ++j) {
      cap_left += hi[e[j].second] - lo[e[j].second];
    }
    if (cap_left >= rem) {
      last = mid;
    } else {
      for (std::size_t j = first; j < mid; ++j) {
        x[e[j].second] = hi[e[j].second];
      }
      rem -= cap_left;
      first = mid;
    }
  }
  std::sort(e.begin() + first, e.begin() + last);
  for (std::size_t j = first; j < last && rem > T(0); ++j) {
    const int i = e[j].second;
    const T take = std::min(rem, hi[i] - lo[i]);
    x[i] = lo[i] + take;
    rem -= take;
  }
  if constexpr (std::is_integral_v<T>) {
    if (rem != 0) throw InternalInvariantError("rap_linear: unplaced budget");
  }
}

// --- quadratic --------------------------------------------------------------

// Continuous quadratic solve through the adapter (so it works on scaled
// coordinates too). Requires strictly positive curvature on the range.
void rap_quadratic_cont(const ObjectiveAdapter& f, int i0, int i1,
                        const double* lo, const double* hi, double budget,
                        double* x);

// --- general convex, integer grid -------------------------------------------

// Marginal model for the integer bisection: unit_diff(i, z) is the cost of
// moving variable i from z to z+1 (nondecreasing in z for convex
// objectives), and inv_deriv(i, g) optionally inverts the derivative to seed
// the per-variable search. Any type with these two members works; this
// std::function form is for cold paths.
struct IntMarginals {
  std::function<double(int, long long)> unit_diff;
  std::function<std::optional<double>(int, double)> inv_deriv;  // may be empty

  bool has_inv() const { return static_cast<bool>(inv_deriv); }
};

namespace detail {

template <class M>
bool marginals_have_inv(const M& f) {
  if constexpr (requires { f.has_inv(); }) {
    return f.has_inv();
  } else {
    return true;
  }
}

// Largest z in [blo, bhi] whose unit marginals below z are all strictly under
// lambda. Seeds from the derivative inverse when available, then gallops out
// from the seed so the cost is logarithmic in the miss distance, not in the
// bracket width.
template <class M>
long long int_point_at(const M& f, int i, long long blo, long long bhi,
                       double lambda) {
  if (blo >= bhi) return blo;
  long long a = blo, b = bhi;
  // For narrow brackets plain bisection needs at most ~6 marginal
  // evaluations, cheaper than evaluating the derivative inverse.
  if (bhi - blo > 64 && marginals_have_inv(f)) {
    if (auto g = f.inv_deriv(i, lambda)) {
      long long guess = *g >= (double)bhi   ? bhi
                        : *g <= (double)blo ? blo
                                            : (long long)std::floor(*g);
      guess = std::clamp(guess, blo, bhi);
      if (guess > blo && !(f.unit_diff(i, guess - 1) < lambda)) {
        long long step = 1, hi_ok = guess;
        while (hi_ok - step > blo &&
               !(f.unit_diff(i, hi_ok - step - 1) < lambda)) {
          hi_ok -= step;
          step *= 2;
        }
        b = hi_ok - 1;
        a = std::max(blo, hi_ok - step);
      } else {
        long long step = 1, lo_ok = guess;
        while (lo_ok + step < bhi && f.unit_diff(i, lo_ok + step - 1) < lambda) {
          lo_ok += step;
          step *= 2;
        }
        a = lo_ok;
        b = std::min(bhi, lo_ok + step);
      }
      a = std::clamp(a, blo, bhi);
      b = std::clamp(b, a, bhi);
    }
  }
  while (a < b) {
    const long long mid = a + (b - a + 1) / 2;
    if (f.unit_diff(i, mid - 1) < lambda) {
      a = mid;
    } else {
      b = mid - 1;
    }
  }
  return a;
}

}  // namespace detail

// Dual bisection on the multiplier of the sum constraint, with per-variable
// bracket narrowing. Stops bisecting once the remaining bracket mass is
// small and finishes with an exact greedy pass over unit increments, so the
// result is an exact integer optimum.
template <class M>
void rap_convex_int(const M& f, int i0, int i1, const long long* lo,
                    const long long* hi, long long budget, long long* x) {
  check_rap_feasible(lo, hi, i0, i1, budget);
  const int k = i1 - i0;
  if (k == 1) {
    x[i0] = budget;
    return;
  }
  std::vector<int> active;
  active.reserve(k);
  std::vector<long long> xlo(k), xhi(k);
  long long s_fixed = 0, s_lo = 0, s_hi = 0;
  double lam_lo = std::numeric_limits<double>::infinity();
  double lam_hi = -lam_lo;
  for (int i = i0; i < i1; ++i) {
    xlo[i - i0] = lo[i];
    xhi[i - i0] = hi[i];
    s_lo += lo[i];
    s_hi += hi[i];
    if (lo[i] < hi[i]) {
      active.push_back(i);
      lam_lo = std::min(lam_lo, f.unit_diff(i, lo[i]));
      lam_hi = std::max(lam_hi, f.unit_diff(i, hi[i] - 1));
    } else {
      s_fixed += lo[i];
    }
  }
  if (budget == s_lo) {
    for (int i = i0; i < i1; ++i) x[i] = lo[i];
    return;
  }
  if (budget == s_hi) {
    for (int i = i0; i < i1; ++i) x[i] = hi[i];
    return;
  }
  // The warm start below needs the uninflated marginal bound: the +1.0
  // absolute inflation (needed for the integer loop's strict comparisons)
  // would blow the search window up by many orders of magnitude when the
  // multiplier scale is tiny.
  const double lam_hi_raw = lam_hi + 1e-9 * std::fabs(lam_hi) +
                            1e-6 * (lam_hi - lam_lo);
  lam_hi += 1.0 + 1e-9 * std::fabs(lam_hi);

  // Greedy completion is cheap as long as the leftover deficit stays small,
  // so bisection only needs to shrink the bracket mass to this threshold.
  const long long gap_target = std::max<long long>(32, k);
  std::vector<long long> xm;
  // Allocation totals at the bracket endpoints drive a regula-falsi guess for
  // the multiplier; the clamp keeps a guaranteed bisection-like shrink when
  // the interpolation is poor.
  double w_lo = (double)s_lo, w_hi = (double)s_hi;
  int last_side = 0;  // Illinois damping against one-sided stalls

  // Warm start on the continuous relaxation: each probe of
  // G(lam) = sum clamp(inv_deriv(lam)) costs one derivative inverse per item
  // instead of a per-unit marginal search, so narrowing the multiplier window
  // here first skims most of the dual search at a fraction of the cost. The
  // integer loop below starts from the tightened window; its invariants are
  // re-established by evaluating true integer allocations at both endpoints,
  // so exactness is unaffected (any failure just skips the warm start).
  if (k >= 64 && detail::marginals_have_inv(f)) {
    bool ok = true;
    const auto g_of = [&](double lam) -> double {
      double s = (double)s_fixed;
      for (int i : active) {
        const auto v = f.inv_deriv(i, lam);
        if (!v) {
          ok = false;
          return 0.0;
        }
        s += std::clamp(*v, (double)xlo[i - i0], (double)xhi[i - i0]);
      }
      return s;
    };
    // Integer allocations sit within one unit per item of the continuous
    // ones, so a lower multiplier with G <= budget - margin yields an integer
    // total <= budget, and landing G(la) within a few k of the budget leaves
    // only a cheap greedy deficit. Aim the probes slightly below the budget
    // so they tend to fall into that success window instead of straddling it.
    const double margin = (double)active.size();
    const double aim = (double)budget - 3.0 * (double)k;
    double la = lam_lo, lb = lam_hi_raw;
    double ga = g_of(la);
    double gb = ok ? g_of(lb) : 0.0;
    if (ok && ga <= (double)budget - margin && gb >= (double)budget + margin &&
        aim > ga) {
      // Regula falsi aimed at the budget, Illinois-damped, with a periodic
      // bisection step; G spans many orders of magnitude in a window this
      // wide, so plain bisection would burn ~60 probes getting close.
      const double width0 = lb - la;
      // Decaying-derivative families make G a sum of power laws in the
      // multiplier; when the window is single-signed, interpolating in
      // log-log space fits those exactly and localizes the root in a few
      // probes where linear interpolation crawls along the steep end.
      const bool loglog = (lb < 0.0 || la > 0.0) && budget > 0;
      int side = 0;
      for (int it2 = 0; it2 < 48 && ok; ++it2) {
        if (lb - la <= 1e-14 * width0) break;
        double frac = gb > ga ? (aim - ga) / (gb - ga) : 0.5;
        if (loglog && ga > 0.0 && gb > ga && aim > 0.0) {
          frac = (std::log(aim) - std::log(ga)) /
                 (std::log(gb) - std::log(ga));
        }
        frac = std::clamp(frac, 0.01, 0.99);
        if (it2 % 4 == 3) frac = 0.5;
        double mid;
        if (loglog) {
          const double ua = la < 0.0 ? std::log(-la) : std::log(la);
          const double ub = lb < 0.0 ? std::log(-lb) : std::log(lb);
          const double um = ua + frac * (ub - ua);
          mid = la < 0.0 ? -std::exp(um) : std::exp(um);
          if (!(mid > la) || !(mid < lb)) mid = la + 0.5 * (lb - la);
        } else {
          mid = la + frac * (lb - la);
        }
        if (!(mid > la) || !(mid < lb)) break;
        const double gm = g_of(mid);
        if (gm <= (double)budget - margin) {
          la = mid;
          ga = gm;
          // Close enough below the budget: the greedy finisher mops up the
          // rest for less than further probes would cost.
          if (gm >= (double)budget - 6.0 * (double)k) break;
          if (side == -1) gb = 0.5 * (gb + (double)budget);
          side = -1;
        } else if (gm >= (double)budget + margin) {
          lb = mid;
          gb = gm;
          if (side == 1) ga = 0.5 * (ga + (double)budget);
          side = 1;
        } else {
          break;  // straddling the budget closer than the safety margin
        }
      }
      if (ok) {
        long long s_wlo = s_fixed, s_whi = s_fixed;
        std::vector<long long> wlo(active.size()), whi(active.size());
        for (std::size_t j = 0; j < active.size(); ++j) {
          const int i = active[j];
          wlo[j] = detail::int_point_at(f, i, xlo[i - i0], xhi[i - i0], la);
          whi[j] = detail::int_point_at(f, i, xlo[i - i0], xhi[i - i0], lb);
          s_wlo += wlo[j];
          s_whi += whi[j];
        }
        if (s_wlo <= budget) {
          for (std::size_t j = 0; j < active.size(); ++j) {
            xlo[active[j] - i0] = wlo[j];
          }
          lam_lo = la;
          w_lo = (double)s_wlo;
          // The sweep below only exists to shrink the greedy finisher's
          // deficit; once the warm start has it within a few k, more sweep
          // iterations (each touching every active item) cost more than the
          // finisher's heap pops.
          if (budget - s_wlo <= 8 * (long long)k) {
            active.clear();
          }
        }
        if (!active.empty() && s_whi > budget) {
          for (std::size_t j = 0; j < active.size(); ++j) {
            xhi[active[j] - i0] = whi[j];
          }
          lam_hi = lb;
          w_hi = (double)s_whi;
        }
      }
    }
  }
  for (int iter = 0; iter < 200 && !active.empty(); ++iter) {
    long long gap = 0;
    for (int i : active) gap += xhi[i - i0] - xlo[i - i0];
    if (gap <= gap_target) break;
    double frac = w_hi > w_lo ? ((double)budget - w_lo) / (w_hi - w_lo) : 0.5;
    frac = std::clamp(frac, 0.05, 0.95);
    if (iter % 4 == 3) frac = 0.5;  // periodic plain bisection step
    const double lam = lam_lo + frac * (lam_hi - lam_lo);
    // Stop only when the dual window is exhausted at double precision; the
    // remaining bracket mass goes to the greedy finisher.
    if (!(lam > lam_lo) || !(lam < lam_hi)) break;
    long long s_mid = s_fixed;
    xm.resize(active.size());
    for (std::size_t j = 0; j < active.size(); ++j) {
      const int i = active[j];
      xm[j] = detail::int_point_at(f, i, xlo[i - i0], xhi[i - i0], lam);
      s_mid += xm[j];
    }
    if (s_mid <= budget) {
      lam_lo = lam;
      w_lo = (double)s_mid;
      if (last_side == -1) w_hi = 0.5 * (w_hi + (double)budget);
      last_side = -1;
      for (std::size_t j = 0; j < active.size(); ++j) xlo[active[j] - i0] = xm[j];
    } else {
      lam_hi = lam;
      w_hi = (double)s_mid;
      if (last_side == 1) w_lo = 0.5 * (w_lo + (double)budget);
      last_side = 1;
      for (std::size_t j = 0; j < active.size(); ++j) xhi[active[j] - i0] = xm[j];
    }
    std::size_t keep = 0;
    long long s_bracket_lo = s_fixed;
    for (std::size_t j = 0; j < active.size(); ++j) {
      const int i = active[j];
      s_bracket_lo += xlo[i - i0];
      if (xlo[i - i0] == xhi[i - i0]) {
        s_fixed += xlo[i - i0];
      } else {
        active[keep++] = i;
      }
    }
    active.resize(keep);
    if (s_bracket_lo == budget) break;
  }

  long long total = 0;
  for (int i = i0; i < i1; ++i) {
    x[i] = xlo[i - i0];
    total += x[i];
  }
  long long deficit = budget - total;
  if (deficit < 0) {
    throw InternalInvariantError("rap_convex_int: bracket overshoot");
  }
  if (deficit > 0) {
    // Exact greedy completion: repeatedly take the cheapest unit increment.
    // Bulk-heapified up front (linear) since deficits are usually far smaller
    // than the item count.
    using Item = std::pair<double, int>;
    std::vector<Item> pool;
    pool.reserve(k);
    for (int i = i0; i < i1; ++i) {
      if (x[i] < hi[i]) pool.emplace_back(f.unit_diff(i, x[i]), i);
    }
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap(
        std::greater<Item>(), std::move(pool));
    while (deficit > 0) {
      if (heap.empty()) {
        throw InternalInvariantError("rap_convex_int: ran out of capacity");
      }
      const int i = heap.top().second;
      heap.pop();
      ++x[i];
      --deficit;
      if (x[i] < hi[i]) heap.emplace(f.unit_diff(i, x[i]), i);
    }
  }
}

// Linear interpolation from `base` toward `toward` hitting the given sum:
// x = base + (budget - sum base) / (sum(toward - base)) * (toward - base).
// This is the closed form the clamp shortcut uses when a whole index range
// sits in one penalty regime (all marginal slopes equal), where any
// budget-matching point between the two anchors is optimal.
inline std::vector<double> interpolate_to_budget(
    const std::vector<double>& base, const std::vector<double>& toward,
    double budget) {
  double sbase = 0.0, span = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    sbase += base[i];
    span += toward[i] - base[i];
  }
  const double theta = span != 0.0 ? (budget - sbase) / span : 0.0;
  std::vector<double> x(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    x[i] = base[i] + theta * (toward[i] - base[i]);
  }
  return x;
}

// --- general convex, continuous ---------------------------------------------

struct ContDerivModel {
  std::function<double(int, double)> deriv;
  std::function<std::optional<double>(int, double)> inv_deriv;  // may be empty
};

void rap_convex_cont(const ContDerivModel& f, int i0, int i1, const double* lo,
                     const double* hi, double budget, double* x,
                     double feas_tol = 1e-12);

}  // namespace rapnc
