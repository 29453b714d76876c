#pragma once

// Divide-and-conquer solver for the nested problem. The recursion halves the
// set of prefix constraints; each node solves the relaxation of its index
// range for the four budget combinations (lower/upper bound at each end),
// then the parent reuses those solutions as variable bounds for its own
// single-constraint solve. Outside their box, objectives are extended with a
// linear penalty of slope M strictly above every |f_i'|, which keeps relaxed
// subproblem solutions meaningful while the root solution lands inside all
// boxes.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <type_traits>
#include <vector>

#include "rapnc/errors.hpp"
#include "rapnc/instance.hpp"
#include "rapnc/objective.hpp"
#include "rapnc/rap.hpp"

namespace rapnc {

struct SolveStats {
  long long rap_solves = 0;     // bounded single-constraint solves
  long long shortcut_hits = 0;  // nodes closed by the clamp shortcut
};

// Integer quadratic: continuous solve, then round within the unit box around
// it, choosing the cheapest unit increments. Falls back to the generic
// integer route when floating-point noise makes the rounding box infeasible.
void rap_quadratic_int(const ObjectiveAdapter& f, int i0, int i1,
                       const long long* lo, const long long* hi,
                       long long budget, long long* x);

// The solver's working form: bounds already on the solver grid (integers for
// the scaled/integer paths, doubles for the exact quadratic path).
template <class T>
struct ScaledProblem {
  const ObjectiveSpec* objective = nullptr;
  double scale = 1.0;  // solver coordinate y = scale * x
  std::vector<int> sigma;  // size m+1, sigma[0] = 0
  std::vector<T> a, b;     // size m+1, a[0] = b[0] = 0
  std::vector<T> c, d;     // size n
};

// Caps x at x_up componentwise and hands the trimmed mass back to entries
// with headroom, scanning in the stated direction. Requires
// sum(x) <= sum(x_up); preserves sum(x).
template <class T>
void adjust(std::vector<T>& x, const std::vector<T>& x_up, bool forward) {
  const int k = static_cast<int>(x.size());
  T pool = T(0);
  for (int s = 0; s < k; ++s) {
    const int j = forward ? s : k - 1 - s;
    if (x[j] > x_up[j]) {
      pool += x[j] - x_up[j];
      x[j] = x_up[j];
    }
  }
  if (pool == T(0)) return;
  for (int s = 0; s < k && pool > T(0); ++s) {
    const int j = forward ? s : k - 1 - s;
    if (x[j] < x_up[j]) {
      const T add = std::min(pool, x_up[j] - x[j]);
      x[j] += add;
      pool -= add;
    }
  }
  if constexpr (std::is_integral_v<T>) {
    if (pool != 0) throw InternalInvariantError("adjust: headroom exhausted");
  } else {
    if (pool != T(0)) x[0] += pool;  // float dust, keep the sum exact
  }
}

template <class T>
class MdaSolver {
  using Acc = std::conditional_t<std::is_integral_v<T>, __int128, long double>;

 public:
  MdaSolver(const ScaledProblem<T>& prob, double penalty_m, SolveStats* stats)
      : prob_(prob),
        f_(*prob.objective, prob.scale),
        M_(penalty_m),
        stats_(stats ? stats : &own_stats_) {
    const int n = static_cast<int>(prob_.c.size());
    csum_.assign(n + 1, Acc(0));
    dsum_.assign(n + 1, Acc(0));
    for (int i = 0; i < n; ++i) {
      csum_[i + 1] = csum_[i] + Acc(prob_.c[i]);
      dsum_[i + 1] = dsum_[i] + Acc(prob_.d[i]);
    }
    const ObjectiveSpec& spec = *prob_.objective;
    quad_fast_ = spec.kind == ObjectiveKind::kQuadratic &&
                 std::all_of(spec.w.begin(), spec.w.end(),
                             [](double w) { return w > 0.0; });
  }

  std::vector<T> run() {
    const int m = static_cast<int>(prob_.sigma.size()) - 1;
    NodeSol root = recurse(1, m);
    return std::move(root.x[0]);
  }

 private:
  struct NodeSol {
    std::array<std::vector<T>, 4> x;  // [li*2 + ri], li/ri = 0:lower 1:upper
  };

  T left_bound(int v, int li) const {
    return li == 0 ? prob_.a[v - 1] : prob_.b[v - 1];
  }
  T right_bound(int w, int ri) const {
    return ri == 0 ? prob_.a[w] : prob_.b[w];
  }

  NodeSol recurse(int v, int w) {
    const int i0 = prob_.sigma[v - 1];
    const int i1 = prob_.sigma[w];
    const bool lsame = prob_.a[v - 1] == prob_.b[v - 1];
    const bool rsame = prob_.a[w] == prob_.b[w];
    NodeSol out;

    if (v == w) {
      for (int li = 0; li < (lsame ? 1 : 2); ++li) {
        for (int ri = 0; ri < (rsame ? 1 : 2); ++ri) {
          out.x[li * 2 + ri].assign(i1 - i0, T(0));
          base_solve(i0, i1, right_bound(w, ri) - left_bound(v, li),
                     out.x[li * 2 + ri].data());
        }
      }
      fill_duplicates(out, lsame, rsame);
      return out;
    }

    const int u = (v + w) / 2;
    NodeSol left = recurse(v, u);
    NodeSol right = recurse(u + 1, w);
    const int nl = prob_.sigma[u] - i0;
    const int nr = i1 - prob_.sigma[u];

    // Per left-end choice: the lower-budget child solution, repaired to sit
    // under the higher-budget one; these become the node's variable bounds.
    std::array<std::vector<T>, 2> lo_left, lo_right;
    for (int li = 0; li < (lsame ? 1 : 2); ++li) {
      lo_left[li] = left.x[li * 2 + 0];
      adjust(lo_left[li], left.x[li * 2 + 1], /*forward=*/true);
    }
    for (int ri = 0; ri < (rsame ? 1 : 2); ++ri) {
      lo_right[ri] = right.x[1 * 2 + ri];
      adjust(lo_right[ri], right.x[0 * 2 + ri], /*forward=*/false);
    }

    std::vector<T> cbar(i1 - i0), dbar(i1 - i0);
    for (int li = 0; li < (lsame ? 1 : 2); ++li) {
      for (int ri = 0; ri < (rsame ? 1 : 2); ++ri) {
        std::copy_n(lo_left[li].data(), nl, cbar.data());
        std::copy_n(lo_right[ri].data(), nr, cbar.data() + nl);
        std::copy_n(left.x[li * 2 + 1].data(), nl, dbar.data());
        std::copy_n(right.x[0 * 2 + ri].data(), nr, dbar.data() + nl);
        out.x[li * 2 + ri].assign(i1 - i0, T(0));
        node_solve(i0, i1, right_bound(w, ri) - left_bound(v, li),
                   cbar.data(), dbar.data(), out.x[li * 2 + ri].data());
      }
    }
    fill_duplicates(out, lsame, rsame);
    return out;
  }

  void fill_duplicates(NodeSol& out, bool lsame, bool rsame) {
    if (rsame) {
      out.x[1] = out.x[0];
      if (!lsame) out.x[3] = out.x[2];
    }
    if (lsame) {
      out.x[2] = out.x[0];
      out.x[3] = out.x[1];
    }
  }

  // Relaxed solve: only the boxes [c, d] matter, extended by the penalty. A
  // budget outside [sum c, sum d] parks everyone at the nearer box corner and
  // dumps the surplus on the first index (all penalty slopes are equal, so
  // any split is optimal, and this one is deterministic).
  void base_solve(int i0, int i1, T budget, T* x) {
    const Acc sc = csum_[i1] - csum_[i0];
    const Acc sd = dsum_[i1] - dsum_[i0];
    if (Acc(budget) < sc) {
      for (int i = i0; i < i1; ++i) x[i - i0] = prob_.c[i];
      x[0] -= static_cast<T>(sc - Acc(budget));
      ++stats_->shortcut_hits;
      return;
    }
    if (Acc(budget) > sd) {
      for (int i = i0; i < i1; ++i) x[i - i0] = prob_.d[i];
      x[0] += static_cast<T>(Acc(budget) - sd);
      ++stats_->shortcut_hits;
      return;
    }
    rap_dispatch(i0, i1, prob_.c.data() + i0, prob_.d.data() + i0, budget, x);
  }

  // Bounded solve at an interior node: budget together with child-solution
  // bounds cbar <= x <= dbar (both indexed from 0 over [i0, i1)).
  void node_solve(int i0, int i1, T budget, const T* cbar, const T* dbar,
                  T* x) {
    const int k = i1 - i0;
    const Acc sc = csum_[i1] - csum_[i0];
    const Acc sd = dsum_[i1] - dsum_[i0];

    if (Acc(budget) < sc) {
      if (try_clamp_low(i0, i1, budget, cbar, dbar, x)) {
        ++stats_->shortcut_hits;
        return;
      }
      penalized_solve(i0, i1, budget, cbar, dbar, x);
      return;
    }
    if (Acc(budget) > sd) {
      if (try_clamp_high(i0, i1, budget, cbar, dbar, x)) {
        ++stats_->shortcut_hits;
        return;
      }
      penalized_solve(i0, i1, budget, cbar, dbar, x);
      return;
    }

    // Budget fits inside the boxes: an optimum exists with every coordinate
    // unpenalized, so tighten to the intersection and solve directly.
    std::vector<T> lo(k), hi(k);
    Acc slo = 0, shi = 0;
    bool valid = true;
    for (int j = 0; j < k; ++j) {
      lo[j] = std::max(prob_.c[i0 + j], cbar[j]);
      hi[j] = std::min(prob_.d[i0 + j], dbar[j]);
      if (lo[j] > hi[j]) {
        valid = false;
        break;
      }
      slo += Acc(lo[j]);
      shi += Acc(hi[j]);
    }
    if (!valid || Acc(budget) < slo || Acc(budget) > shi) {
      penalized_solve(i0, i1, budget, cbar, dbar, x);
      return;
    }
    rap_dispatch(i0, i1, lo.data(), hi.data(), budget, x);
  }

  // Budget below sum c: every coordinate can sit in its lower penalty region,
  // where all slopes are the constant -M. Requires cbar <= c throughout.
  bool try_clamp_low(int i0, int i1, T budget, const T* cbar, const T* dbar,
                     T* x) {
    const int k = i1 - i0;
    Acc scbar = 0;
    for (int j = 0; j < k; ++j) {
      if (cbar[j] > prob_.c[i0 + j]) return false;
      scbar += Acc(cbar[j]);
    }
    if (Acc(budget) < scbar) return false;
    if constexpr (std::is_integral_v<T>) {
      T rem = static_cast<T>(Acc(budget) - scbar);
      for (int j = 0; j < k; ++j) {
        const T cap = std::min(prob_.c[i0 + j], dbar[j]);
        const T add = std::clamp(rem, T(0), cap - cbar[j]);
        x[j] = cbar[j] + add;
        rem -= add;
      }
      if (rem != 0) return false;
      return true;
    } else {
      const Acc sc = csum_[i1] - csum_[i0];
      const long double span = (long double)(sc - scbar);
      const long double theta =
          span > 0 ? (long double)(sc - Acc(budget)) / span : 0.0L;
      long double total = 0;
      for (int j = 0; j < k; ++j) {
        x[j] = static_cast<T>(prob_.c[i0 + j] -
                              theta * (prob_.c[i0 + j] - cbar[j]));
        if (x[j] > dbar[j]) return false;
        total += x[j];
      }
      x[0] += static_cast<T>((long double)budget - total);
      return true;
    }
  }

  bool try_clamp_high(int i0, int i1, T budget, const T* cbar, const T* dbar,
                      T* x) {
    const int k = i1 - i0;
    Acc sdbar = 0;
    for (int j = 0; j < k; ++j) {
      if (dbar[j] < prob_.d[i0 + j]) return false;
      sdbar += Acc(dbar[j]);
    }
    if (Acc(budget) > sdbar) return false;
    if constexpr (std::is_integral_v<T>) {
      Acc start_sum = 0;
      for (int j = 0; j < k; ++j) {
        x[j] = std::max(prob_.d[i0 + j], cbar[j]);
        start_sum += Acc(x[j]);
      }
      if (Acc(budget) < start_sum) return false;
      T rem = static_cast<T>(Acc(budget) - start_sum);
      for (int j = 0; j < k && rem > 0; ++j) {
        const T add = std::min(rem, dbar[j] - x[j]);
        x[j] += add;
        rem -= add;
      }
      return rem == 0;
    } else {
      const Acc sd = dsum_[i1] - dsum_[i0];
      const long double span = (long double)(sdbar - sd);
      const long double theta =
          span > 0 ? (long double)(Acc(budget) - sd) / span : 0.0L;
      long double total = 0;
      for (int j = 0; j < k; ++j) {
        x[j] = static_cast<T>(prob_.d[i0 + j] +
                              theta * (dbar[j] - prob_.d[i0 + j]));
        if (x[j] < cbar[j]) return false;
        total += x[j];
      }
      x[0] += static_cast<T>((long double)budget - total);
      return true;
    }
  }

  // Correct-by-construction fallback: the penalty-extended objective solved
  // over [cbar, dbar] directly. Rare, so speed matters less than coverage.
  double pen_unit_diff(int i, double z) const {
    const double c = (double)prob_.c[i], d = (double)prob_.d[i];
    auto dist = [&](double y) {
      return std::max(0.0, c - y) + std::max(0.0, y - d);
    };
    return f_.diff(i, std::clamp(z, c, d), std::clamp(z + 1.0, c, d)) +
           M_ * (dist(z + 1.0) - dist(z));
  }

  // Inverse derivative of the penalty-extended objective; the flat penalty
  // regions make it a three-piece function with jumps at c and d. Exactness
  // is not needed here — it only seeds the bracketing search.
  std::optional<double> pen_inv_deriv(int i, double g) const {
    const double c = (double)prob_.c[i], d = (double)prob_.d[i];
    const double gc = f_.deriv(i, c), gd = f_.deriv(i, d);
    if (g <= gc - M_) return -8.9e18;
    if (g < gc) return c;
    if (g >= gd + M_) return 8.9e18;
    if (g > gd) return d;
    return f_.inv_deriv(i, g);
  }

  void penalized_solve(int i0, int i1, T budget, const T* cbar, const T* dbar,
                       T* x) {
    ++stats_->rap_solves;
    const int k = i1 - i0;
    if constexpr (std::is_integral_v<T>) {
      struct PenMarginals {
        const MdaSolver* s;
        double unit_diff(int i, long long z) const {
          return s->pen_unit_diff(i, (double)z);
        }
        std::optional<double> inv_deriv(int i, double g) const {
          return s->pen_inv_deriv(i, g);
        }
      } pm{this};
      std::vector<long long> glo(prob_.c.size()), ghi(prob_.c.size()),
          gx(prob_.c.size());
      std::copy_n(cbar, k, glo.data() + i0);
      std::copy_n(dbar, k, ghi.data() + i0);
      rap_convex_int(pm, i0, i1, glo.data(), ghi.data(), budget, gx.data());
      std::copy_n(gx.data() + i0, k, x);
    } else {
      ContDerivModel pm;
      const double M = M_;
      pm.deriv = [this, M](int i, double y) {
        const double c = (double)prob_.c[i], d = (double)prob_.d[i];
        double g = f_.deriv(i, std::clamp(y, c, d));
        if (y < c) g -= M;
        if (y > d) g += M;
        return g;
      };
      pm.inv_deriv = [this](int i, double g) { return pen_inv_deriv(i, g); };
      std::vector<double> glo(prob_.c.size()), ghi(prob_.c.size()),
          gx(prob_.c.size());
      std::copy_n(cbar, k, glo.data() + i0);
      std::copy_n(dbar, k, ghi.data() + i0);
      rap_convex_cont(pm, i0, i1, glo.data(), ghi.data(), (double)budget,
                      gx.data());
      std::copy_n(gx.data() + i0, k, x);
    }
  }

  // Plain bounded solve; bounds arrays are local to [i0, i1) but the
  // low-level solvers take globally indexed arrays, so shift into scratch.
  void rap_dispatch(int i0, int i1, const T* lo, const T* hi, T budget, T* x) {
    ++stats_->rap_solves;
    const int k = i1 - i0;
    const ObjectiveSpec& spec = *prob_.objective;
    scratch_lo_.resize(prob_.c.size());
    scratch_hi_.resize(prob_.c.size());
    scratch_x_.resize(prob_.c.size());
    std::copy_n(lo, k, scratch_lo_.data() + i0);
    std::copy_n(hi, k, scratch_hi_.data() + i0);

    if (spec.kind == ObjectiveKind::kLinear) {
      rap_linear<T>(spec.p, i0, i1, scratch_lo_.data(), scratch_hi_.data(),
                    budget, scratch_x_.data());
    } else if constexpr (std::is_integral_v<T>) {
      if (quad_fast_) {
        rap_quadratic_int(f_, i0, i1, scratch_lo_.data(), scratch_hi_.data(),
                          budget, scratch_x_.data());
      } else {
        struct AdapterMarginals {
          const ObjectiveAdapter* f;
          double unit_diff(int i, long long z) const {
            return f->unit_diff(i, (double)z);
          }
          std::optional<double> inv_deriv(int i, double g) const {
            return f->inv_deriv(i, g);
          }
        } im{&f_};
        rap_convex_int(im, i0, i1, scratch_lo_.data(), scratch_hi_.data(),
                       budget, scratch_x_.data());
      }
    } else {
      if (quad_fast_) {
        rap_quadratic_cont(f_, i0, i1, scratch_lo_.data(), scratch_hi_.data(),
                           budget, scratch_x_.data());
      } else {
        ContDerivModel cm;
        cm.deriv = [this](int i, double y) { return f_.deriv(i, y); };
        cm.inv_deriv = [this](int i, double g) { return f_.inv_deriv(i, g); };
        rap_convex_cont(cm, i0, i1, scratch_lo_.data(), scratch_hi_.data(),
                        (double)budget, scratch_x_.data());
      }
    }
    std::copy_n(scratch_x_.data() + i0, k, x);
  }

  const ScaledProblem<T>& prob_;
  ObjectiveAdapter f_;
  double M_;
  SolveStats* stats_;
  SolveStats own_stats_;
  std::vector<Acc> csum_, dsum_;
  std::vector<T> scratch_lo_, scratch_hi_, scratch_x_;
  bool quad_fast_ = false;
};

// Entry points working on validated instances; both throw DomainError for
// malformed input, InfeasibleError (or ScaledInfeasible) when no feasible
// point exists.
Allocation solve_integer(const NestedInstance& ins,
                         const SolverConfig& config = {},
                         SolveStats* stats = nullptr);

Allocation solve_continuous(const NestedInstance& ins,
                            const SolverConfig& config = {},
                            SolveStats* stats = nullptr);

Allocation solve(const NestedInstance& ins, Mode mode,
                 const SolverConfig& config = {}, SolveStats* stats = nullptr);

struct KktReport {
  bool ok = false;
  std::string message;
  double max_violation = 0.0;
  KktCertificate certificate;
};

// Checks stationarity of a feasible point via the dual chain over the
// constraint segments; tol widens the per-variable gradient intervals (use 0
// for integer points, something like n*epsilon*Lipschitz for approximate
// continuous ones).
KktReport verify_kkt(const NestedInstance& ins, const std::vector<double>& x,
                     Mode mode, double tol);

}  // namespace rapnc
