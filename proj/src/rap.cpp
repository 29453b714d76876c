#include "rapnc/rap.hpp"

#include <cassert>

namespace rapnc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

void rap_quadratic_cont(const ObjectiveAdapter& f, int i0, int i1,
                        const double* lo, const double* hi, double budget,
                        double* x) {
  check_rap_feasible(lo, hi, i0, i1, budget);
  const ObjectiveSpec& spec = f.spec();
  const double inv_s = f.inv_scale();
  // In solver coordinates y = x * s the term is (w * inv_s^2) * (y - t/inv_s)^2.
  const double ws = inv_s * inv_s;

  // Median-of-breakpoints search: S(mu) = sum_i clamp(t_i + mu/(2 w_i),
  // lo_i, hi_i) is piecewise linear and nondecreasing in mu with breakpoints
  // where a variable leaves its lower bound or hits its upper one. Repeated
  // median selection over the surviving breakpoints halves the candidate set
  // each round, so the whole search is linear time.
  struct Item {
    double ty;   // target in solver coordinates
    double hw;   // 1/(2 w) in solver coordinates
    double mlo;  // mu at which x leaves lo
    double mhi;  // mu at which x reaches hi
    int i;
  };
  const int k = i1 - i0;
  std::vector<Item> act;
  act.reserve(k);
  std::vector<double> bp;
  bp.reserve(2 * k);
  double fixed = 0.0;                  // sum over items pinned to a bound
  double free_t = 0.0, free_c = 0.0;   // aggregate of permanently free items
  for (int i = i0; i < i1; ++i) {
    const double wy = spec.w[i] * ws;
    if (!(wy > 0.0)) {
      throw NonConvexDetected("quadratic solver requires positive curvature");
    }
    const double ty = spec.t[i] / inv_s;
    const double hw = 0.5 / wy;
    const Item it{ty, hw, 2.0 * wy * (lo[i] - ty), 2.0 * wy * (hi[i] - ty), i};
    act.push_back(it);
    bp.push_back(it.mlo);
    bp.push_back(it.mhi);
  }
  double mu_lo = -kInf, mu_hi = kInf;
  while (!bp.empty()) {
    const auto mid = bp.begin() + bp.size() / 2;
    std::nth_element(bp.begin(), mid, bp.end());
    const double mu = *mid;
    double s = fixed + free_t + free_c * mu;
    for (const Item& a : act) {
      s += mu <= a.mlo   ? lo[a.i]
           : mu >= a.mhi ? hi[a.i]
                         : a.ty + a.hw * mu;
    }
    if (s >= budget) {
      mu_hi = mu;
      bp.erase(std::remove_if(bp.begin(), bp.end(),
                              [mu](double v) { return v >= mu; }),
               bp.end());
    } else {
      mu_lo = mu;
      bp.erase(std::remove_if(bp.begin(), bp.end(),
                              [mu](double v) { return v <= mu; }),
               bp.end());
    }
    // Retire items whose behavior is now constant or linear on (mu_lo, mu_hi).
    std::size_t keep = 0;
    for (const Item& a : act) {
      if (a.mhi <= mu_lo) {
        fixed += hi[a.i];
      } else if (a.mlo >= mu_hi) {
        fixed += lo[a.i];
      } else if (a.mlo <= mu_lo && a.mhi >= mu_hi) {
        free_t += a.ty;
        free_c += a.hw;
      } else {
        act[keep++] = a;
      }
    }
    act.resize(keep);
  }
  // With no breakpoints left inside, every item retired: S(mu) = fixed +
  // free_t + free_c * mu on (mu_lo, mu_hi).
  double mu_star;
  if (free_c > 0.0) {
    mu_star = (budget - fixed - free_t) / free_c;
    if (mu_lo > -kInf) mu_star = std::max(mu_star, mu_lo);
    if (mu_hi < kInf) mu_star = std::min(mu_star, mu_hi);
  } else {
    // Flat segment: budget equals the pinned sum; any mu in the interval works.
    mu_star = mu_lo > -kInf ? mu_lo : (mu_hi < kInf ? mu_hi : 0.0);
  }

  double total = 0.0;
  double free_span = 0.0;
  for (int i = i0; i < i1; ++i) {
    const double wy = spec.w[i] * ws;
    const double ty = spec.t[i] / inv_s;
    x[i] = std::clamp(ty + mu_star / (2.0 * wy), lo[i], hi[i]);
    total += x[i];
    if (x[i] > lo[i] && x[i] < hi[i]) free_span += hi[i] - lo[i];
  }
  // Kill the last bits of rounding error on the sum constraint.
  double r = budget - total;
  if (r != 0.0) {
    for (int i = i0; i < i1 && r != 0.0; ++i) {
      if (x[i] <= lo[i] || x[i] >= hi[i]) continue;
      const double step = std::clamp(x[i] + r, lo[i], hi[i]) - x[i];
      x[i] += step;
      r -= step;
    }
    for (int i = i0; i < i1 && std::fabs(r) > 0.0; ++i) {
      const double step = std::clamp(x[i] + r, lo[i], hi[i]) - x[i];
      x[i] += step;
      r -= step;
    }
  }
  (void)free_span;
}

namespace {

double cont_point_at(const ContDerivModel& f, int i, double blo, double bhi,
                     double lambda) {
  if (!(blo < bhi)) return blo;
  if (f.inv_deriv) {
    if (auto g = f.inv_deriv(i, lambda)) {
      return std::clamp(*g, blo, bhi);
    }
  }
  if (f.deriv(i, blo) >= lambda) return blo;
  if (f.deriv(i, bhi) <= lambda) return bhi;
  double a = blo, b = bhi;
  for (int it = 0; it < 80 && b - a > 1e-15 * std::max(1.0, std::fabs(a));
       ++it) {
    const double m = 0.5 * (a + b);
    if (f.deriv(i, m) < lambda) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

void rap_convex_cont(const ContDerivModel& f, int i0, int i1, const double* lo,
                     const double* hi, double budget, double* x,
                     double feas_tol) {
  check_rap_feasible(lo, hi, i0, i1, budget);
  const int k = i1 - i0;
  std::vector<double> xlo(k), xhi(k);
  double s_lo = 0, s_hi = 0;
  double lam_lo = kInf, lam_hi = -kInf;
  for (int i = i0; i < i1; ++i) {
    xlo[i - i0] = lo[i];
    xhi[i - i0] = hi[i];
    s_lo += lo[i];
    s_hi += hi[i];
    if (lo[i] < hi[i]) {
      lam_lo = std::min(lam_lo, f.deriv(i, lo[i]));
      lam_hi = std::max(lam_hi, f.deriv(i, hi[i]));
    }
  }
  if (budget <= s_lo) {
    for (int i = i0; i < i1; ++i) x[i] = lo[i];
    return;
  }
  if (budget >= s_hi) {
    for (int i = i0; i < i1; ++i) x[i] = hi[i];
    return;
  }
  if (!(lam_lo < kInf)) lam_lo = -1.0;
  if (!(lam_hi > -kInf)) lam_hi = 1.0;
  lam_lo -= 1e-9 * std::max(1.0, std::fabs(lam_lo));
  lam_hi += 1e-9 * std::max(1.0, std::fabs(lam_hi));

  for (int iter = 0; iter < 200; ++iter) {
    const double lam = 0.5 * (lam_lo + lam_hi);
    if (!(lam > lam_lo) || !(lam < lam_hi)) break;
    double s_mid = 0;
    for (int i = i0; i < i1; ++i) {
      s_mid += cont_point_at(f, i, xlo[i - i0], xhi[i - i0], lam);
    }
    if (s_mid <= budget) {
      lam_lo = lam;
      for (int i = i0; i < i1; ++i) {
        xlo[i - i0] = cont_point_at(f, i, xlo[i - i0], xhi[i - i0], lam);
      }
    } else {
      lam_hi = lam;
      for (int i = i0; i < i1; ++i) {
        xhi[i - i0] = cont_point_at(f, i, xlo[i - i0], xhi[i - i0], lam);
      }
    }
    double gap = 0;
    for (int j = 0; j < k; ++j) gap += xhi[j] - xlo[j];
    if (gap <= feas_tol * std::max(1.0, std::fabs(budget))) break;
  }

  double total = 0;
  double span = 0;
  for (int j = 0; j < k; ++j) {
    x[i0 + j] = xlo[j];
    total += xlo[j];
    span += xhi[j] - xlo[j];
  }
  // Spread the leftover bracket mass proportionally; it is bounded by the
  // bisection gap, so this perturbs each coordinate by at most that amount.
  double r = budget - total;
  if (span > 0 && r > 0) {
    for (int j = 0; j < k; ++j) {
      x[i0 + j] += r * (xhi[j] - xlo[j]) / span;
    }
  } else if (r != 0.0) {
    for (int j = 0; j < k && r != 0.0; ++j) {
      const double step = std::clamp(x[i0 + j] + r, lo[i0 + j], hi[i0 + j]) -
                          x[i0 + j];
      x[i0 + j] += step;
      r -= step;
    }
  }
}

}  // namespace rapnc
