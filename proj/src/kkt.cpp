#include <cmath>
#include <limits>

#include "rapnc/mda.hpp"

namespace rapnc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool empty(double eps) const { return lo > hi + eps; }
};

}  // namespace

// Stationarity over the chain of prefix constraints: within a segment every
// non-degenerate variable shares one dual value phi_k, and consecutive
// segments relate through the multipliers of the nested bound between them
// (equal when the bound is slack, ordered when one side is active). The
// check finds a consistent phi assignment by interval propagation or reports
// the first contradiction.
KktReport verify_kkt(const NestedInstance& ins, const std::vector<double>& x,
                     Mode mode, double tol) {
  KktReport rep;
  const int n = ins.n, m = ins.m;
  if ((int)x.size() != n) {
    rep.message = "point has wrong dimension";
    return rep;
  }
  const double feas_tol = mode == Mode::kInteger ? 1e-9 : std::max(1e-9, tol);
  const FeasibilityReport fr = check_feasibility(ins, x);
  if (!fr.all_zero(feas_tol)) {
    rep.message = "point is not feasible";
    rep.max_violation = std::max({fr.max_nested_violation,
                                  fr.max_box_violation, fr.sum_residual});
    return rep;
  }

  // Admissible dual range per variable: the subgradient interval of the
  // box-constrained f_i at x_i, opened to infinity on active box sides.
  std::vector<double> glo(n), ghi(n);
  for (int i = 0; i < n; ++i) {
    if (mode == Mode::kInteger) {
      const double z = std::round(x[i]);
      glo[i] = z <= ins.c[i] ? -kInf : ins.objective.diff(i, z - 1.0, z);
      ghi[i] = z >= ins.d[i] ? kInf : ins.objective.diff(i, z, z + 1.0);
    } else {
      const double g = ins.objective.deriv(i, x[i]);
      const double widen = tol * (1.0 + std::fabs(g));
      glo[i] = x[i] <= ins.c[i] + tol ? -kInf : g - widen;
      ghi[i] = x[i] >= ins.d[i] - tol ? kInf : g + widen;
    }
  }

  std::vector<Interval> seg(m + 1);
  for (int k = 1; k <= m; ++k) {
    Interval s;
    for (int i = ins.sigma[k - 1]; i < ins.sigma[k]; ++i) {
      s.lo = std::max(s.lo, glo[i]);
      s.hi = std::min(s.hi, ghi[i]);
    }
    if (s.empty(1e-9)) {
      rep.message = "segment " + std::to_string(k) +
                    " admits no common dual value";
      rep.max_violation = s.lo - s.hi;
      return rep;
    }
    seg[k] = s;
  }

  // Activity of each interior nested bound at the point.
  std::vector<bool> low_act(m, false), up_act(m, false);
  {
    double prefix = 0.0;
    int i = 0;
    for (int k = 1; k < m; ++k) {
      for (; i < ins.sigma[k]; ++i) prefix += x[i];
      low_act[k] = prefix <= ins.a[k] + feas_tol;
      up_act[k] = prefix >= ins.b[k] - feas_tol;
    }
  }

  // Backward pass: A[k] = dual values at segment k extendable to the tail.
  std::vector<Interval> A(m + 1);
  A[m] = seg[m];
  for (int k = m - 1; k >= 1; --k) {
    Interval t;
    if (low_act[k] && up_act[k]) {
      t = {-kInf, kInf};
    } else if (low_act[k]) {
      t = {A[k + 1].lo, kInf};  // phi_k >= phi_{k+1} for some admissible value
    } else if (up_act[k]) {
      t = {-kInf, A[k + 1].hi};
    } else {
      t = A[k + 1];
    }
    A[k].lo = std::max(seg[k].lo, t.lo);
    A[k].hi = std::min(seg[k].hi, t.hi);
    if (A[k].empty(1e-9)) {
      rep.message = "dual chain breaks between segments " + std::to_string(k) +
                    " and " + std::to_string(k + 1);
      rep.max_violation = A[k].lo - A[k].hi;
      return rep;
    }
  }

  auto pick = [](const Interval& iv, double prefer) {
    double v = prefer;
    if (v < iv.lo) v = iv.lo;
    if (v > iv.hi) v = iv.hi;
    if (!std::isfinite(v)) v = std::isfinite(iv.lo) ? iv.lo : 0.0;
    return v;
  };

  std::vector<double> phi_seg(m + 1);
  phi_seg[1] = pick(A[1], 0.0);
  rep.certificate.kappa.assign(m, 0.0);
  rep.certificate.lambda.assign(m, 0.0);
  for (int k = 2; k <= m; ++k) {
    const double prev = phi_seg[k - 1];
    double v;
    if (low_act[k - 1] && up_act[k - 1]) {
      v = pick(A[k], prev);
    } else if (low_act[k - 1]) {
      v = std::min(prev, A[k].hi);  // may step down across an active lower bound
      v = std::max(v, A[k].lo);
    } else if (up_act[k - 1]) {
      v = std::max(prev, A[k].lo);
      v = std::min(v, A[k].hi);
    } else {
      v = prev;
    }
    phi_seg[k] = v;
    if (low_act[k - 1]) {
      rep.certificate.kappa[k - 1] = std::max(0.0, prev - v);
    }
    if (up_act[k - 1]) {
      rep.certificate.lambda[k - 1] = std::max(0.0, v - prev);
    }
  }

  rep.certificate.phi.resize(n);
  for (int k = 1; k <= m; ++k) {
    for (int i = ins.sigma[k - 1]; i < ins.sigma[k]; ++i) {
      rep.certificate.phi[i] = phi_seg[k];
    }
  }
  rep.ok = true;
  rep.message = "stationary";
  return rep;
}

}  // namespace rapnc
