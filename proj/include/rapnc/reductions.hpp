#pragma once

// Converters from two application models into NestedInstance form:
//   - single-item production lot-sizing with inventory bounds
//   - vessel speed optimization with port time windows
// Both models leave the final cumulative quantity ranged, while the solver's
// canonical form requires an exact total; each reduction appends one
// zero-cost slack variable to close the gap.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rapnc/errors.hpp"
#include "rapnc/instance.hpp"

namespace rapnc {

// Cumulative demand exceeds what stock plus production capacity can cover.
struct NegativeBound : InfeasibleError {
  using InfeasibleError::InfeasibleError;
};

// Port time windows are unreachable even at maximum speed.
struct WindowInfeasible : InfeasibleError {
  using InfeasibleError::InfeasibleError;
};

// --- production lot-sizing ----------------------------------------------------

// Plan production x_i over n periods: inventory I_i = K + sum_{k<=i} x_k -
// sum_{k<=i} demand_k must stay in [0, inventory_cap_i], production in
// [0, production_cap_i]. Cost = production cost + sum_i holding_cost_i * I_i.
struct LotSizingInstance {
  int n = 0;
  std::vector<double> demand;          // size n, >= 0
  double initial_inventory = 0.0;      // K >= 0
  std::vector<double> inventory_cap;   // size n, >= 0
  std::vector<double> production_cap;  // size n, >= 0
  // Per-period production cost; linear and quadratic (positive-curvature)
  // families are supported, so holding costs fold into the same family.
  ObjectiveSpec production_cost;
  std::vector<double> holding_cost;    // size n, >= 0
};

struct LotSizingReduction {
  // n+1 variables: production per period plus a trailing slack standing for
  // the final inventory headroom.
  NestedInstance instance;
  // Add to the solver objective to recover the lot-sizing cost.
  double value_offset = 0.0;
};

// Prefix-demand arithmetic: after period i, cumulative production must lie in
// [D_i - K, D_i - K + inventory_cap_i] with D_i the cumulative demand.
// Holding costs collapse to the per-variable linear term
// (sum of holding_cost over periods >= i) * x_i plus a constant, which is
// returned in value_offset.
LotSizingReduction lot_sizing_to_rapnc(const LotSizingInstance& ls);

// Direct cost of a concrete production plan (used by tests as ground truth).
// Throws InfeasibleError if the plan violates inventory or capacity bounds.
double lot_sizing_plan_cost(const LotSizingInstance& ls,
                            const std::vector<double>& production);

// --- vessel speed optimization -------------------------------------------------

// Choose leg speeds for a route of n legs; arrival time at port i is the
// prefix sum of inter-arrival times and must land inside [window_lo_i,
// window_hi_i]. Fuel per mile is fuel_price * v^3 above the economical speed
// v_opt and flat below it.
struct SpeedOptInstance {
  int n = 0;
  std::vector<double> leg_length;  // size n, > 0 (distance of leg i)
  std::vector<double> window_lo;   // size n (arrival window at port i)
  std::vector<double> window_hi;   // size n
  double v_min = 0.0;              // 0 disables the lower speed limit
  double v_max = 0.0;              // > 0
  std::vector<double> fuel_price;  // size n, > 0
  std::vector<double> v_opt;       // size n, >= 0 (0 disables flattening)
};

// The per-leg travel-time objective: with x the leg's travel time and
// v = delta / x the implied speed,
//   cost(x) = price * delta * v_opt^3          when v <= v_opt (flat region)
//   cost(x) = price * delta^4 / x^3            when v >  v_opt
// Convex and nonincreasing in x. The spec carries (price, delta, v_opt) in
// (p, c, t) so the file format can serialize it under the tag "speed".
ObjectiveSpec make_speed_objective(std::vector<double> price,
                                   std::vector<double> delta,
                                   std::vector<double> v_opt);

// n+1 variables: inter-arrival times per leg plus the trailing slack that
// turns the final arrival window into the required total-time equality.
NestedInstance speed_opt_to_rapnc(const SpeedOptInstance& so);

// --- structured-text input ------------------------------------------------------

LotSizingInstance read_lot_sizing(std::istream& in);
LotSizingInstance read_lot_sizing_file(const std::string& path);
SpeedOptInstance read_speed_opt(std::istream& in);
SpeedOptInstance read_speed_opt_file(const std::string& path);

}  // namespace rapnc
