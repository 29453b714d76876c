#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "rapnc/mda.hpp"
#include "rapnc/oracle.hpp"
#include "rapnc/reductions.hpp"
#include "rapnc/rng.hpp"

using namespace rapnc;

namespace {

LotSizingInstance basic_ls() {
  LotSizingInstance ls;
  ls.n = 2;
  ls.demand = {1, 1};
  ls.initial_inventory = 0;
  ls.inventory_cap = {1, 1};
  ls.production_cap = {2, 2};
  ls.production_cost = ObjectiveSpec::linear({0, 0});
  ls.holding_cost = {0, 0};
  return ls;
}

// Brute-force optimum over all integer production plans.
double enumerate_best(const LotSizingInstance& ls) {
  std::vector<double> plan(ls.n, 0.0);
  double best = 1e300;
  std::vector<long long> caps(ls.n);
  for (int i = 0; i < ls.n; ++i) caps[i] = (long long)ls.production_cap[i];
  std::vector<long long> x(ls.n, 0);
  while (true) {
    for (int i = 0; i < ls.n; ++i) plan[i] = (double)x[i];
    try {
      best = std::min(best, lot_sizing_plan_cost(ls, plan));
    } catch (const InfeasibleError&) {
    }
    int i = 0;
    while (i < ls.n && ++x[i] > caps[i]) x[i++] = 0;
    if (i == ls.n) break;
  }
  return best;
}

}  // namespace

TEST_CASE("lot-sizing reduction produces the expected nested bounds") {
  const LotSizingReduction red = lot_sizing_to_rapnc(basic_ls());
  const NestedInstance& ins = red.instance;
  CHECK(ins.n == 3);  // two periods plus the slack variable
  CHECK(ins.m == 3);
  CHECK(ins.a[1] == doctest::Approx(1));
  CHECK(ins.b[1] == doctest::Approx(2));
  CHECK(ins.a[2] == doctest::Approx(2));
  CHECK(ins.b[2] == doctest::Approx(3));
  CHECK(ins.a[3] == doctest::Approx(3));  // total pinned at the final upper bound
  CHECK(ins.b[3] == doctest::Approx(3));
  CHECK(ins.c[2] == doctest::Approx(0));
  CHECK(ins.d[2] == doctest::Approx(1));  // slack box
  CHECK(red.value_offset == doctest::Approx(0));
  CHECK(validate(ins, Mode::kInteger).ok);
}

TEST_CASE("stock covering all demand makes zero production optimal") {
  LotSizingInstance ls = basic_ls();
  ls.initial_inventory = 5;
  ls.inventory_cap = {10, 10};
  const LotSizingReduction red = lot_sizing_to_rapnc(ls);
  const Allocation got = solve_integer(red.instance);
  CHECK(got.objective_value + red.value_offset ==
        doctest::Approx(lot_sizing_plan_cost(ls, {0, 0})));
  CHECK(got.objective_value + red.value_offset == doctest::Approx(0));
}

TEST_CASE("holding costs fold into the per-period linear coefficients") {
  LotSizingInstance ls = basic_ls();
  ls.holding_cost = {1, 0};
  const LotSizingReduction red = lot_sizing_to_rapnc(ls);
  // A unit made in period 1 is held through period 1 only: coefficient 1.
  CHECK(red.instance.objective.p[0] == doctest::Approx(1));
  CHECK(red.instance.objective.p[1] == doctest::Approx(0));
  // Constant part: holding_cost[0] * (K - D_1) = 1 * (0 - 1).
  CHECK(red.value_offset == doctest::Approx(-1));
}

TEST_CASE("impossible lot-sizing inputs raise NegativeBound") {
  SUBCASE("stock exceeds demand plus inventory cap") {
    LotSizingInstance ls = basic_ls();
    ls.initial_inventory = 5;
    ls.inventory_cap = {0, 0};
    CHECK_THROWS_AS(lot_sizing_to_rapnc(ls), NegativeBound);
  }
  SUBCASE("demand exceeds stock plus production capacity") {
    LotSizingInstance ls = basic_ls();
    ls.demand = {3, 3};
    ls.production_cap = {1, 1};
    CHECK_THROWS_AS(lot_sizing_to_rapnc(ls), NegativeBound);
  }
}

TEST_CASE("lot-sizing round-trip equals brute-force enumeration") {
  Rng rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    LotSizingInstance ls;
    ls.n = 1 + (int)rng.uniform_int(0, 4);
    const bool quadratic = trial % 2 == 1;
    std::vector<double> p(ls.n), w(ls.n), t(ls.n);
    for (int i = 0; i < ls.n; ++i) {
      ls.demand.push_back((double)rng.uniform_int(0, 3));
      ls.inventory_cap.push_back((double)rng.uniform_int(0, 4));
      ls.production_cap.push_back((double)rng.uniform_int(0, 4));
      ls.holding_cost.push_back((double)rng.uniform_int(0, 2));
      p[i] = rng.uniform(0.0, 3.0);
      w[i] = rng.uniform(0.2, 2.0);
      t[i] = rng.uniform(0.0, 3.0);
    }
    ls.initial_inventory = (double)rng.uniform_int(0, 2);
    ls.production_cost = quadratic ? ObjectiveSpec::quadratic(w, t)
                                   : ObjectiveSpec::linear(p);
    LotSizingReduction red;
    try {
      red = lot_sizing_to_rapnc(ls);
    } catch (const NegativeBound&) {
      continue;  // genuinely impossible input
    }
    if (!validate(red.instance, Mode::kInteger).ok) {
      // Nested bounds consistent per period but jointly infeasible: the
      // enumeration must agree that no plan exists.
      CHECK(enumerate_best(ls) > 1e299);
      continue;
    }
    const Allocation got = dp_solve(red.instance);
    const double want = enumerate_best(ls);
    CHECK(got.objective_value + red.value_offset ==
          doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("speed objective is flat below the economical speed") {
  const ObjectiveSpec obj = make_speed_objective({1}, {10}, {5});
  // x = delta / speed; speed 4 is below v_opt = 5, so the cost equals the
  // cost at v_opt exactly.
  const double at_speed4 = obj.value(0, 10.0 / 4.0);
  const double at_vopt = obj.value(0, 10.0 / 5.0);
  CHECK(at_speed4 == doctest::Approx(at_vopt));
  CHECK(at_vopt == doctest::Approx(1.0 * 10.0 * 125.0));
  // Above v_opt the cubic law applies.
  CHECK(obj.value(0, 1.0) == doctest::Approx(1e4));
  CHECK_THROWS_AS(obj.value(0, 0.0), DomainError);
}

TEST_CASE("speed objective is convex and nonincreasing in travel time") {
  const ObjectiveSpec obj = make_speed_objective({2}, {7}, {3});
  Rng rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    double x = rng.uniform(0.2, 10.0), y = rng.uniform(0.2, 10.0);
    if (x > y) std::swap(x, y);
    CHECK(obj.value(0, x) >= obj.value(0, y) - 1e-12);
    const double mid = obj.value(0, 0.5 * (x + y));
    const double avg = 0.5 * (obj.value(0, x) + obj.value(0, y));
    CHECK(mid <= avg + 1e-9 * std::max(1.0, std::fabs(avg)));
  }
}

TEST_CASE("pinned destination window forces the leg speed") {
  SpeedOptInstance so;
  so.n = 1;
  so.leg_length = {10};
  so.window_lo = {2};
  so.window_hi = {2};
  so.v_max = 10;
  so.fuel_price = {1};
  so.v_opt = {0};
  const NestedInstance ins = speed_opt_to_rapnc(so);
  CHECK(validate(ins, Mode::kContinuous).ok);
  const Allocation got = solve_continuous(ins);
  CHECK(got.x[0] == doctest::Approx(2.0));  // speed 10/2 = 5
}

TEST_CASE("symmetric two-leg route splits the time evenly") {
  SpeedOptInstance so;
  so.n = 2;
  so.leg_length = {10, 10};
  so.window_lo = {0, 4};
  so.window_hi = {4, 4};
  so.v_max = 10;
  so.fuel_price = {1, 1};
  so.v_opt = {0, 0};
  const NestedInstance ins = speed_opt_to_rapnc(so);
  SolverConfig cfg;
  cfg.epsilon = 1e-6;
  const Allocation got = solve_continuous(ins, cfg);
  CHECK(got.x[0] == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(got.x[1] == doctest::Approx(2.0).epsilon(1e-3));
  // Implied speeds [5, 5]; total fuel 2 * 10 * 5^3.
  CHECK(got.objective_value == doctest::Approx(2500.0).epsilon(1e-3));
}

TEST_CASE("unreachable windows raise WindowInfeasible") {
  SpeedOptInstance so;
  so.n = 1;
  so.leg_length = {100};
  so.window_lo = {0};
  so.window_hi = {1};  // needs speed 100 > v_max
  so.v_max = 10;
  so.fuel_price = {1};
  so.v_opt = {0};
  CHECK_THROWS_AS(speed_opt_to_rapnc(so), WindowInfeasible);
}

TEST_CASE("random speed reductions validate and solve feasibly") {
  Rng rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    SpeedOptInstance so;
    so.n = 1 + (int)rng.uniform_int(0, 3);
    so.v_max = 10;
    so.v_min = 1;
    double t = 0;
    for (int i = 0; i < so.n; ++i) {
      so.leg_length.push_back(rng.uniform(1.0, 10.0));
      // Grow windows around a feasible schedule at speed ~4.
      t += so.leg_length.back() / rng.uniform(3.0, 5.0);
      so.window_lo.push_back(std::max(0.0, t - rng.uniform(0.0, 1.0)));
      so.window_hi.push_back(t + rng.uniform(0.0, 1.0));
      so.fuel_price.push_back(rng.uniform(0.5, 2.0));
      so.v_opt.push_back(rng.uniform(0.0, 3.0));
    }
    const NestedInstance ins = speed_opt_to_rapnc(so);
    CHECK(validate(ins, Mode::kContinuous).ok);
    const Allocation got = solve_continuous(ins);
    const auto rep = check_feasibility(ins, got.x);
    CHECK(rep.max_nested_violation <= 1e-9);
    CHECK(rep.max_box_violation <= 1e-9);
    CHECK(rep.sum_residual <= 1e-9);
  }
}
