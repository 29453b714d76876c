#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "rapnc/mda.hpp"
#include "rapnc/oracle.hpp"
#include "rapnc/rng.hpp"

using namespace rapnc;

namespace {

NestedInstance quad_fixture() {
  // n = 2: prefix of x1 in [0, 1], total 4, boxes [0, 4]^2, targets at 0.
  return NestedInstance::make({1, 2}, {0, 4}, {1, 4}, {0, 0}, {4, 4},
                              ObjectiveSpec::quadratic({1, 1}, {0, 0}));
}

// Random integral instance guaranteed feasible: bounds grown around a
// feasible trajectory, like the benchmark generator but on the integer grid.
NestedInstance random_feasible_int(Rng& rng, const ObjectiveSpec& proto,
                                   int max_n = 8, long long max_box = 3) {
  const int n = 1 + (int)rng.uniform_int(0, max_n - 1);
  std::vector<int> sigma;
  for (int i = 1; i < n; ++i) {
    if (rng.next_double() < 0.5) sigma.push_back(i);
  }
  sigma.push_back(n);
  const int m = (int)sigma.size();
  std::vector<double> c(n), d(n);
  std::vector<long long> walk(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    const long long l = rng.uniform_int(1, 2);
    const long long h = l + rng.uniform_int(0, max_box);
    c[i] = (double)l;
    d[i] = (double)h;
    walk[i + 1] = walk[i] + rng.uniform_int(l, h);
  }
  std::vector<double> a(m), b(m);
  for (int k = 0; k < m; ++k) {
    const long long s = walk[sigma[k]];
    a[k] = (double)(s - rng.uniform_int(0, 2));
    b[k] = (double)(s + rng.uniform_int(0, 2));
  }
  a[m - 1] = b[m - 1] = (double)walk[n];

  ObjectiveSpec obj = proto;
  const std::size_t need = (std::size_t)n;
  auto fit = [&](std::vector<double>& v, double lo, double hi) {
    v.resize(need);
    for (auto& e : v) e = rng.uniform(lo, hi);
  };
  switch (obj.kind) {
    case ObjectiveKind::kLinear:
      fit(obj.p, -1.0, 2.0);
      break;
    case ObjectiveKind::kQuadratic:
      fit(obj.w, 0.1, 2.0);
      fit(obj.t, 0.0, 5.0);
      break;
    case ObjectiveKind::kF:
      fit(obj.p, -2.0, 2.0);
      break;
    case ObjectiveKind::kCrash:
      fit(obj.k, 0.0, 1.0);
      fit(obj.p, 0.1, 2.0);
      break;
    case ObjectiveKind::kFuel:
      fit(obj.p, 0.1, 2.0);
      fit(obj.c, 0.5, 2.0);
      break;
    default:
      break;
  }
  return NestedInstance::make(sigma, a, b, c, d, std::move(obj));
}

const std::vector<ObjectiveKind> kFamilies = {
    ObjectiveKind::kLinear, ObjectiveKind::kQuadratic, ObjectiveKind::kF,
    ObjectiveKind::kCrash, ObjectiveKind::kFuel};

ObjectiveSpec proto_of(ObjectiveKind kind) {
  ObjectiveSpec obj;
  obj.kind = kind;
  return obj;
}

}  // namespace

TEST_CASE("adjust repairs ordering while conserving the sum") {
  SUBCASE("one unit pooled and replaced") {
    std::vector<long long> x{3, 1};
    adjust<long long>(x, {2, 3}, true);
    CHECK(x == std::vector<long long>{2, 2});
  }
  SUBCASE("already dominated input is untouched") {
    std::vector<long long> x{1, 2};
    adjust<long long>(x, {2, 3}, true);
    CHECK(x == std::vector<long long>{1, 2});
  }
  SUBCASE("pool spills across several variables") {
    std::vector<long long> x{5, 0, 0};
    adjust<long long>(x, {2, 2, 2}, true);
    CHECK(x == std::vector<long long>{2, 2, 1});
  }
}

TEST_CASE("integer solve matches hand examples") {
  SUBCASE("two-variable quadratic fixture") {
    const Allocation got = solve_integer(quad_fixture());
    CHECK(got.x == std::vector<double>{1, 3});
    CHECK(got.objective_value == doctest::Approx(10.0));
  }
  SUBCASE("single nested constraint reduces to a plain RAP") {
    const auto ins = NestedInstance::make(
        {2}, {4}, {4}, {0, 0}, {4, 4}, ObjectiveSpec::quadratic({1, 1}, {0, 0}));
    CHECK(solve_integer(ins).x == std::vector<double>{2, 2});
  }
  SUBCASE("linear with an inner prefix window") {
    const auto ins = NestedInstance::make(
        {2, 3}, {0, 6}, {3, 6}, {0, 0, 0}, {3, 3, 3},
        ObjectiveSpec::linear({3, 1, 2}));
    const Allocation got = solve_integer(ins);
    CHECK(got.x == std::vector<double>{0, 3, 3});
    CHECK(got.objective_value == doctest::Approx(9.0));
  }
  SUBCASE("fully pinned boxes force x = c") {
    const auto ins = NestedInstance::make(
        {1, 3}, {2, 6}, {2, 6}, {2, 3, 1}, {2, 3, 1},
        ObjectiveSpec::family_f({1, -1, 0}));
    CHECK(solve_integer(ins).x == std::vector<double>{2, 3, 1});
  }
  SUBCASE("infeasible instance throws") {
    const auto ins = NestedInstance::make({1}, {6}, {6}, {0}, {5},
                                          ObjectiveSpec::linear({1}));
    CHECK_THROWS_AS(solve_integer(ins), InfeasibleError);
  }
}

TEST_CASE("integer solve equals the DP oracle across families") {
  for (ObjectiveKind kind : kFamilies) {
    Rng rng(100 + (int)kind);
    for (int trial = 0; trial < 150; ++trial) {
      const auto ins = random_feasible_int(rng, proto_of(kind));
      const Allocation got = solve_integer(ins);
      const Allocation want = dp_solve(ins);
      CHECK(check_feasibility(ins, got.x).all_zero());
      if (kind == ObjectiveKind::kLinear) {
        CHECK(got.objective_value ==
              doctest::Approx(want.objective_value).epsilon(1e-12));
      } else {
        CHECK(got.objective_value ==
              doctest::Approx(want.objective_value).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("RAP-solve count stays within the recursion budget") {
  Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ins =
        random_feasible_int(rng, proto_of(ObjectiveKind::kQuadratic), 8);
    SolveStats stats;
    solve(ins, Mode::kInteger, {}, &stats);
    int ceil_log = 0;
    while ((1 << ceil_log) < ins.m) ++ceil_log;
    const long long cap = 4 * (2 * (1LL << ceil_log) - 1);
    CHECK(stats.rap_solves + stats.shortcut_hits <= cap);
  }
}

TEST_CASE("continuous solve scaling and special paths") {
  SUBCASE("epsilon controls the grid scale") {
    // n = 4, epsilon = 0.5 means the scaled instance lives on an s = 8 grid:
    // a crash optimum lands on multiples of 1/8.
    const auto ins = NestedInstance::make(
        {4}, {3}, {3}, {0.25, 0.25, 0.25, 0.25}, {2, 2, 2, 2},
        ObjectiveSpec::crash({0, 0, 0, 0}, {1, 2, 1, 2}));
    SolverConfig cfg;
    cfg.epsilon = 0.5;
    const Allocation got = solve_continuous(ins, cfg);
    for (double v : got.x) {
      CHECK(std::fabs(v * 8 - std::round(v * 8)) < 1e-6);
    }
  }
  SUBCASE("quadratic instances use the exact path") {
    const Allocation got = solve_continuous(quad_fixture());
    CHECK(got.x[0] == doctest::Approx(1.0));
    CHECK(got.x[1] == doctest::Approx(3.0));
  }
  SUBCASE("symmetric crash instance splits evenly at any epsilon") {
    const auto ins = NestedInstance::make({2}, {4}, {4}, {1, 1}, {3, 3},
                                          ObjectiveSpec::crash({0, 0}, {1, 1}));
    for (double eps : {1e-2, 1e-4, 1e-6}) {
      SolverConfig cfg;
      cfg.epsilon = eps;
      const Allocation got = solve_continuous(ins, cfg);
      CHECK(std::fabs(got.x[0] - 2.0) <= 1.1 * eps);
      CHECK(std::fabs(got.x[1] - 2.0) <= 1.1 * eps);
    }
  }
}

TEST_CASE("continuous outputs are feasible and near-stationary") {
  for (ObjectiveKind kind : kFamilies) {
    Rng rng(200 + (int)kind);
    for (int trial = 0; trial < 60; ++trial) {
      const auto ins = random_feasible_int(rng, proto_of(kind));
      const Allocation got = solve_continuous(ins);
      const auto rep = check_feasibility(ins, got.x);
      CHECK(rep.max_nested_violation <= 1e-9);
      CHECK(rep.max_box_violation <= 1e-9);
      CHECK(rep.sum_residual <= 1e-9);
    }
  }
}

TEST_CASE("verify_kkt certifies optima and flags perturbations") {
  SUBCASE("exact quadratic optimum passes") {
    const auto ins = quad_fixture();
    const Allocation got = solve_continuous(ins);
    const KktReport rep = verify_kkt(ins, got.x, Mode::kContinuous, 1e-7);
    CHECK(rep.ok);
  }
  SUBCASE("interior perturbation with unequal gradients fails") {
    // Instance with both coordinates interior at the optimum.
    const auto ins = NestedInstance::make(
        {2}, {2}, {2}, {0, 0}, {4, 4}, ObjectiveSpec::quadratic({1, 1}, {1, 1}));
    const KktReport ok = verify_kkt(ins, {1.0, 1.0}, Mode::kContinuous, 1e-9);
    CHECK(ok.ok);
    const KktReport bad =
        verify_kkt(ins, {1.1, 0.9}, Mode::kContinuous, 1e-9);
    CHECK_FALSE(bad.ok);
  }
  SUBCASE("fully pinned instance always certifies") {
    const auto ins = NestedInstance::make(
        {2}, {5}, {5}, {2, 3}, {2, 3}, ObjectiveSpec::fuel({1, 1}, {1, 2}));
    const KktReport rep = verify_kkt(ins, {2.0, 3.0}, Mode::kContinuous, 0.0);
    CHECK(rep.ok);
  }
}
