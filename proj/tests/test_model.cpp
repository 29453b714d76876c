#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "rapnc/instance.hpp"
#include "rapnc/oracle.hpp"
#include "rapnc/rng.hpp"

using namespace rapnc;

namespace {

NestedInstance two_var_fixture() {
  // n = 2, prefix of x1 in [0, 1], total pinned to 4, boxes [0, 4]^2.
  return NestedInstance::make({1, 2}, {0, 4}, {1, 4}, {0, 0}, {4, 4},
                              ObjectiveSpec::linear({0.0, 0.0}));
}

// Small random integral instance for the validate-vs-oracle property.
NestedInstance random_small(Rng& rng, bool force_feasible) {
  const int n = 1 + (int)rng.uniform_int(0, 5);
  std::vector<int> sigma;
  for (int i = 1; i < n; ++i) {
    if (rng.next_double() < 0.5) sigma.push_back(i);
  }
  sigma.push_back(n);
  const int m = (int)sigma.size();
  std::vector<double> c(n), d(n);
  for (int i = 0; i < n; ++i) {
    c[i] = (double)rng.uniform_int(0, 3);
    d[i] = c[i] + (double)rng.uniform_int(0, 3);
  }
  std::vector<double> a(m), b(m);
  for (int k = 0; k < m; ++k) {
    // Tight windows when not forcing feasibility, so infeasible combinations
    // of nested bounds and boxes show up often.
    a[k] = (double)rng.uniform_int(0, force_feasible ? 4 : 10);
    b[k] = a[k] + (double)rng.uniform_int(0, force_feasible ? 6 : 2);
  }
  b[m - 1] = a[m - 1];
  return NestedInstance::make(sigma, a, b, c, d,
                              ObjectiveSpec::linear(std::vector<double>(n, 1)));
}

bool oracle_feasible(const NestedInstance& ins) {
  try {
    dp_solve(ins);
    return true;
  } catch (const InfeasibleError&) {
    return false;
  }
}

}  // namespace

TEST_CASE("validate accepts a single box containing the total") {
  const auto ins = NestedInstance::make({1}, {3}, {3}, {0}, {5},
                                        ObjectiveSpec::linear({1.0}));
  CHECK(validate(ins, Mode::kInteger).ok);
  CHECK(validate(ins, Mode::kContinuous).ok);
}

TEST_CASE("validate rejects a total above the box") {
  const auto ins = NestedInstance::make({1}, {6}, {6}, {0}, {5},
                                        ObjectiveSpec::linear({1.0}));
  const auto res = validate(ins, Mode::kInteger);
  CHECK_FALSE(res.ok);
  CHECK(res.error == ValidationError::kInfeasible);
  CHECK(res.witness_i >= 0);
}

TEST_CASE("validate accepts the two-variable fixture") {
  CHECK(validate(two_var_fixture(), Mode::kInteger).ok);
}

TEST_CASE("validate flags malformed shapes and orderings") {
  auto ins = two_var_fixture();
  ins.sigma[1] = 2;
  ins.sigma[2] = 1;
  CHECK(validate(ins, Mode::kInteger).error ==
        ValidationError::kNonMonotoneSigma);

  ins = two_var_fixture();
  ins.a[1] = 2.0;  // above b[1] = 1
  CHECK(validate(ins, Mode::kInteger).error ==
        ValidationError::kBoundOrderViolation);

  ins = two_var_fixture();
  ins.c[0] = 0.5;
  CHECK(validate(ins, Mode::kInteger).error == ValidationError::kNonIntegral);
  CHECK(validate(ins, Mode::kContinuous).ok);
}

TEST_CASE("evaluate matches hand values per family") {
  CHECK(evaluate(ObjectiveSpec::crash({0.0}, {1.0}), {2.0}) ==
        doctest::Approx(0.5));
  CHECK(evaluate(ObjectiveSpec::fuel({1.0}, {2.0}), {2.0}) ==
        doctest::Approx(2.0));
  CHECK(evaluate(ObjectiveSpec::family_f({1.0}), {1.0}) ==
        doctest::Approx(1.25));
  CHECK(evaluate(ObjectiveSpec::linear({3.0, 1.0}), {1.0, 2.0}) ==
        doctest::Approx(5.0));
  CHECK(evaluate(ObjectiveSpec::quadratic({2.0}, {1.0}), {3.0}) ==
        doctest::Approx(8.0));
}

TEST_CASE("positive-domain families reject non-positive arguments") {
  CHECK_THROWS_AS(evaluate(ObjectiveSpec::crash({0.0}, {1.0}), {0.0}),
                  DomainError);
  CHECK_THROWS_AS(evaluate(ObjectiveSpec::fuel({1.0}, {1.0}), {-1.0}),
                  DomainError);
}

TEST_CASE("check_feasibility reports exact residuals") {
  const auto ins = two_var_fixture();
  SUBCASE("feasible point gives the all-zero report") {
    const auto rep = check_feasibility(ins, {1.0, 3.0});
    CHECK(rep.all_zero());
  }
  SUBCASE("prefix violation is measured exactly") {
    const auto rep = check_feasibility(ins, {2.0, 2.0});
    CHECK(rep.max_nested_violation == doctest::Approx(1.0));
  }
  SUBCASE("box violation is measured exactly") {
    const auto rep = check_feasibility(ins, {-1.0, 5.0});
    CHECK(rep.max_box_violation == doctest::Approx(1.0));
  }
}

TEST_CASE("each family is midpoint convex on random points") {
  Rng rng(7);
  const std::vector<ObjectiveSpec> specs = {
      ObjectiveSpec::linear({1.5}), ObjectiveSpec::quadratic({2.0}, {0.3}),
      ObjectiveSpec::family_f({-0.7}), ObjectiveSpec::crash({1.0}, {2.0}),
      ObjectiveSpec::fuel({0.5}, {1.5})};
  for (const auto& spec : specs) {
    for (int trial = 0; trial < 200; ++trial) {
      const double lo = spec.positive_domain() ? 0.05 : -5.0;
      double x = rng.uniform(lo, 5.0), y = rng.uniform(lo, 5.0);
      if (x > y) std::swap(x, y);
      const double mid = spec.value(0, 0.5 * (x + y));
      const double avg = 0.5 * (spec.value(0, x) + spec.value(0, y));
      CHECK(mid <= avg + 1e-12 * std::max(1.0, std::fabs(avg)));
    }
  }
}

TEST_CASE("diff and deriv are consistent with value") {
  Rng rng(11);
  const std::vector<ObjectiveSpec> specs = {
      ObjectiveSpec::linear({1.5}), ObjectiveSpec::quadratic({2.0}, {0.3}),
      ObjectiveSpec::family_f({-0.7}), ObjectiveSpec::crash({1.0}, {2.0}),
      ObjectiveSpec::fuel({0.5}, {1.5})};
  for (const auto& spec : specs) {
    for (int trial = 0; trial < 100; ++trial) {
      const double lo = spec.positive_domain() ? 0.1 : -4.0;
      const double x0 = rng.uniform(lo, 4.0);
      const double x1 = rng.uniform(lo, 4.0);
      const double direct = spec.value(0, x1) - spec.value(0, x0);
      CHECK(spec.diff(0, x0, x1) ==
            doctest::Approx(direct).epsilon(1e-9));
      const double h = 1e-6;
      const double fd = (spec.value(0, x0 + h) - spec.value(0, x0 - h)) / (2 * h);
      CHECK(spec.deriv(0, x0) == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("validate agrees with the DP oracle on random integral instances") {
  Rng rng(3);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto ins = random_small(rng, trial % 2 == 0);
    const bool valid = validate(ins, Mode::kInteger).ok;
    // random_small always produces well-shaped instances, so validity must
    // equal oracle feasibility.
    CHECK(valid == oracle_feasible(ins));
    (valid ? feasible_seen : infeasible_seen)++;
  }
  CHECK(feasible_seen > 50);
  CHECK(infeasible_seen > 50);
}
