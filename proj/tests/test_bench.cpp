#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "rapnc/bench.hpp"
#include "rapnc/mda.hpp"

using namespace rapnc;

TEST_CASE("generation is deterministic in the spec and seed") {
  const GenSpec spec{200, 50, 99, ObjectiveKind::kCrash};
  const NestedInstance a = gen_instance(spec);
  const NestedInstance b = gen_instance(spec);
  CHECK(a.sigma == b.sigma);
  CHECK(a.a == b.a);
  CHECK(a.b == b.b);
  CHECK(a.c == b.c);
  CHECK(a.d == b.d);
  CHECK(a.objective.p == b.objective.p);
  CHECK(a.objective.k == b.objective.k);

  GenSpec other = spec;
  other.seed = 100;
  const NestedInstance c = gen_instance(other);
  CHECK(a.a != c.a);
}

TEST_CASE("generated boxes and bounds follow the protocol") {
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const NestedInstance ins =
        gen_instance({300, 120, seed, ObjectiveKind::kQuadratic});
    for (int i = 0; i < ins.n; ++i) {
      CHECK(ins.c[i] >= 0.1);
      CHECK(ins.c[i] <= 0.5);
      CHECK(ins.d[i] >= 0.5);
      CHECK(ins.d[i] <= 0.9);
    }
    // The bounds come from min/max of two feasible trajectories; they need
    // not be monotone, only ordered and jointly feasible.
    for (int k = 1; k <= ins.m; ++k) CHECK(ins.a[k] <= ins.b[k]);
    CHECK(ins.a[ins.m] == ins.b[ins.m]);
    CHECK(validate(ins, Mode::kContinuous).ok);
  }
}

TEST_CASE("subsampled breakpoints are strictly increasing and end at n") {
  const NestedInstance ins = gen_instance({100, 7, 11, ObjectiveKind::kLinear});
  CHECK(ins.m == 7);
  for (int k = 1; k <= ins.m; ++k) CHECK(ins.sigma[k] > ins.sigma[k - 1]);
  CHECK(ins.sigma[ins.m] == 100);
}

TEST_CASE("zero repeats produce an empty record stream") {
  BenchOptions opt;
  opt.repeats = 0;
  CHECK(run_benchmark({{100, 100}}, {ObjectiveKind::kLinear}, opt).empty());
}

TEST_CASE("benchmark records carry timings and a stable CSV layout") {
  BenchOptions opt;
  opt.repeats = 2;
  const auto recs = run_benchmark({{50, 50}, {100, 100}},
                                  {ObjectiveKind::kLinear}, opt);
  CHECK(recs.size() == 4);
  for (const auto& r : recs) {
    CHECK(r.time_seconds > 0);
    CHECK(r.rap_solves + r.shortcut_hits > 0);
  }
  std::ostringstream csv;
  write_bench_csv(csv, recs);
  const std::string text = csv.str();
  CHECK(text.substr(0, text.find('\n')) ==
        "n,m,family,seed,mode,time_seconds,objective,rap_solves,shortcut_hits");
  // One header plus one line per record.
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}

TEST_CASE("slope fit recovers a fabricated power law") {
  std::vector<BenchRecord> recs;
  for (int n : {100, 1000, 10000, 100000}) {
    BenchRecord r;
    r.n = r.m = n;
    r.family = ObjectiveKind::kLinear;
    r.time_seconds = 3.5 * std::pow((double)n, 1.2);
    recs.push_back(r);
    // A slower duplicate must not affect the min-time fit.
    r.time_seconds *= 2.0;
    recs.push_back(r);
  }
  CHECK(loglog_slope(recs, ObjectiveKind::kLinear) == doctest::Approx(1.2));
  CHECK(loglog_slope(recs, ObjectiveKind::kCrash) == doctest::Approx(0.0));
}

TEST_CASE("quartic family solves a thousand variables quickly") {
  const NestedInstance ins = gen_instance({1000, 1000, 5, ObjectiveKind::kF});
  const auto t0 = std::chrono::steady_clock::now();
  const Allocation got = solve_continuous(ins);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  CHECK(check_feasibility(ins, got.x).max_nested_violation <= 1e-9);
  CHECK(secs < 1.0);
}

TEST_CASE("integer benchmark mode solves the scaled instances") {
  BenchOptions opt;
  opt.mode = Mode::kInteger;
  opt.repeats = 1;
  const auto recs =
      run_benchmark({{200, 200}}, {ObjectiveKind::kQuadratic}, opt);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].mode == Mode::kInteger);
  CHECK(recs[0].time_seconds > 0);
}
