#pragma once

// Benchmark instance generator and timing harness. Instances follow the
// random-walk protocol: boxes c ~ U[0.1,0.5], d ~ U[0.5,0.9], two feasible
// prefix-sum trajectories v and w built from steps in [c_i, d_i], nested
// bounds a = min(v,w), b = max(v,w) sampled at the breakpoints. Every
// generated instance is feasible by construction (both trajectories satisfy
// all constraints) and is a deterministic function of (spec, seed).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rapnc/instance.hpp"
#include "rapnc/mda.hpp"

namespace rapnc {

struct GenSpec {
  int n = 0;
  int m = 0;  // m <= n; when m < n, breakpoints are randomly subsampled
  std::uint64_t seed = 0;
  ObjectiveKind family = ObjectiveKind::kLinear;
};

NestedInstance gen_instance(const GenSpec& spec);

struct BenchRecord {
  int n = 0;
  int m = 0;
  ObjectiveKind family = ObjectiveKind::kLinear;
  std::uint64_t seed = 0;
  Mode mode = Mode::kContinuous;
  double time_seconds = 0.0;
  double objective = 0.0;
  long long rap_solves = 0;
  long long shortcut_hits = 0;
};

struct BenchOptions {
  Mode mode = Mode::kContinuous;
  double epsilon = 1e-6;
  // Integer-mode runs scale the real-valued generated bounds by this factor
  // and round inward, mirroring the continuous recipe.
  double integer_scale = 1e6;
  int repeats = 3;  // timed solves per (size, family); 0 emits nothing
  std::uint64_t seed = 1;
};

// One record per timed solve. Generation and I/O are excluded from the
// timings. sizes are (n, m) pairs.
std::vector<BenchRecord> run_benchmark(
    const std::vector<std::pair<int, int>>& sizes,
    const std::vector<ObjectiveKind>& families, const BenchOptions& opt);

// CSV with header n,m,family,seed,mode,time_seconds,objective,rap_solves,
// shortcut_hits.
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& recs);

// Least-squares slope of log10(min time per n) against log10(n) for one
// family, ignoring n < 100 where constant overhead distorts the fit.
// Returns 0 when fewer than two usable sizes exist.
double loglog_slope(const std::vector<BenchRecord>& recs, ObjectiveKind family);

// (log10 n, log10 min-time) pairs per family, for plotting.
void write_loglog_points(std::ostream& out,
                         const std::vector<BenchRecord>& recs);

}  // namespace rapnc
