#include "rapnc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>

#include "rapnc/errors.hpp"
#include "rapnc/rng.hpp"

namespace rapnc {

NestedInstance gen_instance(const GenSpec& spec) {
  const int n = spec.n, m = spec.m;
  if (n < 1 || m < 1 || m > n) {
    throw DomainError("gen_instance: need 1 <= m <= n");
  }
  Rng rng(spec.seed, static_cast<std::uint64_t>(spec.family));

  // Breakpoints: sigma[m-1] = n always; the remaining m-1 are a random
  // subsample of 1..n-1 (all of them when m = n).
  std::vector<int> sigma;
  if (m == n) {
    for (int i = 1; i <= n; ++i) sigma.push_back(i);
  } else {
    std::vector<int> pool;
    pool.reserve(n - 1);
    for (int i = 1; i < n; ++i) pool.push_back(i);
    for (int k = 0; k < m - 1; ++k) {
      const int j =
          static_cast<int>(rng.uniform_int(0, (long long)pool.size() - 1));
      sigma.push_back(pool[j]);
      pool[j] = pool.back();
      pool.pop_back();
    }
    sigma.push_back(n);
    std::sort(sigma.begin(), sigma.end());
  }

  std::vector<double> c(n), d(n);
  for (int i = 0; i < n; ++i) {
    c[i] = rng.uniform(0.1, 0.5);
    d[i] = rng.uniform(0.5, 0.9);
  }

  // Two feasible prefix-sum trajectories; their pointwise min/max at the
  // breakpoints become the nested bounds, so feasibility is by construction.
  std::vector<double> v(n + 1, 0.0), w(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    v[i + 1] = v[i] + rng.uniform(c[i], d[i]);
    w[i + 1] = w[i] + rng.uniform(c[i], d[i]);
  }
  std::vector<double> a(m), b(m);
  for (int k = 0; k < m; ++k) {
    const double lo = std::min(v[sigma[k]], w[sigma[k]]);
    const double hi = std::max(v[sigma[k]], w[sigma[k]]);
    if (k == m - 1) {
      a[k] = b[k] = lo;  // total resource pinned to a feasible value
    } else {
      a[k] = lo;
      b[k] = hi;
    }
  }

  std::vector<double> p(n), wq(n), t(n), kk(n), cc(n);
  for (int i = 0; i < n; ++i) {
    p[i] = rng.uniform(0.0, 1.0) + 0.01;  // keep prices strictly positive
    wq[i] = rng.uniform(0.1, 2.0);
    t[i] = rng.uniform(0.0, 1.0);
    kk[i] = rng.uniform(0.0, 1.0);
    cc[i] = rng.uniform(0.5, 2.0);
  }
  ObjectiveSpec obj;
  switch (spec.family) {
    case ObjectiveKind::kLinear:
      obj = ObjectiveSpec::linear(std::move(p));
      break;
    case ObjectiveKind::kQuadratic:
      obj = ObjectiveSpec::quadratic(std::move(wq), std::move(t));
      break;
    case ObjectiveKind::kF:
      obj = ObjectiveSpec::family_f(std::move(p));
      break;
    case ObjectiveKind::kCrash:
      obj = ObjectiveSpec::crash(std::move(kk), std::move(p));
      break;
    case ObjectiveKind::kFuel:
      obj = ObjectiveSpec::fuel(std::move(p), std::move(cc));
      break;
    default:
      throw DomainError("gen_instance: unsupported objective family");
  }
  return NestedInstance::make(sigma, a, b, c, d, std::move(obj));
}

namespace {

// Inward-rounded integer grid copy for integer-mode benchmark runs.
NestedInstance scale_to_integer(const NestedInstance& ins, double s) {
  NestedInstance g = ins;
  for (int i = 1; i <= g.m; ++i) {
    if (ins.a[i] == ins.b[i]) {
      g.a[i] = g.b[i] = std::round(ins.a[i] * s);
    } else {
      g.a[i] = std::ceil(ins.a[i] * s);
      g.b[i] = std::floor(ins.b[i] * s);
    }
  }
  for (int i = 0; i < g.n; ++i) {
    g.c[i] = std::ceil(ins.c[i] * s);
    g.d[i] = std::floor(ins.d[i] * s);
  }
  return g;
}

}  // namespace

std::vector<BenchRecord> run_benchmark(
    const std::vector<std::pair<int, int>>& sizes,
    const std::vector<ObjectiveKind>& families, const BenchOptions& opt) {
  std::vector<BenchRecord> out;
  if (opt.repeats <= 0) return out;
  for (const auto& [n, m] : sizes) {
    for (ObjectiveKind family : families) {
      GenSpec gs{n, m, opt.seed, family};
      const NestedInstance ins = gen_instance(gs);
      const NestedInstance run_ins =
          opt.mode == Mode::kInteger ? scale_to_integer(ins, opt.integer_scale)
                                     : ins;
      SolverConfig cfg;
      cfg.epsilon = opt.epsilon;
      for (int r = 0; r < opt.repeats; ++r) {
        SolveStats stats;
        const auto t0 = std::chrono::steady_clock::now();
        const Allocation alloc = solve(run_ins, opt.mode, cfg, &stats);
        const auto t1 = std::chrono::steady_clock::now();
        BenchRecord rec;
        rec.n = n;
        rec.m = m;
        rec.family = family;
        rec.seed = opt.seed;
        rec.mode = opt.mode;
        rec.time_seconds =
            std::max(std::chrono::duration<double>(t1 - t0).count(), 1e-9);
        rec.objective = alloc.objective_value;
        rec.rap_solves = stats.rap_solves;
        rec.shortcut_hits = stats.shortcut_hits;
        out.push_back(rec);
      }
    }
  }
  return out;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& recs) {
  out << "n,m,family,seed,mode,time_seconds,objective,rap_solves,"
         "shortcut_hits\n";
  char buf[64];
  for (const BenchRecord& r : recs) {
    out << r.n << ',' << r.m << ',' << objective_kind_name(r.family) << ','
        << r.seed << ',' << mode_name(r.mode) << ',';
    std::snprintf(buf, sizeof buf, "%.12g", r.time_seconds);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.12g", r.objective);
    out << buf << ',' << r.rap_solves << ',' << r.shortcut_hits << '\n';
  }
}

namespace {

// Best (minimum) time per n for one family; minimum filters scheduler noise.
std::map<int, double> min_times(const std::vector<BenchRecord>& recs,
                                ObjectiveKind family) {
  std::map<int, double> best;
  for (const BenchRecord& r : recs) {
    if (r.family != family) continue;
    auto [it, inserted] = best.emplace(r.n, r.time_seconds);
    if (!inserted) it->second = std::min(it->second, r.time_seconds);
  }
  return best;
}

}  // namespace

double loglog_slope(const std::vector<BenchRecord>& recs,
                    ObjectiveKind family) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (const auto& [n, t] : min_times(recs, family)) {
    if (n < 100) continue;
    const double x = std::log10((double)n);
    const double y = std::log10(t);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  if (k < 2) return 0.0;
  const double denom = k * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (k * sxy - sx * sy) / denom;
}

void write_loglog_points(std::ostream& out,
                         const std::vector<BenchRecord>& recs) {
  out << "family,log10_n,log10_time\n";
  for (ObjectiveKind family :
       {ObjectiveKind::kLinear, ObjectiveKind::kQuadratic, ObjectiveKind::kF,
        ObjectiveKind::kCrash, ObjectiveKind::kFuel}) {
    for (const auto& [n, t] : min_times(recs, family)) {
      out << objective_kind_name(family) << ',' << std::log10((double)n) << ','
          << std::log10(t) << '\n';
    }
  }
}

}  // namespace rapnc
