// Command-line front end: solve, oracle, gen, bench, reduce, svorex-train,
// svorex-predict. Exit codes: 0 success, 1 infeasible, 2 usage error,
// 3 internal invariant failure. All diagnostics go to stderr; results go to
// stdout or the file named by --out.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rapnc/bench.hpp"
#include "rapnc/io.hpp"
#include "rapnc/mda.hpp"
#include "rapnc/oracle.hpp"
#include "rapnc/reductions.hpp"
#include "rapnc/svorex.hpp"

namespace {

using namespace rapnc;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void print_vector(std::ostream& out, const char* name,
                  const std::vector<double>& x) {
  out << name << " = [";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out << ", ";
    out << fmt(x[i]);
  }
  out << "]\n";
}

void print_solution(std::ostream& out, const NestedInstance& ins,
                    const Allocation& alloc, const SolveStats* stats) {
  print_vector(out, "x", alloc.x);
  out << "objective = " << fmt(alloc.objective_value) << "\n";
  const FeasibilityReport rep = check_feasibility(ins, alloc.x);
  out << "feasibility: nested_violation = " << fmt(rep.max_nested_violation)
      << ", box_violation = " << fmt(rep.max_box_violation)
      << ", sum_residual = " << fmt(rep.sum_residual) << "\n";
  if (stats) {
    out << "rap_solves = " << stats->rap_solves
        << ", shortcut_hits = " << stats->shortcut_hits << "\n";
  }
}

// Validates up front so infeasible instances exit 1 with a witness while
// malformed ones exit 2.
void require_valid(const NestedInstance& ins, Mode mode) {
  const ValidationResult res = validate(ins, mode);
  if (res.ok) return;
  if (res.error == ValidationError::kInfeasible) {
    std::ostringstream msg;
    msg << res.message;
    if (res.witness_i >= 0) {
      msg << " (witness: constraints " << res.witness_i << " and "
          << res.witness_j << ")";
    }
    throw InfeasibleError(msg.str());
  }
  throw DomainError(res.message);
}

// Output sink: --out writes to a file, otherwise stdout.
struct Sink {
  std::ofstream file;
  std::ostream& open(const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw DomainError("cannot write file: " + path);
    return file;
  }
};

ObjectiveKind parse_family(const std::string& name) {
  const auto kind = objective_kind_from_name(name);
  if (!kind || *kind == ObjectiveKind::kCustom) {
    throw DomainError("unknown objective family: " + name);
  }
  return *kind;
}

Mode parse_mode(const std::string& name) {
  const auto mode = mode_from_name(name);
  if (!mode) throw DomainError("unknown mode: " + name);
  return *mode;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Nested resource allocation solver"};
  app.require_subcommand(1);

  // --- solve ---------------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  std::string solve_in, solve_mode, solve_out;
  double solve_eps = 1e-6;
  solve_cmd->add_option("instance", solve_in, "Instance JSON file")
      ->required();
  solve_cmd->add_option("--mode", solve_mode,
                        "integer or continuous (default: file's mode)");
  solve_cmd->add_option("--eps", solve_eps, "Continuous-mode accuracy");
  solve_cmd->add_option("--out", solve_out, "Write the allocation here");

  // --- oracle ----------------------------------------------------------------
  auto* oracle_cmd =
      app.add_subcommand("oracle", "Exact DP solve of a small integer instance");
  std::string oracle_in, oracle_out;
  long long oracle_states = 50'000'000;
  oracle_cmd->add_option("instance", oracle_in, "Instance JSON file")
      ->required();
  oracle_cmd->add_option("--max-states", oracle_states, "DP state budget");
  oracle_cmd->add_option("--out", oracle_out, "Write the allocation here");

  // --- gen -------------------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  int gen_n = 0, gen_m = -1;
  std::uint64_t gen_seed = 1;
  std::string gen_family = "linear", gen_mode = "continuous", gen_out;
  gen_cmd->add_option("--n", gen_n, "Number of variables")->required();
  gen_cmd->add_option("--m", gen_m, "Number of nested constraints (default n)");
  gen_cmd->add_option("--family", gen_family,
                      "linear|quadratic|f|crash|fuel");
  gen_cmd->add_option("--seed", gen_seed, "Random seed");
  gen_cmd->add_option("--mode", gen_mode, "Mode stored in the document");
  gen_cmd->add_option("--out", gen_out, "Write the instance here");

  // --- bench -------------------------------------------------------------------
  auto* bench_cmd = app.add_subcommand("bench", "Timing sweep over sizes");
  std::string bench_sizes = "1000", bench_families = "linear";
  std::string bench_csv, bench_mode = "continuous", bench_points;
  int bench_m = -1, bench_repeats = 3;
  double bench_eps = 1e-6;
  std::uint64_t bench_seed = 1;
  bench_cmd->add_option("--sizes", bench_sizes, "Comma-separated n values");
  bench_cmd->add_option("--m", bench_m, "Constraint count (default m = n)");
  bench_cmd->add_option("--families", bench_families,
                        "Comma-separated objective families");
  bench_cmd->add_option("--repeats", bench_repeats, "Timed solves per cell");
  bench_cmd->add_option("--csv", bench_csv, "Write records here (CSV)");
  bench_cmd->add_option("--points", bench_points,
                        "Write log-log points here (CSV)");
  bench_cmd->add_option("--mode", bench_mode, "integer or continuous");
  bench_cmd->add_option("--eps", bench_eps, "Continuous-mode accuracy");
  bench_cmd->add_option("--seed", bench_seed, "Generator seed");

  // --- reduce --------------------------------------------------------------------
  auto* reduce_cmd =
      app.add_subcommand("reduce", "Convert an application model to an instance");
  std::string reduce_kind, reduce_in, reduce_out;
  reduce_cmd->add_option("--kind", reduce_kind, "lotsizing or speed")
      ->required();
  reduce_cmd->add_option("--in", reduce_in, "Application model JSON file")
      ->required();
  reduce_cmd->add_option("--out", reduce_out, "Write the instance here");

  // --- svorex-train -----------------------------------------------------------------
  auto* train_cmd =
      app.add_subcommand("svorex-train", "Train an ordinal regression model");
  std::string train_data, train_out;
  bool train_synth = false;
  int synth_n = 200, synth_dim = 4, synth_r = 5;
  double synth_noise = 0.25;
  std::uint64_t train_seed = 1;
  SvorexConfig svx;
  train_cmd->add_option("--data", train_data, "Training dataset file");
  train_cmd->add_flag("--synthetic", train_synth,
                      "Generate a synthetic dataset instead of reading one");
  train_cmd->add_option("--n", synth_n, "Synthetic sample count");
  train_cmd->add_option("--dim", synth_dim, "Synthetic feature count");
  train_cmd->add_option("--r", synth_r, "Synthetic class count");
  train_cmd->add_option("--noise", synth_noise, "Synthetic label noise");
  train_cmd->add_option("--seed", train_seed, "Synthetic generator seed");
  train_cmd->add_option("--C", svx.C, "Box bound on the dual variables");
  train_cmd->add_option("--width", svx.width, "Gaussian kernel width");
  train_cmd->add_option("--gamma", svx.gamma, "Gradient step size");
  train_cmd->add_option("--n-grad", svx.n_grad, "Gradient steps per round");
  train_cmd->add_option("--n-ws", svx.n_ws, "Working-set size");
  train_cmd->add_option("--kkt-tol", svx.kkt_tol, "Convergence tolerance");
  train_cmd->add_option("--max-rounds", svx.max_rounds,
                        "Working-set round cap");
  train_cmd->add_option("--out", train_out, "Write the model here");

  // --- svorex-predict ------------------------------------------------------------------
  auto* pred_cmd =
      app.add_subcommand("svorex-predict", "Predict classes with a model");
  std::string pred_model, pred_data, pred_out;
  pred_cmd->add_option("--model", pred_model, "Model file")->required();
  pred_cmd->add_option("--data", pred_data, "Dataset file")->required();
  pred_cmd->add_option("--out", pred_out, "Write predictions here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Sink sink;

  if (*solve_cmd) {
    const InstanceDoc doc = read_instance_file(solve_in);
    const Mode mode =
        solve_mode.empty() ? doc.mode : parse_mode(solve_mode);
    require_valid(doc.instance, mode);
    SolverConfig cfg;
    cfg.epsilon = solve_eps;
    SolveStats stats;
    const Allocation alloc = solve(doc.instance, mode, cfg, &stats);
    print_solution(std::cout, doc.instance, alloc, &stats);
    if (!solve_out.empty()) write_allocation_file(solve_out, alloc);
    return 0;
  }

  if (*oracle_cmd) {
    const InstanceDoc doc = read_instance_file(oracle_in);
    require_valid(doc.instance, Mode::kInteger);
    const Allocation alloc = dp_solve(doc.instance, oracle_states);
    print_solution(std::cout, doc.instance, alloc, nullptr);
    if (!oracle_out.empty()) write_allocation_file(oracle_out, alloc);
    return 0;
  }

  if (*gen_cmd) {
    GenSpec spec;
    spec.n = gen_n;
    spec.m = gen_m < 0 ? gen_n : gen_m;
    spec.seed = gen_seed;
    spec.family = parse_family(gen_family);
    InstanceDoc doc;
    doc.instance = gen_instance(spec);
    doc.mode = parse_mode(gen_mode);
    write_instance(sink.open(gen_out), doc);
    return 0;
  }

  if (*bench_cmd) {
    std::vector<std::pair<int, int>> sizes;
    for (const std::string& s : split_list(bench_sizes)) {
      const int n = std::stoi(s);
      sizes.emplace_back(n, bench_m < 0 ? n : bench_m);
    }
    std::vector<ObjectiveKind> families;
    for (const std::string& f : split_list(bench_families)) {
      families.push_back(parse_family(f));
    }
    if (sizes.empty() || families.empty()) {
      throw DomainError("bench: need at least one size and one family");
    }
    BenchOptions opt;
    opt.mode = parse_mode(bench_mode);
    opt.epsilon = bench_eps;
    opt.repeats = bench_repeats;
    opt.seed = bench_seed;
    const std::vector<BenchRecord> recs = run_benchmark(sizes, families, opt);
    write_bench_csv(sink.open(bench_csv), recs);
    if (!bench_points.empty()) {
      std::ofstream pts(bench_points);
      if (!pts) throw DomainError("cannot write file: " + bench_points);
      write_loglog_points(pts, recs);
    }
    for (ObjectiveKind family : families) {
      std::cerr << "slope(" << objective_kind_name(family)
                << ") = " << fmt(loglog_slope(recs, family)) << "\n";
    }
    return 0;
  }

  if (*reduce_cmd) {
    InstanceDoc doc;
    if (reduce_kind == "lotsizing") {
      const LotSizingReduction red =
          lot_sizing_to_rapnc(read_lot_sizing_file(reduce_in));
      doc.instance = red.instance;
      doc.mode = Mode::kContinuous;
      std::cerr << "value_offset = " << fmt(red.value_offset) << "\n";
    } else if (reduce_kind == "speed") {
      doc.instance = speed_opt_to_rapnc(read_speed_opt_file(reduce_in));
      doc.mode = Mode::kContinuous;
    } else {
      throw DomainError("reduce: --kind must be lotsizing or speed");
    }
    write_instance(sink.open(reduce_out), doc);
    return 0;
  }

  if (*train_cmd) {
    if (train_synth == !train_data.empty()) {
      throw DomainError("svorex-train: need exactly one of --data, --synthetic");
    }
    const OrdinalDataset data =
        train_synth
            ? make_synthetic_ordinal(synth_n, synth_dim, synth_r, synth_noise,
                                     train_seed)
            : read_ordinal_dataset_file(train_data);
    const SvorexModel model = train(data, svx);
    std::cerr << "converged after " << model.ws_selections
              << " working-set rounds\n";
    write_svorex_model(sink.open(train_out), model);
    return 0;
  }

  if (*pred_cmd) {
    const SvorexModel model = read_svorex_model_file(pred_model);
    const OrdinalDataset data = read_ordinal_dataset_file(pred_data);
    if (data.dim != model.data.dim) {
      throw DomainError("svorex-predict: feature width mismatch");
    }
    std::ostream& out = sink.open(pred_out);
    int correct = 0;
    for (int i = 0; i < data.n; ++i) {
      const int cls = predict(model, data.x[i]);
      out << cls << "\n";
      if (cls == data.label[i]) ++correct;
    }
    std::cerr << "accuracy = " << fmt(double(correct) / data.n) << " (" << correct
              << "/" << data.n << ")\n";
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const rapnc::InternalInvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const rapnc::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 1;
  } catch (const rapnc::IterationLimitExceeded& e) {
    std::cerr << "did not converge: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
