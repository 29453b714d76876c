#pragma once

// Support-vector ordinal regression trainer (explicit-constraint variant).
// The dual has one pair of variables per sample, box bounds [0, C], and a
// chain of prefix-sum constraints over class blocks — exactly a nested
// feasible region — so every working-set projection is a small quadratic
// instance solved exactly by the main solver.
//
// Variable embedding: blocks ordered (alpha class 1, -alpha* class 2,
// alpha class 2, -alpha* class 3, ..., alpha class r-1, -alpha* class r).
// With alpha* variables negated (box [-C, 0]), the threshold constraints
// become lower bounds on the embedding's prefix sums, with the final one an
// equality. alpha of class r and alpha* of class 1 do not exist (pinned 0).

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rapnc/errors.hpp"
#include "rapnc/instance.hpp"

namespace rapnc {

struct OrdinalDataset {
  int n = 0;    // samples
  int dim = 0;  // features per sample
  int r = 0;    // ordinal classes, labels in 1..r
  std::vector<std::vector<double>> x;  // n rows of dim features
  std::vector<int> label;              // size n

  void check() const;  // throws DomainError on malformed data
};

// Latent score w.x + noise, classes by equal-frequency binning, features
// normalized to zero mean and unit variance. Deterministic in the seed.
OrdinalDataset make_synthetic_ordinal(int n, int dim, int r, double noise,
                                      std::uint64_t seed);

// Gaussian kernel K(x, x') = exp(-width * |x - x'|^2); width = 0 gives the
// all-ones matrix.
std::vector<std::vector<double>> kernel_matrix(
    const std::vector<std::vector<double>>& x, double width);

struct SvorexConfig {
  double C = 10.0;
  double width = 1.0;
  double gamma = 0.2;   // projected-gradient step size
  int n_grad = 20;      // gradient steps per working-set round
  int n_ws = 6;         // working-set size (variables, selected in pairs)
  double kkt_tol = 1e-3;
  long long max_rounds = 1'000'000;  // working-set selection cap
};

struct SvorexModel {
  OrdinalDataset data;  // training data, needed by the kernel expansion
  double C = 10.0;
  double width = 1.0;
  std::vector<double> alpha;       // size n; 0 for class-r samples
  std::vector<double> alpha_star;  // size n; 0 for class-1 samples
  std::vector<double> thresholds;  // size r-1, nondecreasing
  long long ws_selections = 0;     // working-set rounds used
  bool converged = false;
};

// Dual state plus the incremental caches the trainer needs; also the unit
// under test for the gradient / selection / projection operations.
class SvorexProblem {
 public:
  SvorexProblem(const OrdinalDataset& data, const SvorexConfig& cfg);

  int num_vars() const { return static_cast<int>(vars_.size()); }
  int sample_of(int v) const { return vars_[v].sample; }
  bool is_star(int v) const { return vars_[v].star; }
  int threshold_of(int v) const { return vars_[v].threshold; }

  // Variable id for a sample's alpha (star=false) or alpha* (star=true);
  // -1 when that dual is pinned to zero.
  int var_index(int sample, bool star) const;

  double value(int v) const;  // current dual value in [0, C]
  // Partial of the dual objective (maximization form) w.r.t. this variable.
  double grad(int v) const;
  // The dual objective: sum(alpha + alpha*) - 1/2 beta' K beta.
  double objective() const;

  // Chain slacks P_j, j = 1..r-1; feasibility means all >= 0 and the last
  // one == 0 (within tol), plus the boxes.
  std::vector<double> prefix_slacks() const;
  bool feasible(double tol) const;

  // Most-violated pairs under the chain KKT conditions; empty means
  // converged at kkt_tol. Always an even count <= n_ws.
  std::vector<int> select_working_set(int n_ws) const;

  // Euclidean projection of per-variable targets (same order as ws) onto the
  // feasible set with all other variables frozen. Returns the projected
  // values; does not modify the state.
  std::vector<double> project_working_set(const std::vector<int>& ws,
                                          const std::vector<double>& target);

  // Installs new values for the ws variables and updates the kernel-gradient
  // cache incrementally.
  void set_values(const std::vector<int>& ws,
                  const std::vector<double>& vals);

  // Wholesale state replacement (tests, finite-difference checks). Values
  // need not be feasible; pinned entries must be zero.
  void set_state(const std::vector<double>& alpha,
                 const std::vector<double>& alpha_star);

  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<double>& alpha_star() const { return alpha_star_; }
  // Latent decision values on the training samples: (K beta)_i.
  const std::vector<double>& decision_values() const { return g_; }
  const SvorexConfig& config() const { return cfg_; }
  const OrdinalDataset& data() const { return data_; }

  // Hook receiving every projection subproblem: (instance, target, solution)
  // in embedded (sign-carrying) coordinates. Used by tests to cross-check
  // projections against the variational-inequality oracle.
  std::function<void(const NestedInstance&, const std::vector<double>&,
                     const std::vector<double>&)>
      projection_probe;

 private:
  struct Var {
    int sample;
    bool star;
    int threshold;  // chain index j in 1..r-1
  };

  double sign(int v) const { return vars_[v].star ? -1.0 : 1.0; }

  OrdinalDataset data_;  // owned copy so the problem never dangles
  SvorexConfig cfg_;
  std::vector<std::vector<double>> kernel_;
  std::vector<Var> vars_;  // in embedding order
  std::vector<int> alpha_var_, star_var_;  // sample -> variable id or -1
  std::vector<double> alpha_, alpha_star_;  // size n
  std::vector<double> g_;  // (K beta)_i, beta = alpha* - alpha
};

struct TrainHooks {
  // After every projected-gradient step (feasibility checks).
  std::function<void(const SvorexProblem&)> after_step;
  // After every accepted working-set round (objective monotonicity checks).
  std::function<void(const SvorexProblem&, double objective)> after_round;
  // Every projection subproblem, as in SvorexProblem::projection_probe.
  std::function<void(const NestedInstance&, const std::vector<double>&,
                     const std::vector<double>&)>
      on_projection;
};

// Thrown when max_rounds working-set selections did not reach kkt_tol.
struct IterationLimitExceeded : Error {
  IterationLimitExceeded(const std::string& msg, SvorexModel best)
      : Error(msg), best_model(std::move(best)) {}
  SvorexModel best_model;
};

SvorexModel train(const OrdinalDataset& data, const SvorexConfig& cfg = {},
                  const TrainHooks* hooks = nullptr);

// Latent score of a feature vector under the kernel expansion.
double decision_value(const SvorexModel& model, const std::vector<double>& x);

// Ordinal class in 1..r; ties at a threshold resolve to the lower class.
int predict(const SvorexModel& model, const std::vector<double>& x);

// Thresholds reconstructed from the active-constraint pattern of a state.
std::vector<double> recover_thresholds(const SvorexProblem& prob);

// Dataset file: whitespace-delimited, one sample per line, features then the
// integer label. Model dump: structured text with everything predict needs.
OrdinalDataset read_ordinal_dataset(std::istream& in);
OrdinalDataset read_ordinal_dataset_file(const std::string& path);
void write_ordinal_dataset(std::ostream& out, const OrdinalDataset& data);
void write_ordinal_dataset_file(const std::string& path,
                                const OrdinalDataset& data);
SvorexModel read_svorex_model(std::istream& in);
SvorexModel read_svorex_model_file(const std::string& path);
void write_svorex_model(std::ostream& out, const SvorexModel& model);
void write_svorex_model_file(const std::string& path,
                             const SvorexModel& model);

}  // namespace rapnc
