#include "rapnc/svorex.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "rapnc/mda.hpp"
#include "rapnc/rng.hpp"

namespace rapnc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double standard_normal(Rng& rng) {
  const double u1 = 1.0 - rng.next_double();  // (0, 1]
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

void OrdinalDataset::check() const {
  if (n < 1 || dim < 1 || r < 1) {
    throw DomainError("dataset: need n, dim, r >= 1");
  }
  if (x.size() != static_cast<std::size_t>(n) ||
      label.size() != static_cast<std::size_t>(n)) {
    throw DomainError("dataset: sample/label counts disagree with n");
  }
  std::vector<int> count(r + 1, 0);
  for (int i = 0; i < n; ++i) {
    if (x[i].size() != static_cast<std::size_t>(dim)) {
      throw DomainError("dataset: inconsistent feature width");
    }
    for (double v : x[i]) {
      if (!std::isfinite(v)) throw DomainError("dataset: non-finite feature");
    }
    if (label[i] < 1 || label[i] > r) {
      throw DomainError("dataset: label outside 1..r");
    }
    ++count[label[i]];
  }
  for (int j = 1; j <= r; ++j) {
    if (count[j] == 0) {
      throw DomainError("dataset: class " + std::to_string(j) + " is empty");
    }
  }
}

OrdinalDataset make_synthetic_ordinal(int n, int dim, int r, double noise,
                                      std::uint64_t seed) {
  if (n < r || dim < 1 || r < 1) {
    throw DomainError("synthetic dataset: need n >= r >= 1 and dim >= 1");
  }
  Rng rng(seed, 0x53564f52ULL);  // stream id for the synthetic generator
  OrdinalDataset data;
  data.n = n;
  data.dim = dim;
  data.r = r;
  data.x.assign(n, std::vector<double>(dim));
  data.label.assign(n, 1);

  std::vector<double> w(dim);
  double wn = 0.0;
  for (int k = 0; k < dim; ++k) {
    w[k] = standard_normal(rng);
    wn += w[k] * w[k];
  }
  wn = std::sqrt(std::max(wn, 1e-12));
  for (double& v : w) v /= wn;

  std::vector<double> latent(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) {
      data.x[i][k] = standard_normal(rng);
      s += w[k] * data.x[i][k];
    }
    latent[i] = s + noise * standard_normal(rng);
  }

  // Normalize features to zero mean, unit variance.
  for (int k = 0; k < dim; ++k) {
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += data.x[i][k];
    mean /= n;
    double var = 0.0;
    for (int i = 0; i < n; ++i) {
      data.x[i][k] -= mean;
      var += data.x[i][k] * data.x[i][k];
    }
    const double sd = std::sqrt(std::max(var / n, 1e-12));
    for (int i = 0; i < n; ++i) data.x[i][k] /= sd;
  }

  // Equal-frequency binning of the latent scores.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return latent[i] < latent[j]; });
  for (int q = 0; q < n; ++q) {
    data.label[order[q]] =
        std::min(r, 1 + static_cast<int>((static_cast<long long>(q) * r) / n));
  }
  data.check();
  return data;
}

std::vector<std::vector<double>> kernel_matrix(
    const std::vector<std::vector<double>>& x, double width) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> k(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    k[i][i] = 1.0;
    for (int j = i + 1; j < n; ++j) {
      double d2 = 0.0;
      for (std::size_t q = 0; q < x[i].size(); ++q) {
        const double e = x[i][q] - x[j][q];
        d2 += e * e;
      }
      k[i][j] = k[j][i] = std::exp(-width * d2);
    }
  }
  return k;
}

// --- SvorexProblem -------------------------------------------------------------

SvorexProblem::SvorexProblem(const OrdinalDataset& data,
                             const SvorexConfig& cfg)
    : data_(data), cfg_(cfg) {
  data.check();
  if (!(cfg.C > 0.0)) throw DomainError("svorex: C must be positive");
  if (cfg.width < 0.0) throw DomainError("svorex: width must be >= 0");
  kernel_ = kernel_matrix(data.x, cfg.width);
  alpha_.assign(data.n, 0.0);
  alpha_star_.assign(data.n, 0.0);
  g_.assign(data.n, 0.0);
  alpha_var_.assign(data.n, -1);
  star_var_.assign(data.n, -1);

  // Embedding order: for each chain index j, the alpha block of class j then
  // the (negated) alpha* block of class j+1. Both blocks carry threshold j.
  for (int j = 1; j <= data.r - 1; ++j) {
    for (int i = 0; i < data.n; ++i) {
      if (data.label[i] == j) {
        alpha_var_[i] = static_cast<int>(vars_.size());
        vars_.push_back({i, false, j});
      }
    }
    for (int i = 0; i < data.n; ++i) {
      if (data.label[i] == j + 1) {
        star_var_[i] = static_cast<int>(vars_.size());
        vars_.push_back({i, true, j});
      }
    }
  }
}

int SvorexProblem::var_index(int sample, bool star) const {
  return star ? star_var_[sample] : alpha_var_[sample];
}

double SvorexProblem::value(int v) const {
  const Var& var = vars_[v];
  return var.star ? alpha_star_[var.sample] : alpha_[var.sample];
}

double SvorexProblem::grad(int v) const {
  const Var& var = vars_[v];
  return var.star ? 1.0 - g_[var.sample] : 1.0 + g_[var.sample];
}

double SvorexProblem::objective() const {
  double z = 0.0;
  for (int i = 0; i < data_.n; ++i) {
    z += alpha_[i] + alpha_star_[i];
    z -= 0.5 * (alpha_star_[i] - alpha_[i]) * g_[i];
  }
  return z;
}

std::vector<double> SvorexProblem::prefix_slacks() const {
  std::vector<double> p(std::max(data_.r - 1, 0), 0.0);
  double run = 0.0;
  for (const Var& var : vars_) {
    run += var.star ? -alpha_star_[var.sample] : alpha_[var.sample];
    p[var.threshold - 1] = run;
  }
  // Thresholds with no variables inherit the running sum from the left.
  double prev = 0.0;
  std::size_t vi = 0;
  for (int j = 1; j <= data_.r - 1; ++j) {
    bool seen = false;
    while (vi < vars_.size() && vars_[vi].threshold == j) {
      seen = true;
      ++vi;
    }
    if (!seen) p[j - 1] = prev;
    prev = p[j - 1];
  }
  return p;
}

bool SvorexProblem::feasible(double tol) const {
  for (int i = 0; i < data_.n; ++i) {
    if (alpha_[i] < -tol || alpha_[i] > cfg_.C + tol) return false;
    if (alpha_star_[i] < -tol || alpha_star_[i] > cfg_.C + tol) return false;
    if (alpha_var_[i] < 0 && alpha_[i] != 0.0) return false;
    if (star_var_[i] < 0 && alpha_star_[i] != 0.0) return false;
  }
  const std::vector<double> p = prefix_slacks();
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    if (p[j] < -tol) return false;
  }
  if (!p.empty() && std::fabs(p.back()) > tol) return false;
  return true;
}

std::vector<int> SvorexProblem::select_working_set(int n_ws) const {
  std::vector<int> out;
  const int chain = data_.r - 1;
  if (chain < 1 || vars_.empty()) return out;

  // Group consecutive chain indices whose multiplier must be shared: a slack
  // constraint (P_j > 0) forces equal dual values across the boundary.
  const std::vector<double> p = prefix_slacks();
  const double slack_tol = 1e-10 * std::max(1.0, cfg_.C);
  std::vector<int> group(chain + 1, 0);
  for (int j = 2; j <= chain; ++j) {
    group[j] = group[j - 1] + (p[j - 2] <= slack_tol ? 1 : 0);
  }

  const double eps_box = 1e-12 * std::max(1.0, cfg_.C);
  std::vector<char> used(vars_.size(), 0);

  while (static_cast<int>(out.size()) + 2 <= n_ws) {
    // For each group: extremal gradient among variables that can move up /
    // down in the embedded coordinate.
    const int ngroups = group[chain] + 1;
    std::vector<double> up_best(ngroups, -kInf), down_best(ngroups, kInf);
    std::vector<int> up_arg(ngroups, -1), down_arg(ngroups, -1);
    for (int v = 0; v < static_cast<int>(vars_.size()); ++v) {
      if (used[v]) continue;
      const Var& var = vars_[v];
      const double y = sign(v) * value(v);
      const double ylo = var.star ? -cfg_.C : 0.0;
      const double yhi = var.star ? 0.0 : cfg_.C;
      const double gy = sign(v) * grad(v);
      const int g = group[var.threshold];
      if (y < yhi - eps_box && gy > up_best[g]) {
        up_best[g] = gy;
        up_arg[g] = v;
      }
      if (y > ylo + eps_box && gy < down_best[g]) {
        down_best[g] = gy;
        down_arg[g] = v;
      }
    }
    double best = cfg_.kkt_tol;
    int bu = -1, bd = -1;
    double run_up = -kInf;
    int run_arg = -1;
    for (int g = 0; g < ngroups; ++g) {
      if (up_best[g] > run_up) {
        run_up = up_best[g];
        run_arg = up_arg[g];
      }
      if (run_arg >= 0 && down_arg[g] >= 0 && run_arg != down_arg[g] &&
          run_up - down_best[g] > best) {
        best = run_up - down_best[g];
        bu = run_arg;
        bd = down_arg[g];
      }
    }
    if (bu < 0) break;
    out.push_back(bu);
    out.push_back(bd);
    used[bu] = used[bd] = 1;
  }
  return out;
}

std::vector<double> SvorexProblem::project_working_set(
    const std::vector<int>& ws, const std::vector<double>& target) {
  const int k = static_cast<int>(ws.size());
  if (k == 0) throw DomainError("svorex projection: empty working set");
  if (target.size() != ws.size()) {
    throw DomainError("svorex projection: target size mismatch");
  }
  const int chain = data_.r - 1;

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ws[a] < ws[b]; });

  std::vector<char> in_ws(vars_.size(), 0);
  for (int v : ws) {
    if (in_ws[v]) throw DomainError("svorex projection: duplicate variable");
    in_ws[v] = 1;
  }

  // Frozen contribution to each chain prefix, and the position of each chain
  // checkpoint inside the working-set ordering.
  std::vector<double> frozen(chain + 1, 0.0);
  std::vector<int> checkpoint(chain + 1, 0);
  {
    double run = 0.0;
    int placed = 0;
    std::size_t vi = 0;
    for (int j = 1; j <= chain; ++j) {
      while (vi < vars_.size() && vars_[vi].threshold == j) {
        const int v = static_cast<int>(vi);
        if (in_ws[v]) {
          ++placed;
        } else {
          run += sign(v) * value(v);
        }
        ++vi;
      }
      frozen[j] = run;
      checkpoint[j] = placed;
    }
  }
  const double total = -frozen[chain];  // working-set mass is conserved

  std::vector<double> lo(k), hi(k), yt(k), w(k, 1.0);
  for (int p = 0; p < k; ++p) {
    const int v = ws[order[p]];
    lo[p] = vars_[v].star ? -cfg_.C : 0.0;
    hi[p] = vars_[v].star ? 0.0 : cfg_.C;
    yt[p] = sign(v) * target[order[p]];
  }

  // Chain constraints become nested prefix bounds; checkpoints that trap no
  // working-set variables are implied by feasibility of the frozen part and
  // are dropped. The final checkpoint is the total-mass equality.
  std::map<int, double> lower_at;
  const double relax = 1e-12 * std::max(1.0, cfg_.C);
  for (int j = 1; j < chain; ++j) {
    const int s = checkpoint[j];
    if (s == 0 || s == k) continue;
    const double bound = -frozen[j] - relax;
    auto [it, inserted] = lower_at.emplace(s, bound);
    if (!inserted) it->second = std::max(it->second, bound);
  }

  std::vector<int> sigma;
  std::vector<double> na, nb;
  std::vector<double> hi_prefix(k + 1, 0.0);
  for (int p = 0; p < k; ++p) hi_prefix[p + 1] = hi_prefix[p] + hi[p];
  for (const auto& [s, bound] : lower_at) {
    sigma.push_back(s);
    na.push_back(bound);
    nb.push_back(hi_prefix[s]);  // never binds
  }
  sigma.push_back(k);
  na.push_back(total);
  nb.push_back(total);

  NestedInstance ins = NestedInstance::make(
      sigma, na, nb, lo, hi, ObjectiveSpec::quadratic(std::move(w), yt));

  SolverConfig scfg;
  const Allocation sol = solve_continuous(ins, scfg);
  if (projection_probe) projection_probe(ins, yt, sol.x);

  std::vector<double> out(k);
  for (int p = 0; p < k; ++p) {
    const int v = ws[order[p]];
    const double y = std::clamp(sol.x[p], lo[p], hi[p]);
    out[order[p]] = sign(v) * y;
  }
  return out;
}

void SvorexProblem::set_values(const std::vector<int>& ws,
                               const std::vector<double>& vals) {
  if (ws.size() != vals.size()) {
    throw DomainError("svorex: value count mismatch");
  }
  for (std::size_t q = 0; q < ws.size(); ++q) {
    const Var& var = vars_[ws[q]];
    const double nv = std::clamp(vals[q], 0.0, cfg_.C);
    double& slot = var.star ? alpha_star_[var.sample] : alpha_[var.sample];
    // beta = alpha* - alpha.
    const double dbeta = var.star ? nv - slot : slot - nv;
    slot = nv;
    if (dbeta != 0.0) {
      const std::vector<double>& col = kernel_[var.sample];
      for (int i = 0; i < data_.n; ++i) g_[i] += col[i] * dbeta;
    }
  }
}

void SvorexProblem::set_state(const std::vector<double>& alpha,
                              const std::vector<double>& alpha_star) {
  if (alpha.size() != static_cast<std::size_t>(data_.n) ||
      alpha_star.size() != static_cast<std::size_t>(data_.n)) {
    throw DomainError("svorex: state size mismatch");
  }
  for (int i = 0; i < data_.n; ++i) {
    if (alpha_var_[i] < 0 && alpha[i] != 0.0) {
      throw DomainError("svorex: pinned alpha must stay zero");
    }
    if (star_var_[i] < 0 && alpha_star[i] != 0.0) {
      throw DomainError("svorex: pinned alpha* must stay zero");
    }
  }
  alpha_ = alpha;
  alpha_star_ = alpha_star;
  for (int i = 0; i < data_.n; ++i) {
    double s = 0.0;
    for (int j = 0; j < data_.n; ++j) {
      s += kernel_[i][j] * (alpha_star_[j] - alpha_[j]);
    }
    g_[i] = s;
  }
}

// --- training ------------------------------------------------------------------

namespace {

SvorexModel snapshot_model(const SvorexProblem& prob, long long rounds,
                           bool converged) {
  SvorexModel model;
  model.data = prob.data();
  model.C = prob.config().C;
  model.width = prob.config().width;
  model.alpha = prob.alpha();
  model.alpha_star = prob.alpha_star();
  model.thresholds = recover_thresholds(prob);
  model.ws_selections = rounds;
  model.converged = converged;
  return model;
}

}  // namespace

SvorexModel train(const OrdinalDataset& data, const SvorexConfig& cfg,
                  const TrainHooks* hooks) {
  SvorexProblem prob(data, cfg);
  if (hooks && hooks->on_projection) {
    prob.projection_probe = hooks->on_projection;
  }
  if (cfg.n_ws < 2) throw DomainError("svorex: n_ws must be >= 2");
  if (cfg.n_grad < 1) throw DomainError("svorex: n_grad must be >= 1");
  if (!(cfg.gamma > 0.0)) throw DomainError("svorex: gamma must be positive");

  long long rounds = 0;
  while (true) {
    const std::vector<int> ws = prob.select_working_set(cfg.n_ws);
    if (ws.empty()) break;
    if (++rounds > cfg.max_rounds) {
      throw IterationLimitExceeded("svorex: working-set round cap reached",
                                   snapshot_model(prob, rounds, false));
    }

    const double obj0 = prob.objective();
    std::vector<double> snap(ws.size());
    for (std::size_t q = 0; q < ws.size(); ++q) snap[q] = prob.value(ws[q]);

    // Fixed-step projected gradient ascent on the working set. The step is
    // halved and the round replayed whenever the block of n_grad steps fails
    // to improve the dual objective; a violated pair always admits an
    // improving step, so this terminates.
    double gamma = cfg.gamma;
    bool improved = false;
    for (int attempt = 0; attempt < 45 && !improved; ++attempt) {
      std::vector<double> target(ws.size());
      for (int it = 0; it < cfg.n_grad; ++it) {
        for (std::size_t q = 0; q < ws.size(); ++q) {
          target[q] = prob.value(ws[q]) + gamma * prob.grad(ws[q]);
        }
        const std::vector<double> proj = prob.project_working_set(ws, target);
        prob.set_values(ws, proj);
        if (hooks && hooks->after_step) hooks->after_step(prob);
      }
      if (prob.objective() > obj0 + 1e-15 * std::max(1.0, std::fabs(obj0))) {
        improved = true;
      } else {
        prob.set_values(ws, snap);
        gamma *= 0.5;
      }
    }
    if (!improved) {
      throw IterationLimitExceeded(
          "svorex: no numeric progress on the most-violated pair",
          snapshot_model(prob, rounds, false));
    }
    if (hooks && hooks->after_round) {
      hooks->after_round(prob, prob.objective());
    }
  }
  return snapshot_model(prob, rounds, true);
}

// --- prediction ----------------------------------------------------------------

std::vector<double> recover_thresholds(const SvorexProblem& prob) {
  const OrdinalDataset& data = prob.data();
  const double C = prob.config().C;
  const double act = 1e-8 * std::max(1.0, C);
  const std::vector<double>& f = prob.decision_values();
  const int chain = data.r - 1;
  std::vector<double> th(chain, 0.0);
  for (int j = 1; j <= chain; ++j) {
    // Complementary slackness brackets the threshold between the scores of
    // the samples whose box constraints are inactive on each side.
    double lo = -kInf, hi = kInf;
    for (int i = 0; i < data.n; ++i) {
      if (data.label[i] == j) {
        const double a = prob.alpha()[i];
        if (a < C - act) lo = std::max(lo, f[i] + 1.0);
        if (a > act) hi = std::min(hi, f[i] + 1.0);
      } else if (data.label[i] == j + 1) {
        const double s = prob.alpha_star()[i];
        if (s > act) lo = std::max(lo, f[i] - 1.0);
        if (s < C - act) hi = std::min(hi, f[i] - 1.0);
      }
    }
    double b;
    if (lo > -kInf && hi < kInf) {
      b = 0.5 * (lo + hi);
    } else if (lo > -kInf) {
      b = lo;
    } else if (hi < kInf) {
      b = hi;
    } else {
      b = 0.0;
    }
    th[j - 1] = j >= 2 ? std::max(b, th[j - 2]) : b;
  }
  return th;
}

double decision_value(const SvorexModel& model, const std::vector<double>& x) {
  if (x.size() != static_cast<std::size_t>(model.data.dim)) {
    throw DomainError("predict: feature width mismatch");
  }
  double score = 0.0;
  for (int i = 0; i < model.data.n; ++i) {
    const double beta = model.alpha_star[i] - model.alpha[i];
    if (beta == 0.0) continue;
    double d2 = 0.0;
    for (int q = 0; q < model.data.dim; ++q) {
      const double e = model.data.x[i][q] - x[q];
      d2 += e * e;
    }
    score += beta * std::exp(-model.width * d2);
  }
  return score;
}

int predict(const SvorexModel& model, const std::vector<double>& x) {
  const double score = decision_value(model, x);
  int cls = 1;
  for (double b : model.thresholds) {
    if (score > b) {
      ++cls;
    } else {
      break;  // thresholds are nondecreasing; ties go to the lower class
    }
  }
  return cls;
}

// --- file formats ---------------------------------------------------------------

OrdinalDataset read_ordinal_dataset(std::istream& in) {
  OrdinalDataset data;
  std::string line;
  int width = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> nums;
    double v;
    while (ls >> v) nums.push_back(v);
    if (nums.empty()) continue;
    if (width < 0) {
      width = static_cast<int>(nums.size());
      if (width < 2) {
        throw DomainError("dataset file: lines need features plus a label");
      }
    } else if (static_cast<int>(nums.size()) != width) {
      throw DomainError("dataset file: ragged line");
    }
    const double lab = nums.back();
    nums.pop_back();
    if (lab != std::floor(lab) || lab < 1) {
      throw DomainError("dataset file: labels must be positive integers");
    }
    data.x.push_back(std::move(nums));
    data.label.push_back(static_cast<int>(lab));
    data.r = std::max(data.r, static_cast<int>(lab));
  }
  data.n = static_cast<int>(data.x.size());
  data.dim = width - 1;
  data.check();
  return data;
}

OrdinalDataset read_ordinal_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open dataset file: " + path);
  return read_ordinal_dataset(in);
}

void write_ordinal_dataset(std::ostream& out, const OrdinalDataset& data) {
  char buf[64];
  for (int i = 0; i < data.n; ++i) {
    for (int q = 0; q < data.dim; ++q) {
      std::snprintf(buf, sizeof buf, "%.12g", data.x[i][q]);
      out << buf << ' ';
    }
    out << data.label[i] << '\n';
  }
}

void write_ordinal_dataset_file(const std::string& path,
                                const OrdinalDataset& data) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write dataset file: " + path);
  write_ordinal_dataset(out, data);
}

SvorexModel read_svorex_model(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("model file: ") + e.what());
  }
  SvorexModel model;
  model.data.n = j.at("n").get<int>();
  model.data.dim = j.at("dim").get<int>();
  model.data.r = j.at("r").get<int>();
  model.data.x = j.at("x").get<std::vector<std::vector<double>>>();
  model.data.label = j.at("label").get<std::vector<int>>();
  model.C = j.at("C").get<double>();
  model.width = j.at("width").get<double>();
  model.alpha = j.at("alpha").get<std::vector<double>>();
  model.alpha_star = j.at("alpha_star").get<std::vector<double>>();
  model.thresholds = j.at("thresholds").get<std::vector<double>>();
  model.ws_selections = j.value("ws_selections", 0LL);
  model.converged = j.value("converged", true);
  model.data.check();
  if (model.alpha.size() != static_cast<std::size_t>(model.data.n) ||
      model.alpha_star.size() != static_cast<std::size_t>(model.data.n)) {
    throw DomainError("model file: dual vector sizes disagree with n");
  }
  return model;
}

SvorexModel read_svorex_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open model file: " + path);
  return read_svorex_model(in);
}

void write_svorex_model(std::ostream& out, const SvorexModel& model) {
  nlohmann::json j;
  j["n"] = model.data.n;
  j["dim"] = model.data.dim;
  j["r"] = model.data.r;
  j["x"] = model.data.x;
  j["label"] = model.data.label;
  j["C"] = model.C;
  j["width"] = model.width;
  j["alpha"] = model.alpha;
  j["alpha_star"] = model.alpha_star;
  j["thresholds"] = model.thresholds;
  j["ws_selections"] = model.ws_selections;
  j["converged"] = model.converged;
  out << j.dump(2) << "\n";
}

void write_svorex_model_file(const std::string& path,
                             const SvorexModel& model) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write model file: " + path);
  write_svorex_model(out, model);
}

}  // namespace rapnc
