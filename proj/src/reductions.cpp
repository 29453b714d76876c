#include "rapnc/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace rapnc {

namespace {

using nlohmann::json;

void require_size(std::size_t got, int n, const char* what) {
  if (got != static_cast<std::size_t>(n)) {
    throw DomainError(std::string(what) + " must have n entries");
  }
}

void require_nonneg(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!(x >= 0.0)) {
      throw DomainError(std::string(what) + " must be nonnegative");
    }
  }
}

}  // namespace

// --- production lot-sizing ----------------------------------------------------

LotSizingReduction lot_sizing_to_rapnc(const LotSizingInstance& ls) {
  const int n = ls.n;
  if (n < 1) throw DomainError("lot-sizing: n must be >= 1");
  require_size(ls.demand.size(), n, "lot-sizing: demand");
  require_size(ls.inventory_cap.size(), n, "lot-sizing: inventory_cap");
  require_size(ls.production_cap.size(), n, "lot-sizing: production_cap");
  require_size(ls.holding_cost.size(), n, "lot-sizing: holding_cost");
  require_nonneg(ls.demand, "lot-sizing: demand");
  require_nonneg(ls.inventory_cap, "lot-sizing: inventory_cap");
  require_nonneg(ls.production_cap, "lot-sizing: production_cap");
  require_nonneg(ls.holding_cost, "lot-sizing: holding_cost");
  if (!(ls.initial_inventory >= 0.0)) {
    throw DomainError("lot-sizing: initial inventory must be nonnegative");
  }
  if (ls.production_cost.size() != static_cast<std::size_t>(n)) {
    throw DomainError("lot-sizing: production cost must cover all n periods");
  }

  // A unit produced in period i raises every ending inventory from period i
  // on, so it is charged the suffix sum of the holding rates.
  std::vector<double> h(n, 0.0);
  {
    double suffix = 0.0;
    for (int i = n - 1; i >= 0; --i) {
      suffix += ls.holding_cost[i];
      h[i] = suffix;
    }
  }

  LotSizingReduction out;
  ObjectiveSpec objective;

  // Fold the linear holding term into the production-cost family.
  switch (ls.production_cost.kind) {
    case ObjectiveKind::kLinear: {
      std::vector<double> p = ls.production_cost.p;
      for (int i = 0; i < n; ++i) p[i] += h[i];
      p.push_back(0.0);  // slack
      objective = ObjectiveSpec::linear(std::move(p));
      break;
    }
    case ObjectiveKind::kQuadratic: {
      std::vector<double> w = ls.production_cost.w;
      std::vector<double> t = ls.production_cost.t;
      for (int i = 0; i < n; ++i) {
        if (h[i] == 0.0) continue;
        if (!(w[i] > 0.0)) {
          throw DomainError(
              "lot-sizing: quadratic production cost needs positive curvature "
              "to absorb holding costs");
        }
        // w (x - t)^2 + h x = w (x - (t - h/2w))^2 + (h t - h^2/4w)
        out.value_offset += h[i] * t[i] - h[i] * h[i] / (4.0 * w[i]);
        t[i] -= h[i] / (2.0 * w[i]);
      }
      w.push_back(0.0);  // slack
      t.push_back(0.0);
      objective = ObjectiveSpec::quadratic(std::move(w), std::move(t));
      break;
    }
    default:
      throw DomainError(
          "lot-sizing: production cost must be linear or quadratic");
  }

  // Nested bounds: cumulative production after period i must lie in
  // [D_i - K, D_i - K + inventory_cap_i].
  std::vector<int> sigma(n + 1);
  std::vector<double> a(n + 1), b(n + 1);
  double cum_demand = 0.0, cum_cap = 0.0;
  for (int i = 0; i < n; ++i) {
    cum_demand += ls.demand[i];
    cum_cap += ls.production_cap[i];
    sigma[i] = i + 1;
    a[i] = cum_demand - ls.initial_inventory;
    b[i] = a[i] + ls.inventory_cap[i];
    if (b[i] < 0.0) {
      throw NegativeBound(
          "lot-sizing: initial inventory exceeds demand plus inventory cap "
          "through period " +
          std::to_string(i + 1));
    }
    if (a[i] > cum_cap + 1e-12) {
      throw NegativeBound(
          "lot-sizing: cumulative demand through period " +
          std::to_string(i + 1) +
          " exceeds initial inventory plus production capacity");
    }
  }
  // Slack variable standing for the final inventory headroom; total fixed at
  // the final upper bound.
  const double big_b = b[n - 1];
  sigma[n] = n + 1;
  a[n] = b[n] = big_b;

  std::vector<double> c(n + 1, 0.0), d(n + 1, 0.0);
  for (int i = 0; i < n; ++i) d[i] = ls.production_cap[i];
  d[n] = b[n - 1] - a[n - 1];  // = inventory_cap[n-1]

  out.instance = NestedInstance::make(sigma, a, b, c, d, std::move(objective));

  // Constant part of the holding cost: sum_i alpha_i (K - D_i).
  double dsum = 0.0;
  for (int i = 0; i < n; ++i) {
    dsum += ls.demand[i];
    out.value_offset += ls.holding_cost[i] * (ls.initial_inventory - dsum);
  }
  return out;
}

double lot_sizing_plan_cost(const LotSizingInstance& ls,
                            const std::vector<double>& production) {
  if (production.size() != static_cast<std::size_t>(ls.n)) {
    throw DomainError("lot-sizing: plan length mismatch");
  }
  const double tol = 1e-9;
  double inventory = ls.initial_inventory;
  double cost = 0.0;
  for (int i = 0; i < ls.n; ++i) {
    const double x = production[i];
    if (x < -tol || x > ls.production_cap[i] + tol) {
      throw InfeasibleError("lot-sizing plan: production cap violated");
    }
    inventory += x - ls.demand[i];
    if (inventory < -tol || inventory > ls.inventory_cap[i] + tol) {
      throw InfeasibleError("lot-sizing plan: inventory bounds violated");
    }
    cost += ls.production_cost.value(i, x) + ls.holding_cost[i] * inventory;
  }
  return cost;
}

// --- vessel speed optimization -------------------------------------------------

ObjectiveSpec make_speed_objective(std::vector<double> price,
                                   std::vector<double> delta,
                                   std::vector<double> v_opt) {
  const std::size_t n = price.size();
  if (delta.size() != n || v_opt.size() != n) {
    throw DomainError("speed objective: parameter arrays must match");
  }
  ObjectiveSpec spec;
  spec.kind = ObjectiveKind::kCustom;
  spec.custom_tag = "speed";
  spec.p = std::move(price);
  spec.c = std::move(delta);
  spec.t = std::move(v_opt);
  spec.custom_eval.resize(n);
  spec.custom_deriv.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double p = spec.p[i], dl = spec.c[i], vo = spec.t[i];
    spec.custom_eval[i] = [p, dl, vo](double x) {
      if (dl <= 0.0) return 0.0;  // zero-length slack leg
      if (!(x > 0.0)) {
        throw DomainError("speed objective evaluated at non-positive time");
      }
      if (vo > 0.0 && x >= dl / vo) return p * dl * vo * vo * vo;
      return p * dl * dl * dl * dl / (x * x * x);
    };
    spec.custom_deriv[i] = [p, dl, vo](double x) {
      if (dl <= 0.0) return 0.0;
      if (!(x > 0.0)) {
        throw DomainError("speed objective evaluated at non-positive time");
      }
      if (vo > 0.0 && x >= dl / vo) return 0.0;
      return -3.0 * p * dl * dl * dl * dl / (x * x * x * x);
    };
  }
  return spec;
}

NestedInstance speed_opt_to_rapnc(const SpeedOptInstance& so) {
  const int n = so.n;
  if (n < 1) throw DomainError("speed-opt: n must be >= 1");
  require_size(so.leg_length.size(), n, "speed-opt: leg_length");
  require_size(so.window_lo.size(), n, "speed-opt: window_lo");
  require_size(so.window_hi.size(), n, "speed-opt: window_hi");
  require_size(so.fuel_price.size(), n, "speed-opt: fuel_price");
  require_size(so.v_opt.size(), n, "speed-opt: v_opt");
  if (!(so.v_max > 0.0)) throw DomainError("speed-opt: v_max must be > 0");
  if (so.v_min < 0.0 || so.v_min > so.v_max) {
    throw DomainError("speed-opt: need 0 <= v_min <= v_max");
  }
  for (int i = 0; i < n; ++i) {
    if (!(so.leg_length[i] > 0.0)) {
      throw DomainError("speed-opt: leg lengths must be positive");
    }
    if (!(so.fuel_price[i] > 0.0)) {
      throw DomainError("speed-opt: fuel prices must be positive");
    }
    if (so.v_opt[i] < 0.0) throw DomainError("speed-opt: v_opt must be >= 0");
    if (so.window_lo[i] > so.window_hi[i]) {
      throw DomainError("speed-opt: window_lo exceeds window_hi at port " +
                        std::to_string(i + 1));
    }
  }

  const double horizon = so.window_hi[n - 1];
  constexpr double kTinyTime = 1e-9;  // keeps the travel-time domain positive

  std::vector<double> c(n + 1, 0.0), d(n + 1, 0.0);
  double min_travel = 0.0;
  for (int i = 0; i < n; ++i) {
    c[i] = std::max(so.leg_length[i] / so.v_max, kTinyTime);
    d[i] = so.v_min > 0.0 ? so.leg_length[i] / so.v_min : horizon;
    if (d[i] < c[i]) d[i] = c[i];
    min_travel += c[i];
    if (min_travel > so.window_hi[i] + 1e-12) {
      throw WindowInfeasible(
          "speed-opt: port " + std::to_string(i + 1) +
          " cannot be reached inside its window at maximum speed");
    }
  }
  d[n] = horizon - so.window_lo[n - 1];  // slack span of the final window

  std::vector<int> sigma(n + 1);
  std::vector<double> a(n + 1), b(n + 1);
  for (int i = 0; i < n; ++i) {
    sigma[i] = i + 1;
    a[i] = so.window_lo[i];
    b[i] = so.window_hi[i];
  }
  sigma[n] = n + 1;
  a[n] = b[n] = horizon;

  std::vector<double> price = so.fuel_price;
  std::vector<double> delta = so.leg_length;
  std::vector<double> vopt = so.v_opt;
  price.push_back(0.0);
  delta.push_back(0.0);
  vopt.push_back(0.0);

  NestedInstance ins = NestedInstance::make(
      sigma, a, b, c, d,
      make_speed_objective(std::move(price), std::move(delta),
                           std::move(vopt)));
  const ValidationResult vr = validate(ins, Mode::kContinuous);
  if (!vr.ok) {
    if (vr.error == ValidationError::kInfeasible) {
      throw WindowInfeasible("speed-opt: " + vr.message);
    }
    throw DomainError("speed-opt: " + vr.message);
  }
  return ins;
}

// --- structured-text input ------------------------------------------------------

namespace {

json parse_doc(std::istream& in, const char* what) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string(what) + ": " + e.what());
  }
}

std::vector<double> need_array(const json& j, const char* key,
                               const char* what) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw DomainError(std::string(what) + ": missing array '" + key + "'");
  }
  return j[key].get<std::vector<double>>();
}

}  // namespace

LotSizingInstance read_lot_sizing(std::istream& in) {
  const json j = parse_doc(in, "lot-sizing file");
  LotSizingInstance ls;
  if (!j.contains("n")) throw DomainError("lot-sizing file: missing n");
  ls.n = j["n"].get<int>();
  ls.demand = need_array(j, "demand", "lot-sizing file");
  ls.initial_inventory = j.value("initial_inventory", 0.0);
  ls.inventory_cap = need_array(j, "inventory_cap", "lot-sizing file");
  ls.production_cap = need_array(j, "production_cap", "lot-sizing file");
  ls.holding_cost = need_array(j, "holding_cost", "lot-sizing file");
  if (!j.contains("production_cost") || !j["production_cost"].is_object()) {
    throw DomainError("lot-sizing file: missing production_cost");
  }
  const json& pc = j["production_cost"];
  const std::string kind = pc.value("kind", "");
  if (kind == "linear") {
    ls.production_cost =
        ObjectiveSpec::linear(need_array(pc, "p", "lot-sizing file"));
  } else if (kind == "quadratic") {
    ls.production_cost =
        ObjectiveSpec::quadratic(need_array(pc, "w", "lot-sizing file"),
                                 need_array(pc, "t", "lot-sizing file"));
  } else {
    throw DomainError(
        "lot-sizing file: production_cost kind must be linear or quadratic");
  }
  return ls;
}

LotSizingInstance read_lot_sizing_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open lot-sizing file: " + path);
  return read_lot_sizing(in);
}

SpeedOptInstance read_speed_opt(std::istream& in) {
  const json j = parse_doc(in, "speed-opt file");
  SpeedOptInstance so;
  if (!j.contains("n")) throw DomainError("speed-opt file: missing n");
  so.n = j["n"].get<int>();
  so.leg_length = need_array(j, "leg_length", "speed-opt file");
  so.window_lo = need_array(j, "window_lo", "speed-opt file");
  so.window_hi = need_array(j, "window_hi", "speed-opt file");
  so.v_min = j.value("v_min", 0.0);
  if (!j.contains("v_max")) throw DomainError("speed-opt file: missing v_max");
  so.v_max = j["v_max"].get<double>();
  so.fuel_price = need_array(j, "fuel_price", "speed-opt file");
  so.v_opt = need_array(j, "v_opt", "speed-opt file");
  return so;
}

SpeedOptInstance read_speed_opt_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open speed-opt file: " + path);
  return read_speed_opt(in);
}

}  // namespace rapnc
