// Python bindings for the solver core: instance construction, the three solve
// entry points, validation/feasibility reporting, the DP oracle, the random
// instance generator, both application reductions, and the ordinal-regression
// trainer.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rapnc/bench.hpp"
#include "rapnc/instance.hpp"
#include "rapnc/mda.hpp"
#include "rapnc/oracle.hpp"
#include "rapnc/reductions.hpp"
#include "rapnc/svorex.hpp"

namespace py = pybind11;
using namespace rapnc;

namespace {

ObjectiveSpec objective_from_args(const std::string& kind,
                                  const py::kwargs& kw) {
  auto vec = [&](const char* key) {
    if (!kw.contains(key)) {
      throw DomainError("objective '" + kind + "' needs parameter '" + key +
                        "'");
    }
    return kw[key].cast<std::vector<double>>();
  };
  if (kind == "linear") return ObjectiveSpec::linear(vec("p"));
  if (kind == "quadratic") return ObjectiveSpec::quadratic(vec("w"), vec("t"));
  if (kind == "f") return ObjectiveSpec::family_f(vec("p"));
  if (kind == "crash") return ObjectiveSpec::crash(vec("k"), vec("p"));
  if (kind == "fuel") return ObjectiveSpec::fuel(vec("p"), vec("c"));
  if (kind == "speed") {
    return make_speed_objective(vec("p"), vec("delta"), vec("v_opt"));
  }
  throw DomainError("unknown objective kind: " + kind);
}

Mode mode_from_arg(const std::string& name) {
  const auto mode = mode_from_name(name);
  if (!mode) throw DomainError("mode must be 'integer' or 'continuous'");
  return *mode;
}

}  // namespace

PYBIND11_MODULE(_rapnc, mod) {
  mod.doc() =
      "Separable convex resource allocation under nested prefix-sum bounds";

  py::register_exception<InfeasibleError>(mod, "InfeasibleError");
  py::register_exception<DomainError>(mod, "DomainError");

  py::class_<NestedInstance>(mod, "Instance")
      .def(py::init([](std::vector<int> sigma, std::vector<double> a,
                       std::vector<double> b, std::vector<double> c,
                       std::vector<double> d, const std::string& objective,
                       const py::kwargs& kw) {
             return NestedInstance::make(std::move(sigma), std::move(a),
                                         std::move(b), std::move(c),
                                         std::move(d),
                                         objective_from_args(objective, kw));
           }),
           py::arg("sigma"), py::arg("a"), py::arg("b"), py::arg("c"),
           py::arg("d"), py::arg("objective"))
      .def_readonly("n", &NestedInstance::n)
      .def_readonly("m", &NestedInstance::m)
      .def_property_readonly(
          "sigma", [](const NestedInstance& s) {
            return std::vector<int>(s.sigma.begin() + 1, s.sigma.end());
          })
      .def_property_readonly("a", [](const NestedInstance& s) {
        return std::vector<double>(s.a.begin() + 1, s.a.end());
      })
      .def_property_readonly("b", [](const NestedInstance& s) {
        return std::vector<double>(s.b.begin() + 1, s.b.end());
      })
      .def_readonly("c", &NestedInstance::c)
      .def_readonly("d", &NestedInstance::d);

  mod.def(
      "validate",
      [](const NestedInstance& ins, const std::string& mode) {
        const ValidationResult res = validate(ins, mode_from_arg(mode));
        return py::make_tuple(res.ok, res.message);
      },
      py::arg("instance"), py::arg("mode") = "continuous",
      "Returns (ok, message).");

  mod.def(
      "check_feasibility",
      [](const NestedInstance& ins, const std::vector<double>& x, double tol) {
        const FeasibilityReport rep = check_feasibility(ins, x, tol);
        py::dict out;
        out["max_nested_violation"] = rep.max_nested_violation;
        out["max_box_violation"] = rep.max_box_violation;
        out["sum_residual"] = rep.sum_residual;
        out["all_zero"] = rep.all_zero(tol);
        return out;
      },
      py::arg("instance"), py::arg("x"), py::arg("tol") = 1e-9);

  auto solve_result = [](const Allocation& alloc) {
    return py::make_tuple(alloc.x, alloc.objective_value);
  };

  mod.def(
      "solve",
      [solve_result](const NestedInstance& ins, const std::string& mode,
                     double epsilon) {
        SolverConfig cfg;
        cfg.epsilon = epsilon;
        return solve_result(solve(ins, mode_from_arg(mode), cfg));
      },
      py::arg("instance"), py::arg("mode") = "continuous",
      py::arg("epsilon") = 1e-6,
      "Returns (x, objective_value).");

  mod.def(
      "solve_integer",
      [solve_result](const NestedInstance& ins) {
        return solve_result(solve_integer(ins));
      },
      py::arg("instance"));

  mod.def(
      "solve_continuous",
      [solve_result](const NestedInstance& ins, double epsilon) {
        SolverConfig cfg;
        cfg.epsilon = epsilon;
        return solve_result(solve_continuous(ins, cfg));
      },
      py::arg("instance"), py::arg("epsilon") = 1e-6);

  mod.def(
      "dp_solve",
      [solve_result](const NestedInstance& ins, long long max_states) {
        return solve_result(dp_solve(ins, max_states));
      },
      py::arg("instance"), py::arg("max_states") = 50'000'000LL,
      "Exact brute-force optimum of a small integral instance.");

  mod.def(
      "gen_instance",
      [](int n, int m, std::uint64_t seed, const std::string& family) {
        const auto kind = objective_kind_from_name(family);
        if (!kind || *kind == ObjectiveKind::kCustom) {
          throw DomainError("unknown objective family: " + family);
        }
        return gen_instance({n, m, seed, *kind});
      },
      py::arg("n"), py::arg("m"), py::arg("seed") = 1,
      py::arg("family") = "linear");

  mod.def(
      "lot_sizing_to_instance",
      [](int n, std::vector<double> demand, double initial_inventory,
         std::vector<double> inventory_cap, std::vector<double> production_cap,
         std::vector<double> holding_cost, const std::string& cost_kind,
         const py::kwargs& kw) {
        LotSizingInstance ls;
        ls.n = n;
        ls.demand = std::move(demand);
        ls.initial_inventory = initial_inventory;
        ls.inventory_cap = std::move(inventory_cap);
        ls.production_cap = std::move(production_cap);
        ls.holding_cost = std::move(holding_cost);
        ls.production_cost = objective_from_args(cost_kind, kw);
        const LotSizingReduction red = lot_sizing_to_rapnc(ls);
        return py::make_tuple(red.instance, red.value_offset);
      },
      py::arg("n"), py::arg("demand"), py::arg("initial_inventory"),
      py::arg("inventory_cap"), py::arg("production_cap"),
      py::arg("holding_cost"), py::arg("cost_kind"),
      "Returns (instance, value_offset).");

  mod.def(
      "speed_opt_to_instance",
      [](int n, std::vector<double> leg_length, std::vector<double> window_lo,
         std::vector<double> window_hi, double v_min, double v_max,
         std::vector<double> fuel_price, std::vector<double> v_opt) {
        SpeedOptInstance so;
        so.n = n;
        so.leg_length = std::move(leg_length);
        so.window_lo = std::move(window_lo);
        so.window_hi = std::move(window_hi);
        so.v_min = v_min;
        so.v_max = v_max;
        so.fuel_price = std::move(fuel_price);
        so.v_opt = std::move(v_opt);
        return speed_opt_to_rapnc(so);
      },
      py::arg("n"), py::arg("leg_length"), py::arg("window_lo"),
      py::arg("window_hi"), py::arg("v_min"), py::arg("v_max"),
      py::arg("fuel_price"), py::arg("v_opt"));

  py::class_<SvorexModel>(mod, "SvorexModel")
      .def_readonly("thresholds", &SvorexModel::thresholds)
      .def_readonly("alpha", &SvorexModel::alpha)
      .def_readonly("alpha_star", &SvorexModel::alpha_star)
      .def_readonly("converged", &SvorexModel::converged)
      .def_readonly("ws_selections", &SvorexModel::ws_selections)
      .def("predict",
           [](const SvorexModel& model, const std::vector<double>& x) {
             return predict(model, x);
           })
      .def("decision_value",
           [](const SvorexModel& model, const std::vector<double>& x) {
             return decision_value(model, x);
           });

  mod.def(
      "svorex_train",
      [](const std::vector<std::vector<double>>& x,
         const std::vector<int>& labels, double C, double width, double gamma,
         int n_grad, int n_ws, double kkt_tol) {
        OrdinalDataset data;
        data.n = (int)x.size();
        data.dim = data.n > 0 ? (int)x[0].size() : 0;
        data.x = x;
        data.label = labels;
        for (int lab : labels) data.r = std::max(data.r, lab);
        SvorexConfig cfg;
        cfg.C = C;
        cfg.width = width;
        cfg.gamma = gamma;
        cfg.n_grad = n_grad;
        cfg.n_ws = n_ws;
        cfg.kkt_tol = kkt_tol;
        return train(data, cfg);
      },
      py::arg("x"), py::arg("labels"), py::arg("C") = 10.0,
      py::arg("width") = 1.0, py::arg("gamma") = 0.2, py::arg("n_grad") = 20,
      py::arg("n_ws") = 6, py::arg("kkt_tol") = 1e-3);

  mod.def(
      "make_synthetic_ordinal",
      [](int n, int dim, int r, double noise, std::uint64_t seed) {
        const OrdinalDataset data = make_synthetic_ordinal(n, dim, r, noise,
                                                           seed);
        return py::make_tuple(data.x, data.label);
      },
      py::arg("n"), py::arg("dim"), py::arg("r"), py::arg("noise") = 0.25,
      py::arg("seed") = 1, "Returns (features, labels).");
}
