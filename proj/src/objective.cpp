#include "rapnc/objective.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace rapnc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();


}  // namespace

const char* objective_kind_name(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kLinear: return "linear";
    case ObjectiveKind::kQuadratic: return "quadratic";
    case ObjectiveKind::kF: return "f";
    case ObjectiveKind::kCrash: return "crash";
    case ObjectiveKind::kFuel: return "fuel";
    case ObjectiveKind::kCustom: return "custom";
  }
  return "unknown";
}

std::optional<ObjectiveKind> objective_kind_from_name(const std::string& name) {
  if (name == "linear") return ObjectiveKind::kLinear;
  if (name == "quadratic") return ObjectiveKind::kQuadratic;
  if (name == "f") return ObjectiveKind::kF;
  if (name == "crash") return ObjectiveKind::kCrash;
  if (name == "fuel") return ObjectiveKind::kFuel;
  if (name == "custom") return ObjectiveKind::kCustom;
  return std::nullopt;
}

ObjectiveSpec ObjectiveSpec::linear(std::vector<double> slopes) {
  ObjectiveSpec s;
  s.kind = ObjectiveKind::kLinear;
  s.p = std::move(slopes);
  return s;
}

ObjectiveSpec ObjectiveSpec::quadratic(std::vector<double> curvature,
                                       std::vector<double> target) {
  ObjectiveSpec s;
  s.kind = ObjectiveKind::kQuadratic;
  s.w = std::move(curvature);
  s.t = std::move(target);
  return s;
}

ObjectiveSpec ObjectiveSpec::family_f(std::vector<double> slopes) {
  ObjectiveSpec s;
  s.kind = ObjectiveKind::kF;
  s.p = std::move(slopes);
  return s;
}

ObjectiveSpec ObjectiveSpec::crash(std::vector<double> constants,
                                   std::vector<double> weights) {
  ObjectiveSpec s;
  s.kind = ObjectiveKind::kCrash;
  s.k = std::move(constants);
  s.p = std::move(weights);
  return s;
}

ObjectiveSpec ObjectiveSpec::fuel(std::vector<double> prices,
                                  std::vector<double> lengths) {
  ObjectiveSpec s;
  s.kind = ObjectiveKind::kFuel;
  s.p = std::move(prices);
  s.c = std::move(lengths);
  return s;
}

std::size_t ObjectiveSpec::size() const {
  switch (kind) {
    case ObjectiveKind::kLinear:
    case ObjectiveKind::kF: return p.size();
    case ObjectiveKind::kQuadratic: return w.size();
    case ObjectiveKind::kCrash: return p.size();
    case ObjectiveKind::kFuel: return p.size();
    case ObjectiveKind::kCustom: return custom_eval.size();
  }
  return 0;
}





double ObjectiveSpec::slope_bound(int i, double lo, double hi) const {
  if (positive_domain()) {
    // Slopes blow up toward zero; only the given (validated) range matters.
    lo = std::max(lo, 1e-12);
    hi = std::max(hi, lo);
  }
  return std::max(std::fabs(deriv(i, lo)), std::fabs(deriv(i, hi)));
}

}  // namespace rapnc
