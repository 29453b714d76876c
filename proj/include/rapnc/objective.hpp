#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rapnc/errors.hpp"

namespace rapnc {

enum class ObjectiveKind {
  kLinear,     // f_i(x) = p_i * x
  kQuadratic,  // f_i(x) = w_i * (x - t_i)^2
  kF,          // f_i(x) = x^4 / 4 + p_i * x
  kCrash,      // f_i(x) = k_i + p_i / x          (x > 0)
  kFuel,       // f_i(x) = p_i * c_i * (c_i/x)^3  (x > 0)
  kCustom,     // per-variable convex evaluator
};

const char* objective_kind_name(ObjectiveKind kind);
std::optional<ObjectiveKind> objective_kind_from_name(const std::string& name);

// One separable convex objective family over n variables. Only the vectors
// relevant to `kind` are populated; Custom carries per-variable callbacks
// (evaluator mandatory, derivative optional).
struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::kLinear;
  std::vector<double> p;  // Linear/F/Crash/Fuel coefficient
  std::vector<double> w;  // Quadratic curvature (>= 0)
  std::vector<double> t;  // Quadratic target
  std::vector<double> k;  // Crash constant
  std::vector<double> c;  // Fuel leg length (> 0)
  std::vector<std::function<double(double)>> custom_eval;
  std::vector<std::function<double(double)>> custom_deriv;  // optional

  // Optional label for custom objectives whose parameters are known to a
  // producer (e.g. the speed-optimization reduction); lets the file format
  // serialize them. Generic callbacks leave this empty and cannot be saved.
  std::string custom_tag;

  static ObjectiveSpec linear(std::vector<double> slopes);
  static ObjectiveSpec quadratic(std::vector<double> curvature,
                                 std::vector<double> target);
  static ObjectiveSpec family_f(std::vector<double> slopes);
  static ObjectiveSpec crash(std::vector<double> constants,
                             std::vector<double> weights);
  static ObjectiveSpec fuel(std::vector<double> prices,
                            std::vector<double> lengths);

  std::size_t size() const;

  // True when f_i requires a strictly positive argument.
  bool positive_domain() const {
    return kind == ObjectiveKind::kCrash || kind == ObjectiveKind::kFuel ||
           (kind == ObjectiveKind::kCustom && custom_tag == "speed");
  }

  bool strictly_convex() const {
    return kind == ObjectiveKind::kF || kind == ObjectiveKind::kCrash ||
           kind == ObjectiveKind::kFuel;
  }

  // The evaluators are defined inline below: they sit on the innermost loop
  // of the dual bisection and must inline into the templated solvers.
  double value(int i, double x) const;

  // f_i(x1) - f_i(x0), expanded per family so that nearby arguments do not
  // cancel catastrophically. This is what keeps the integer dual bisection
  // exact after scaling by large factors.
  double diff(int i, double x0, double x1) const;

  // f_i(x0 + h) - f_i(x0) with the step passed explicitly. Reconstructing the
  // step as x1 - x0 loses precision when h is many orders of magnitude below
  // x0 (fine solver grids); the factored forms below only use h
  // multiplicatively, so this stays accurate to roundoff.
  double diff_step(int i, double x0, double h) const;

  double deriv(int i, double x) const;

  // Solves f_i'(x) = g. Returns nullopt when no interior solution exists
  // (linear objectives, or g outside the derivative's range); callers clamp.
  std::optional<double> inv_deriv(int i, double g) const;

  // Largest one-sided slope magnitude of f_i over [lo, hi] intersected with
  // the domain; used to auto-derive the L1 penalty slope M.
  double slope_bound(int i, double lo, double hi) const;
};

// View of an ObjectiveSpec through a coordinate scaling: the solver works on
// integer points y while costs are those of x = y / scale. Derivatives are
// taken with respect to y.
class ObjectiveAdapter {
 public:
  ObjectiveAdapter(const ObjectiveSpec& spec, double scale)
      : spec_(&spec), inv_scale_(1.0 / scale) {}

  double value(int i, double y) const { return spec_->value(i, y * inv_scale_); }

  double diff(int i, double y0, double y1) const {
    // Grid coordinates are integral, so y1 - y0 is exact; scaling the step
    // once keeps the difference accurate even when it is ~1e-11 of the value.
    return spec_->diff_step(i, y0 * inv_scale_, (y1 - y0) * inv_scale_);
  }

  // Forward difference f((y+1)/s) - f(y/s), the marginal cost of one grid unit.
  double unit_diff(int i, double y) const {
    return spec_->diff_step(i, y * inv_scale_, inv_scale_);
  }

  double deriv(int i, double y) const {
    return spec_->deriv(i, y * inv_scale_) * inv_scale_;
  }

  std::optional<double> inv_deriv(int i, double g) const {
    auto x = spec_->inv_deriv(i, g / inv_scale_);
    if (!x) return std::nullopt;
    return *x / inv_scale_;
  }

  const ObjectiveSpec& spec() const { return *spec_; }
  double inv_scale() const { return inv_scale_; }

 private:
  const ObjectiveSpec* spec_;
  double inv_scale_;
};

namespace detail {

inline void require_positive_arg(double x, const char* family) {
  if (!(x > 0.0)) {
    throw DomainError(std::string(family) +
                      " objective evaluated at non-positive point");
  }
}

}  // namespace detail

inline double ObjectiveSpec::value(int i, double x) const {
  switch (kind) {
    case ObjectiveKind::kLinear:
      return p[i] * x;
    case ObjectiveKind::kQuadratic: {
      const double e = x - t[i];
      return w[i] * e * e;
    }
    case ObjectiveKind::kF:
      return 0.25 * x * x * x * x + p[i] * x;
    case ObjectiveKind::kCrash:
      detail::require_positive_arg(x, "crash");
      return k[i] + p[i] / x;
    case ObjectiveKind::kFuel: {
      detail::require_positive_arg(x, "fuel");
      const double r = c[i] / x;
      return p[i] * c[i] * r * r * r;
    }
    case ObjectiveKind::kCustom:
      return custom_eval[i](x);
  }
  return 0.0;
}

inline double ObjectiveSpec::diff(int i, double x0, double x1) const {
  return diff_step(i, x0, x1 - x0);
}

inline double ObjectiveSpec::diff_step(int i, double x0, double h) const {
  const double x1 = x0 + h;  // only ever used multiplicatively below
  switch (kind) {
    case ObjectiveKind::kLinear:
      return p[i] * h;
    case ObjectiveKind::kQuadratic:
      return w[i] * h * (x0 + x1 - 2.0 * t[i]);
    case ObjectiveKind::kF:
      // (x1^4 - x0^4)/4 factored through (x1 - x0).
      return 0.25 * h * (x1 * x1 * (x1 + x0) + x0 * x0 * (x1 + x0)) + p[i] * h;
    case ObjectiveKind::kCrash:
      detail::require_positive_arg(x0, "crash");
      detail::require_positive_arg(x1, "crash");
      return -p[i] * h / (x0 * x1);
    case ObjectiveKind::kFuel: {
      detail::require_positive_arg(x0, "fuel");
      detail::require_positive_arg(x1, "fuel");
      const double c4 = c[i] * c[i] * c[i] * c[i];
      const double num = x1 * x1 + x1 * x0 + x0 * x0;
      return -p[i] * c4 * h * num / (x0 * x0 * x0 * x1 * x1 * x1);
    }
    case ObjectiveKind::kCustom:
      return custom_eval[i](x1) - custom_eval[i](x0);
  }
  return 0.0;
}

inline double ObjectiveSpec::deriv(int i, double x) const {
  switch (kind) {
    case ObjectiveKind::kLinear:
      return p[i];
    case ObjectiveKind::kQuadratic:
      return 2.0 * w[i] * (x - t[i]);
    case ObjectiveKind::kF:
      return x * x * x + p[i];
    case ObjectiveKind::kCrash:
      detail::require_positive_arg(x, "crash");
      return -p[i] / (x * x);
    case ObjectiveKind::kFuel: {
      detail::require_positive_arg(x, "fuel");
      const double c4 = c[i] * c[i] * c[i] * c[i];
      return -3.0 * p[i] * c4 / (x * x * x * x);
    }
    case ObjectiveKind::kCustom: {
      if (i < static_cast<int>(custom_deriv.size()) && custom_deriv[i]) {
        return custom_deriv[i](x);
      }
      // Central difference fallback, step scaled to the argument.
      const double h = 1e-6 * std::max(1.0, std::fabs(x));
      return (custom_eval[i](x + h) - custom_eval[i](x - h)) / (2.0 * h);
    }
  }
  return 0.0;
}

inline std::optional<double> ObjectiveSpec::inv_deriv(int i, double g) const {
  switch (kind) {
    case ObjectiveKind::kLinear:
      return std::nullopt;
    case ObjectiveKind::kQuadratic:
      if (w[i] <= 0.0) return std::nullopt;
      return t[i] + g / (2.0 * w[i]);
    case ObjectiveKind::kF:
      return std::cbrt(g - p[i]);
    case ObjectiveKind::kCrash:
      if (g >= 0.0) return std::numeric_limits<double>::infinity();
      return std::sqrt(p[i] / -g);
    case ObjectiveKind::kFuel: {
      if (g >= 0.0) return std::numeric_limits<double>::infinity();
      const double c4 = c[i] * c[i] * c[i] * c[i];
      // Quartic root via two hardware square roots; std::pow is an order of
      // magnitude slower and this sits on the dual search's hot path.
      return std::sqrt(std::sqrt(3.0 * p[i] * c4 / -g));
    }
    case ObjectiveKind::kCustom:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace rapnc
