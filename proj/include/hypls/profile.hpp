#pragma once

// Non-increasing profiles t -> u*(t) on (0, inf). A profile is the canonical
// representation of a radial non-increasing function on H^n written in the
// volume coordinate t = Psi(rho).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hypls/quadrature.hpp"

namespace hypls {

using ProfileParams = std::map<std::string, double>;

/// Serializable description of a profile: a family tag with its parameters,
/// or a list of (t, u) nodes for the piecewise-linear kind.
struct ProfileSpec {
  std::string kind;
  ProfileParams params;
  std::vector<std::pair<double, double>> nodes;
};

/// Shape information a family supplies alongside its value and derivative.
struct ProfileShape {
  std::vector<double> breakpoints;  // points where the derivative may jump
  double support = std::numeric_limits<double>::infinity();
  double head_end = 0.0;            // u* is constant on (0, head_end)
  bool absolutely_continuous = true;
  double typical_scale = 1.0;       // a length on which the profile varies
};

class MonotoneProfile {
 public:
  using Fn = std::function<double(double)>;

  MonotoneProfile(ProfileSpec spec, Fn value, Fn derivative, ProfileShape shape) {
    auto& bp = shape.breakpoints;
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    double scale = 1.0;
    if (auto it = spec.params.find("scale"); it != spec.params.end()) scale = it->second;
    impl_ = std::make_shared<const Impl>(
        Impl{std::move(spec), std::move(value), std::move(derivative), std::move(shape), scale});
  }

  /// u*(t); 0 for t beyond the support.
  [[nodiscard]] double value(double t) const {
    if (t >= impl_->shape.support) return 0.0;
    return impl_->scale * impl_->value(t);
  }
  [[nodiscard]] double operator()(double t) const { return value(t); }

  /// (u*)'(t), defined away from the breakpoints (one-sided values there).
  [[nodiscard]] double derivative(double t) const {
    if (t >= impl_->shape.support || t < impl_->shape.head_end) return 0.0;
    return impl_->scale * impl_->derivative(t);
  }

  [[nodiscard]] const std::vector<double>& breakpoints() const { return impl_->shape.breakpoints; }
  [[nodiscard]] double support_bound() const { return impl_->shape.support; }
  [[nodiscard]] bool compact() const { return std::isfinite(impl_->shape.support); }
  [[nodiscard]] double head_end() const { return impl_->shape.head_end; }
  [[nodiscard]] bool absolutely_continuous() const { return impl_->shape.absolutely_continuous; }
  [[nodiscard]] double typical_scale() const { return impl_->shape.typical_scale; }
  [[nodiscard]] const std::string& kind() const { return impl_->spec.kind; }
  [[nodiscard]] const ProfileParams& params() const { return impl_->spec.params; }
  [[nodiscard]] const ProfileSpec& spec() const { return impl_->spec; }
  [[nodiscard]] double scale() const { return impl_->scale; }

  /// sup u* = u*(0+).
  [[nodiscard]] double sup() const {
    const double h = impl_->shape.head_end;
    return value(h > 0.0 ? 0.5 * h : std::numeric_limits<double>::min());
  }

  /// c u*.
  [[nodiscard]] MonotoneProfile scaled(double c) const {
    if (!(c >= 0.0) || !std::isfinite(c)) throw std::domain_error("MonotoneProfile::scaled: c must be >= 0");
    auto copy = std::make_shared<Impl>(*impl_);
    copy->scale *= c;
    copy->spec.params["scale"] = copy->scale;
    MonotoneProfile out = *this;
    out.impl_ = std::move(copy);
    return out;
  }

  /// Integration breakpoints on [lo, support]: head end, shape breakpoints,
  /// and the support when finite.
  [[nodiscard]] std::vector<double> pieces(double lo = 0.0) const {
    std::vector<double> pts{lo};
    if (head_end() > lo) pts.push_back(head_end());
    for (double b : breakpoints()) {
      if (b > pts.back() && b < support_bound()) pts.push_back(b);
    }
    pts.push_back(support_bound());
    return pts;
  }

  /// Sampled monotonicity check on a log grid spanning the profile's scales.
  [[nodiscard]] bool nonincreasing_on_grid(int m = 1000) const {
    const double lo = 1e-8 * typical_scale();
    const double hi = compact() ? support_bound() : 1e8 * typical_scale();
    double prev = std::numeric_limits<double>::infinity();
    for (double t : log_grid(lo, hi, m)) {
      const double v = value(t);
      if (!(v <= prev * (1.0 + 1e-14) + 1e-300) || v < 0.0) return false;
      prev = v;
    }
    return true;
  }

 private:
  struct Impl {
    ProfileSpec spec;
    Fn value;
    Fn derivative;
    ProfileShape shape;
    double scale;
  };
  std::shared_ptr<const Impl> impl_;
};

/// JSON schema: {"kind": string, "params": {name: number, ...}} or, for the
/// piecewise-linear kind, {"kind": "piecewise_linear", "nodes": [{"t":..,"u":..}, ...]}
/// with an optional "params": {"scale": c}.
inline nlohmann::json to_json(const ProfileSpec& spec) {
  nlohmann::json j;
  j["kind"] = spec.kind;
  j["params"] = nlohmann::json::object();
  for (const auto& [k, v] : spec.params) j["params"][k] = v;
  if (!spec.nodes.empty()) {
    j["nodes"] = nlohmann::json::array();
    for (const auto& [t, u] : spec.nodes) j["nodes"].push_back({{"t", t}, {"u", u}});
  }
  return j;
}

inline ProfileSpec spec_from_json(const nlohmann::json& j) {
  ProfileSpec spec;
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw std::invalid_argument("profile json: missing string field 'kind'");
  }
  spec.kind = j["kind"].get<std::string>();
  if (j.contains("params")) {
    for (const auto& [k, v] : j["params"].items()) {
      if (!v.is_number()) throw std::invalid_argument("profile json: parameter '" + k + "' must be numeric");
      spec.params[k] = v.get<double>();
    }
  }
  if (j.contains("nodes")) {
    for (const auto& node : j["nodes"]) {
      spec.nodes.emplace_back(node.at("t").get<double>(), node.at("u").get<double>());
    }
  }
  return spec;
}

inline nlohmann::json to_json(const MonotoneProfile& u) { return to_json(u.spec()); }

}  // namespace hypls
