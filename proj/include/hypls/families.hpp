#pragma once

// Explicit test families of non-increasing profiles, and the JSON factory that
// rebuilds any of them from its ProfileSpec.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hypls/constants.hpp"
#include "hypls/geometry.hpp"
#include "hypls/profile.hpp"

namespace hypls {

namespace detail {

inline double param(const ProfileSpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) throw std::invalid_argument("profile '" + spec.kind + "': missing parameter " + key);
  return it->second;
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace detail

/// f_{a,R}: a^(-1/p) on (0, a), s^(-1/p) on [a, R), R^(-1/p) max(2 - s/R, 0) for s >= R.
inline MonotoneProfile family_sharp(double a, double R, double p) {
  detail::require(a > 0.0 && R > a, "family_sharp: requires 0 < a < R");
  detail::require(p > 1.0, "family_sharp: requires p > 1");
  const double ip = 1.0 / p;
  const double head = std::pow(a, -ip);
  const double top = std::pow(R, -ip);
  auto value = [=](double s) {
    if (s < a) return head;
    if (s < R) return std::pow(s, -ip);
    return top * std::max(2.0 - s / R, 0.0);
  };
  auto deriv = [=](double s) {
    if (s < a) return 0.0;
    if (s < R) return -ip * std::pow(s, -ip - 1.0);
    if (s < 2.0 * R) return -top / R;
    return 0.0;
  };
  ProfileShape shape{{a, R}, 2.0 * R, a, true, a};
  return {{"sharp", {{"a", a}, {"R", R}, {"p", p}}, {}}, value, deriv, shape};
}

/// e^(-k t).
inline MonotoneProfile family_exponential(double k) {
  detail::require(k > 0.0, "family_exponential: requires k > 0");
  ProfileShape shape;
  shape.typical_scale = 1.0 / k;
  return {{"exponential", {{"k", k}}, {}},
          [k](double t) { return std::exp(-k * t); },
          [k](double t) { return -k * std::exp(-k * t); },
          shape};
}

/// (1 + t/s0)^(-gamma).
inline MonotoneProfile family_power(double gamma, double s0) {
  detail::require(gamma > 0.0 && s0 > 0.0, "family_power: requires gamma > 0 and s0 > 0");
  ProfileShape shape;
  shape.typical_scale = s0;
  return {{"power", {{"gamma", gamma}, {"s0", s0}}, {}},
          [=](double t) { return std::pow(1.0 + t / s0, -gamma); },
          [=](double t) { return -gamma / s0 * std::pow(1.0 + t / s0, -gamma - 1.0); },
          shape};
}

/// exp(-rho^2 / (2 w^2)) in the geodesic radius, written in the volume coordinate.
inline MonotoneProfile family_geodesic_gaussian(Dimension n, double width) {
  detail::require(width > 0.0, "family_geodesic_gaussian: requires width > 0");
  const HyperbolicSpace space(n);
  const double w2 = width * width;
  auto value = [space, w2](double t) {
    const double rho = space.psi_inverse(t);
    return std::exp(-0.5 * rho * rho / w2);
  };
  auto deriv = [space, w2](double t) {
    if (t <= 0.0) return 0.0;
    const double rho = space.psi_inverse(t);
    return -rho / w2 * std::exp(-0.5 * rho * rho / w2) / space.sphere_area(rho);
  };
  ProfileShape shape;
  shape.typical_scale = space.psi(width);
  return {{"geodesic_gaussian", {{"n", n.real()}, {"width", width}}, {}}, value, deriv, shape};
}

/// The extremal of the fractional-dimension Sobolev inequality,
/// w(r) = (1 + r^(q/(q-1)))^(-(beta-q)/q), with its derivative.
struct FracExtremal {
  double beta;
  double q;

  [[nodiscard]] double exponent() const { return (beta - q) / q; }
  [[nodiscard]] double power() const { return q / (q - 1.0); }
  [[nodiscard]] double w(double r) const { return std::pow(1.0 + std::pow(r, power()), -exponent()); }
  [[nodiscard]] double dw(double r) const {
    const double s = power();
    const double e = exponent();
    return -e * s * std::pow(r, s - 1.0) * std::pow(1.0 + std::pow(r, s), -e - 1.0);
  }
  /// -r w'(r), finite at r = 0 and cheaper to form without cancellation.
  [[nodiscard]] double minus_r_dw(double r) const {
    const double s = power();
    const double rs = std::pow(r, s);
    return exponent() * s * rs * std::pow(1.0 + rs, -exponent() - 1.0);
  }
};

inline FracExtremal family_frac_extremal(double beta, double q) {
  const FracSobolevParams checked(beta, q);
  return {checked.beta, checked.q};
}

/// u*(t) = w((t/sigma_n)^(1/n) / r0) for the fractional extremal w: the profile
/// whose v-transform is a dilate of w.
inline MonotoneProfile family_frac_pullback(Dimension n, double beta, double q, double r0) {
  detail::require(r0 > 0.0, "family_frac_pullback: requires r0 > 0");
  const FracExtremal ext = family_frac_extremal(beta, q);
  const double sig = sigma(n.real());
  const double nn = n.real();
  auto radius = [=](double t) { return std::pow(t / sig, 1.0 / nn) / r0; };
  auto value = [=](double t) { return ext.w(radius(t)); };
  auto deriv = [=](double t) {
    if (t <= 0.0) return -std::numeric_limits<double>::infinity();
    return -ext.minus_r_dw(radius(t)) / (nn * t);
  };
  ProfileShape shape;
  shape.typical_scale = sig * std::pow(r0, nn);
  return {{"frac_pullback", {{"n", nn}, {"beta", beta}, {"q", q}, {"r0", r0}}, {}}, value, deriv, shape};
}

/// Moser-type trial profile: 1 on (0, a], ln(T/t)/ln(T/a) on (a, T), 0 after T.
inline MonotoneProfile family_moser_log(double a, double T) {
  detail::require(a > 0.0 && T > a, "family_moser_log: requires 0 < a < T");
  const double L = std::log(T / a);
  auto value = [=](double t) { return t <= a ? 1.0 : std::log(T / t) / L; };
  auto deriv = [=](double t) { return t < a ? 0.0 : -1.0 / (t * L); };
  ProfileShape shape{{a}, T, a, true, a};
  return {{"moser_log", {{"a", a}, {"T", T}}, {}}, value, deriv, shape};
}

/// Moser-Trudinger trial family: the Moser-type profile with head on (0, a) and
/// logarithmic decay to the cutoff T.
inline MonotoneProfile family_mt(Dimension n, double q, double a, double T) {
  const LorentzIndex idx(n.real(), q);
  detail::require(idx.mt_window(n), "family_mt: requires 2n/(n-1) <= q <= n");
  return family_moser_log(a, T);
}

/// Profile whose v-transform is the linear cutoff v(r) = max(1 - r/r0, 0).
inline MonotoneProfile family_v_linear(Dimension n, double r0) {
  detail::require(r0 > 0.0, "family_v_linear: requires r0 > 0");
  const double sig = sigma(n.real());
  const double nn = n.real();
  const double support = sig * std::pow(r0, nn);
  auto value = [=](double t) { return std::max(1.0 - std::pow(t / sig, 1.0 / nn) / r0, 0.0); };
  auto deriv = [=](double t) {
    if (t <= 0.0) return -std::numeric_limits<double>::infinity();
    return -std::pow(t / sig, 1.0 / nn) / (r0 * nn * t);
  };
  ProfileShape shape;
  shape.support = support;
  shape.typical_scale = support;
  return {{"v_linear", {{"n", nn}, {"r0", r0}}, {}}, value, deriv, shape};
}

/// Piecewise-linear profile through (t_i, u_i); constant u_0 on (0, t_0) and
/// 0 after the last node. A nonzero last value is a jump, so the profile is
/// then not absolutely continuous.
inline MonotoneProfile family_piecewise_linear(std::vector<std::pair<double, double>> nodes) {
  detail::require(nodes.size() >= 2, "family_piecewise_linear: needs at least two nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    detail::require(nodes[i].first >= 0.0 && nodes[i].second >= 0.0,
                    "family_piecewise_linear: nodes must be nonnegative");
    if (i > 0) {
      detail::require(nodes[i].first > nodes[i - 1].first, "family_piecewise_linear: t must increase");
      detail::require(nodes[i].second <= nodes[i - 1].second, "family_piecewise_linear: u must not increase");
    }
  }
  std::vector<double> ts, us;
  for (const auto& [t, u] : nodes) {
    ts.push_back(t);
    us.push_back(u);
  }
  auto segment = [ts](double t) {
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    return static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - ts.begin() - 1, 0));
  };
  auto value = [ts, us, segment](double t) {
    if (t <= ts.front()) return us.front();
    if (t >= ts.back()) return 0.0;
    const std::size_t i = segment(t);
    const double x = (t - ts[i]) / (ts[i + 1] - ts[i]);
    return us[i] + x * (us[i + 1] - us[i]);
  };
  auto deriv = [ts, us, segment](double t) {
    if (t < ts.front() || t >= ts.back()) return 0.0;
    const std::size_t i = segment(t);
    return (us[i + 1] - us[i]) / (ts[i + 1] - ts[i]);
  };
  ProfileShape shape;
  shape.breakpoints = ts;
  shape.support = ts.back();
  shape.head_end = ts.front() > 0.0 && us.front() > 0.0 ? ts.front() : 0.0;
  shape.absolutely_continuous = us.back() == 0.0;
  shape.typical_scale = ts.back() - ts.front();
  return {{"piecewise_linear", {}, std::move(nodes)}, value, deriv, shape};
}

/// c on (0, a), 0 after: a jump, so excluded from gradient computations.
inline MonotoneProfile family_step(double c, double a) {
  detail::require(c >= 0.0 && a > 0.0, "family_step: requires c >= 0 and a > 0");
  ProfileShape shape{{}, a, a, false, a};
  return {{"step", {{"c", c}, {"a", a}}, {}}, [c](double) { return c; }, [](double) { return 0.0; }, shape};
}

/// Rebuilds a profile from its serialized description.
inline MonotoneProfile make_profile(const ProfileSpec& spec) {
  using detail::param;
  auto base = [&]() -> MonotoneProfile {
    const std::string& k = spec.kind;
    if (k == "sharp") return family_sharp(param(spec, "a"), param(spec, "R"), param(spec, "p"));
    if (k == "exponential") return family_exponential(param(spec, "k"));
    if (k == "power") return family_power(param(spec, "gamma"), param(spec, "s0"));
    if (k == "geodesic_gaussian") {
      return family_geodesic_gaussian(Dimension(static_cast<int>(param(spec, "n"))), param(spec, "width"));
    }
    if (k == "frac_pullback") {
      return family_frac_pullback(Dimension(static_cast<int>(param(spec, "n"))), param(spec, "beta"),
                                  param(spec, "q"), param(spec, "r0"));
    }
    if (k == "moser_log") return family_moser_log(param(spec, "a"), param(spec, "T"));
    if (k == "v_linear") return family_v_linear(Dimension(static_cast<int>(param(spec, "n"))), param(spec, "r0"));
    if (k == "piecewise_linear") return family_piecewise_linear(spec.nodes);
    if (k == "step") return family_step(param(spec, "c"), param(spec, "a"));
    throw std::invalid_argument("make_profile: unknown or non-serializable kind '" + k + "'");
  }();
  if (auto it = spec.params.find("scale"); it != spec.params.end()) return base.scaled(it->second);
  return base;
}

inline MonotoneProfile profile_from_json(const nlohmann::json& j) { return make_profile(spec_from_json(j)); }

}  // namespace hypls
