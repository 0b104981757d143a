#pragma once

// Rearrangement machinery: sampled functions with their decreasing
// rearrangement, radial piecewise-linear functions on H^n, their
// distribution function mu_u and symmetric rearrangement u#.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypls/constants.hpp"
#include "hypls/geometry.hpp"
#include "hypls/profile.hpp"
#include "hypls/roots.hpp"

namespace hypls {

/// Finitely many nonnegative values, each occupying a cell of the same measure.
struct SampledFunction {
  std::vector<double> values;
  double cell_measure = 1.0;

  SampledFunction() = default;
  SampledFunction(std::vector<double> v, double h) : values(std::move(v)), cell_measure(h) {
    if (!(h > 0.0)) throw std::domain_error("SampledFunction: cell_measure must be > 0");
    for (double x : values) {
      if (!(x >= 0.0)) throw std::domain_error("SampledFunction: values must be >= 0");
    }
  }
};

/// Same multiset, non-increasing order.
inline SampledFunction decreasing_rearrangement(SampledFunction f) {
  std::sort(f.values.begin(), f.values.end(), std::greater<>());
  return f;
}

/// W_k = int over the k-th cell of t^(q/p - 1) dt.
inline std::vector<double> lorentz_cell_weights(std::size_t count, double h, double p, double q) {
  std::vector<double> w(count);
  const double e = q / p;
  for (std::size_t k = 0; k < count; ++k) {
    w[k] = (p / q) * (std::pow((k + 1.0) * h, e) - std::pow(k * h, e));
  }
  return w;
}

/// sum_k f_k^q W_k: the discrete int f^q t^(q/p - 1) dt with f laid out in order.
inline double weighted_power_sum(const SampledFunction& f, double p, double q) {
  const auto w = lorentz_cell_weights(f.values.size(), f.cell_measure, p, q);
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) s += std::pow(f.values[k], q) * w[k];
  return s;
}

/// Radial function x -> phi(d(0, x)) with phi piecewise linear through the
/// nodes (rho_i, phi_i), rho_0 = 0, phi >= 0 and phi = 0 at the last node.
class RadialFunction {
 public:
  static constexpr double kFlatPerturbation = 1e-14;

  explicit RadialFunction(std::vector<std::pair<double, double>> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) throw std::domain_error("RadialFunction: needs at least two nodes");
    if (nodes_.front().first != 0.0) throw std::domain_error("RadialFunction: first node must be at rho = 0");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!(nodes_[i].second >= 0.0)) throw std::domain_error("RadialFunction: phi must be >= 0");
      if (i > 0 && !(nodes_[i].first > nodes_[i - 1].first)) {
        throw std::domain_error("RadialFunction: rho must increase");
      }
    }
    if (nodes_.back().second != 0.0) throw std::domain_error("RadialFunction: phi must vanish at the last node");
    // A flat piece above 0 has a level set of positive measure; tilt it.
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
      const double v = nodes_[i].second;
      if (v > 0.0 && nodes_[i + 1].second == v) nodes_[i + 1].second = v * (1.0 - kFlatPerturbation);
    }
  }

  [[nodiscard]] const std::vector<std::pair<double, double>>& nodes() const { return nodes_; }
  [[nodiscard]] double support() const { return nodes_.back().first; }
  [[nodiscard]] std::size_t segments() const { return nodes_.size() - 1; }

  [[nodiscard]] double value(double rho) const {
    if (rho <= 0.0) return nodes_.front().second;
    if (rho >= support()) return 0.0;
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), rho,
                                     [](double r, const auto& nd) { return r < nd.first; });
    const auto i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    const auto& [r0, v0] = nodes_[i];
    const auto& [r1, v1] = nodes_[i + 1];
    return v0 + (rho - r0) / (r1 - r0) * (v1 - v0);
  }

  [[nodiscard]] double slope(std::size_t i) const {
    return (nodes_[i + 1].second - nodes_[i].second) / (nodes_[i + 1].first - nodes_[i].first);
  }

  [[nodiscard]] double max_value() const {
    double m = 0.0;
    for (const auto& nd : nodes_) m = std::max(m, nd.second);
    return m;
  }

  [[nodiscard]] bool nonincreasing() const {
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
      if (nodes_[i + 1].second > nodes_[i].second) return false;
    }
    return true;
  }

 private:
  std::vector<std::pair<double, double>> nodes_;
};

/// Distribution function and its derivative for a radial piecewise-linear function.
class RadialDistribution {
 public:
  RadialDistribution(RadialFunction fn, Dimension n) : fn_(std::move(fn)), space_(n) {
    for (const auto& nd : fn_.nodes()) node_psi_.push_back(space_.psi(nd.first));
  }

  /// mu(lambda) = V_g({phi > lambda}), summed over segments; on each segment the
  /// super-level set is an interval found by linear inversion.
  [[nodiscard]] double mu(double lambda) const { return mu_dmu(lambda).first; }

  /// (mu, d mu / d lambda) in one pass over the segments.
  [[nodiscard]] std::pair<double, double> mu_dmu(double lambda) const {
    double m = 0.0, d = 0.0;
    const auto& nd = fn_.nodes();
    for (std::size_t i = 0; i + 1 < nd.size(); ++i) {
      const auto [r0, v0] = nd[i];
      const auto [r1, v1] = nd[i + 1];
      if (std::max(v0, v1) <= lambda) continue;
      if (std::min(v0, v1) >= lambda) {
        m += node_psi_[i + 1] - node_psi_[i];
        continue;
      }
      const double rc = r0 + (lambda - v0) / (v1 - v0) * (r1 - r0);
      const double pc = space_.psi(rc);
      m += v1 > v0 ? node_psi_[i + 1] - pc : pc - node_psi_[i];
      d -= space_.sphere_area(rc) / std::abs(fn_.slope(i));
    }
    return {m, d};
  }

  /// d mu / d lambda = -sum over crossings of Psi'(rho_c) / |phi'|.
  [[nodiscard]] double dmu(double lambda) const {
    double total = 0.0;
    const auto& nd = fn_.nodes();
    for (std::size_t i = 0; i + 1 < nd.size(); ++i) {
      const auto [r0, v0] = nd[i];
      const auto [r1, v1] = nd[i + 1];
      if (!(std::min(v0, v1) < lambda && lambda < std::max(v0, v1))) continue;
      const double rc = r0 + (lambda - v0) / (v1 - v0) * (r1 - r0);
      total -= space_.sphere_area(rc) / std::abs(fn_.slope(i));
    }
    return total;
  }

  [[nodiscard]] const RadialFunction& function() const { return fn_; }
  [[nodiscard]] const HyperbolicSpace& space() const { return space_; }

 private:
  RadialFunction fn_;
  HyperbolicSpace space_;
  std::vector<double> node_psi_;
};

/// u*: the decreasing rearrangement of a radial piecewise-linear function, as a
/// profile. u*(t) solves mu(lambda) = t by safeguarded Newton between the
/// node levels; (u*)'(t) = 1 / mu'(u*(t)).
inline MonotoneProfile rearrange_radial(const RadialFunction& fn, Dimension n) {
  struct Table {
    RadialDistribution dist;
    std::vector<double> levels;  // node values, decreasing, ending at 0
    std::vector<double> measures;  // mu at those levels, increasing
  };
  auto tab = std::make_shared<Table>(Table{RadialDistribution(fn, n), {}, {}});
  for (const auto& nd : fn.nodes()) tab->levels.push_back(nd.second);
  tab->levels.push_back(0.0);
  std::sort(tab->levels.begin(), tab->levels.end(), std::greater<>());
  tab->levels.erase(std::unique(tab->levels.begin(), tab->levels.end()), tab->levels.end());
  for (double L : tab->levels) tab->measures.push_back(tab->dist.mu(L));
  const double total = tab->measures.back();
  const double top = tab->levels.front();

  auto level_at = [tab, total, top](double t) {
    if (t >= total) return 0.0;
    if (!(t > 0.0)) return top;
    const auto& m = tab->measures;
    const auto it = std::upper_bound(m.begin(), m.end(), t);
    const auto k = static_cast<std::size_t>(it - m.begin());  // m[k-1] <= t < m[k]
    const double hi = tab->levels[k - 1];
    const double lo = tab->levels[k];
    const double x0 = lo + (hi - lo) * (m[k] - t) / (m[k] - m[k - 1]);
    auto f = [&](double lam) {
      const auto [m_, d_] = tab->dist.mu_dmu(lam);
      return std::pair{t - m_, -d_};
    };
    return roots::safeguarded_newton(f, lo, hi, x0, 1e-14).x;
  };
  auto value = [level_at](double t) { return level_at(t); };
  auto deriv = [tab, level_at, total](double t) {
    if (t >= total || !(t > 0.0)) return 0.0;
    const double d = tab->dist.dmu(level_at(t));
    return d < 0.0 ? 1.0 / d : 0.0;
  };
  ProfileShape shape;
  for (std::size_t k = 1; k + 1 < tab->measures.size(); ++k) shape.breakpoints.push_back(tab->measures[k]);
  shape.support = total;
  shape.typical_scale = total;
  ProfileSpec spec{"rearranged_radial", {{"n", n.real()}}, fn.nodes()};
  return {spec, value, deriv, shape};
}

/// phi(rho) = u*(Psi(rho)) sampled at the given radii, closed off by 0 at the last one.
inline RadialFunction radialize(const MonotoneProfile& u, Dimension n, const std::vector<double>& radii) {
  const HyperbolicSpace h(n);
  std::vector<std::pair<double, double>> nodes;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double v = i + 1 == radii.size() ? 0.0 : (radii[i] == 0.0 ? u.sup() : u.value(h.psi(radii[i])));
    nodes.emplace_back(radii[i], v);
  }
  return RadialFunction(std::move(nodes));
}

/// ||grad u||_{p,q}^q for a radial piecewise-linear u, exactly: |grad u| is the
/// constant |phi'| on each shell, so its rearrangement is a step function with
/// the shell volumes as step lengths.
inline double radial_gradient_norm_q(const RadialFunction& fn, Dimension n, double p, double q) {
  const HyperbolicSpace h(n);
  std::vector<std::pair<double, double>> steps;  // (|slope|, shell volume)
  const auto& nd = fn.nodes();
  for (std::size_t i = 0; i + 1 < nd.size(); ++i) {
    const double s = std::abs(fn.slope(i));
    if (s > 0.0) steps.emplace_back(s, h.psi(nd[i + 1].first) - h.psi(nd[i].first));
  }
  std::stable_sort(steps.begin(), steps.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  const double e = q / p;
  double t = 0.0;
  double sum = 0.0;
  for (const auto& [s, vol] : steps) {
    sum += std::pow(s, q) * (p / q) * (std::pow(t + vol, e) - std::pow(t, e));
    t += vol;
  }
  return sum;
}

}  // namespace hypls
