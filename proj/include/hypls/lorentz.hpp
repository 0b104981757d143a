#pragma once

// Lorentz quasi-norms of profiles and of their gradients on H^n.
//
//   ||u||_{p,q}^q      = int_0^inf u*(t)^q t^(q/p - 1) dt
//   ||grad u||_{p,q}^q = int_0^inf U*(t)^q t^(q/p - 1) dt,  U(s) = -(u*)'(s) surface_factor(s)
//
// U is in general not monotone (it jumps and turns around at the breakpoints
// of u*), so U* is obtained from the distribution function
// mu_U(lambda) = |{U > lambda}|, assembled from the monotone runs of U, via
//   ||grad u||_{p,q}^q = p int_0^sup U lambda^(q-1) mu_U(lambda)^(q/p) d lambda.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypls/constants.hpp"
#include "hypls/geometry.hpp"
#include "hypls/profile.hpp"
#include "hypls/quadrature.hpp"
#include "hypls/roots.hpp"

namespace hypls {

/// A q-th power norm value. Divergent integrals are reported as value = +inf
/// with diverged = true, never as NaN.
struct NormValue {
  double value = 0.0;
  double error_estimate = 0.0;
  bool diverged = false;
  bool converged = true;

  [[nodiscard]] double root(double q) const { return diverged ? value : std::pow(value, 1.0 / q); }

  static NormValue divergent() {
    return {std::numeric_limits<double>::infinity(), 0.0, true, false};
  }
};

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline NormValue from_quadrature(const QuadratureResult& r) {
  if (!std::isfinite(r.value)) return NormValue::divergent();
  return {r.value, r.error_estimate, false, r.converged};
}

// t^(1/p) g(t) must decay at the ends of (0, inf) for int g^q t^(q/p-1) to be finite.
inline bool decays(const std::function<double(double)>& g, double p, double near, double far) {
  const double d_near = std::pow(near, 1.0 / p) * g(near);
  const double d_far = std::pow(far, 1.0 / p) * g(far);
  // u ~ t^(-gamma) gives d_far / d_near = (far/near)^(1/p - gamma); demand a clear
  // share of the 1/p headroom, so bounded u at large p is not mistaken for divergence
  // while slowly convergent tails (gamma slightly above 1/p) still count as decaying.
  const double spread = std::min(far / near, near / far);
  return !(d_near > 0.0) || d_far < std::pow(spread, 1.0 / (32.0 * p)) * d_near;
}

// Power weight t^e without pow's cost at integer or zero exponents.
inline double weight(double t, double e) { return e == 0.0 ? 1.0 : std::pow(t, e); }

}  // namespace detail

/// ||u||_{p,q}^q for any p > 0, q >= 1 (the target exponent p* of the
/// Poincare-Sobolev inequality exceeds the range of LorentzIndex).
inline NormValue lorentz_norm_q(const MonotoneProfile& u, double p, double q,
                                const QuadratureConfig& cfg = margins_config()) {
  if (!(p > 0.0) || !(q >= 1.0)) throw std::domain_error("lorentz_norm: requires p > 0 and q >= 1");
  const double e = q / p - 1.0;
  const double h = u.head_end();
  double head = 0.0;
  if (h > 0.0) head = std::pow(u.sup(), q) * (p / q) * std::pow(h, q / p);
  const double scale = u.typical_scale();
  auto ug = [&u](double t) { return u.value(t); };
  if (!u.compact()) {
    const double end = std::max(u.pieces().rbegin()[1], scale);
    if (!detail::decays(ug, p, 1e6 * end, 1e12 * end)) return NormValue::divergent();
  }
  // Near 0 the same test runs with the roles of the two points swapped.
  if (h == 0.0 && !detail::decays(ug, p, 1e-6 * scale, 1e-12 * scale)) return NormValue::divergent();
  auto integrand = [&u, q, e](double t) {
    const double v = u.value(t);
    if (v == 0.0) return 0.0;
    return std::pow(v, q) * detail::weight(t, e);
  };
  NormValue out = detail::from_quadrature(integrate_pieces(integrand, u.pieces(h), cfg));
  out.value += head;
  return out;
}

inline NormValue lorentz_norm_q(const MonotoneProfile& u, LorentzIndex idx,
                                const QuadratureConfig& cfg = margins_config()) {
  return lorentz_norm_q(u, idx.p(), idx.q(), cfg);
}

/// ||u||_{p,q}.
inline double lorentz_norm(const MonotoneProfile& u, LorentzIndex idx, const QuadratureConfig& cfg = margins_config()) {
  return lorentz_norm_q(u, idx, cfg).root(idx.q());
}

/// U(s) = -(u*)'(s) n sigma_n sinh^(n-1)(F(s)), the gradient density of the
/// radial function u*(Psi(rho)) written in the volume coordinate.
class GradientDensity {
 public:
  GradientDensity(MonotoneProfile u, Dimension n) : u_(std::move(u)), space_(n) {
    if (!u_.absolutely_continuous()) {
      throw std::domain_error("gradient: profile '" + u_.kind() +
                              "' has a jump; only absolutely continuous profiles have a Lorentz gradient");
    }
  }

  [[nodiscard]] double operator()(double s) const {
    if (!(s > 0.0)) return 0.0;
    const double d = u_.derivative(s);
    if (d == 0.0) return 0.0;
    return -d * space_.surface_factor(s);
  }

  [[nodiscard]] const MonotoneProfile& profile() const { return u_; }
  [[nodiscard]] const HyperbolicSpace& space() const { return space_; }

 private:
  MonotoneProfile u_;
  HyperbolicSpace space_;
};

/// Piece of the domain on which U is monotone. U(x0+) = v0, U(x1-) = v1.
struct MonotoneRun {
  double x0, x1;
  double v0, v1;
  bool increasing;
};

/// Distribution function of a gradient density, assembled from its monotone runs.
class LevelSets {
 public:
  explicit LevelSets(GradientDensity U, int samples_per_piece = 64) : U_(std::move(U)) {
    build(samples_per_piece);
  }

  [[nodiscard]] const std::vector<MonotoneRun>& runs() const { return runs_; }
  [[nodiscard]] double sup() const { return sup_; }
  /// Where U stops being identically zero on the left (the head of u*).
  [[nodiscard]] double start() const { return start_; }

  /// True when U is non-increasing on its whole support, so that U* is a shift of U.
  [[nodiscard]] bool nonincreasing() const {
    for (std::size_t i = 0; i < runs_.size(); ++i) {
      if (runs_[i].increasing) return false;
      if (i > 0 && runs_[i].v0 > runs_[i - 1].v1 + 1e-10 * sup_) return false;
      if (i > 0 && runs_[i].x0 != runs_[i - 1].x1) return false;
    }
    return true;
  }

  /// |{U > lambda}|.
  [[nodiscard]] double measure_above(double lambda) const {
    double total = 0.0;
    for (const auto& run : runs_) total += run_measure(run, lambda);
    return total;
  }

  /// All run endpoint values: the kinks of mu_U.
  [[nodiscard]] std::vector<double> critical_levels() const {
    std::vector<double> v;
    for (const auto& r : runs_) {
      v.push_back(r.v0);
      v.push_back(r.v1);
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

 private:
  GradientDensity U_;
  std::vector<MonotoneRun> runs_;
  double sup_ = 0.0;
  double start_ = 0.0;

  [[nodiscard]] double at(double x) const { return U_(x); }

  // Root of U = lambda on a decreasing run. Endpoint values come from the run
  // (one-sided limits), since U may jump exactly at a breakpoint.
  [[nodiscard]] double root_decreasing(const MonotoneRun& r, double lambda) const {
    double a = r.x0;
    double b = r.x1;
    double fa = r.v0 - lambda;
    double fb = r.v1 - lambda;
    if (std::isinf(b)) {
      // Bracket by geometric expansion; U is eventually decreasing on an infinite run.
      double hi = std::max(2.0 * a, a + U_.profile().typical_scale());
      double fhi = at(hi) - lambda;
      while (fhi > 0.0) {
        a = hi;
        fa = fhi;
        hi *= 4.0;
        if (!std::isfinite(hi)) throw std::domain_error("gradient density does not decay to 0");
        fhi = at(hi) - lambda;
      }
      b = hi;
      fb = fhi;
    }
    if (fa <= 0.0) return a;
    if (fb >= 0.0) return b;
    return roots::illinois([&](double x) { return at(x) - lambda; }, a, b, fa, fb, 1e-14).x;
  }

  [[nodiscard]] double run_measure(const MonotoneRun& r, double lambda) const {
    if (!r.increasing) {
      if (lambda >= r.v0) return 0.0;
      if (std::isfinite(r.x1) && lambda < r.v1) return r.x1 - r.x0;
      return root_decreasing(r, lambda) - r.x0;
    }
    if (lambda >= r.v1) return 0.0;
    if (lambda < r.v0) return r.x1 - r.x0;
    const double x =
        roots::illinois([&](double y) { return at(y) - lambda; }, r.x0, r.x1, r.v0 - lambda, r.v1 - lambda, 1e-14).x;
    return r.x1 - x;
  }

  void add_samples_run(std::vector<std::pair<double, double>>& pts, double x_lo, double x_hi, bool open_right) {
    // Split the sampled piece at its interior extrema. Differences at rounding
    // level count as flat, so piecewise-constant densities are not shredded.
    const double noise = 1e-10 * sup_sample(pts);
    auto trend = [noise](double d) { return std::abs(d) <= noise ? 0 : (d > 0.0 ? 1 : -1); };
    std::vector<std::pair<double, double>> nodes{pts.front()};
    int last = 0;
    std::size_t last_at = 0;  // sample index ending the last significant step
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const int s = trend(pts[i].second - pts[i - 1].second);
      if (s == 0) continue;
      if (last != 0 && s != last) {
        const double sign = last > 0 ? 1.0 : -1.0;
        const double lo = pts[last_at - 1].first;
        double x = roots::golden_extremum([&](double y) { return at(y); }, lo, pts[i].first, sign);
        x = std::clamp(x, std::max(lo, nodes.back().first), pts[i].first);
        if (x > nodes.back().first) nodes.emplace_back(x, at(x));
      }
      last = s;
      last_at = i;
    }
    nodes.push_back(pts.back());
    nodes.front().first = x_lo;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      MonotoneRun r;
      r.x0 = nodes[i].first;
      r.x1 = nodes[i + 1].first;
      r.v0 = nodes[i].second;
      r.v1 = nodes[i + 1].second;
      r.increasing = trend(r.v1 - r.v0) > 0;
      if (i + 2 == nodes.size()) r.x1 = x_hi;
      if (i + 2 == nodes.size() && open_right) {
        if (r.increasing) throw std::domain_error("gradient density is not eventually decreasing");
        r.v1 = 0.0;
      }
      if (r.x1 > r.x0) runs_.push_back(r);
    }
  }

  void build(int m) {
    const MonotoneProfile& u = U_.profile();
    start_ = u.head_end();
    const auto pts = u.pieces(start_);
    const double scale = u.typical_scale();
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      const double a = pts[k];
      const double b = pts[k + 1];
      const bool open_right = std::isinf(b);
      // Sample strictly inside the piece so one-sided limits are used at jumps.
      const double width = open_right ? scale : b - a;
      const double lo = a > 0.0 ? a + std::min(1e-13 * a, 1e-6 * width) : 1e-12 * std::min(width, scale);
      const double hi = open_right ? 1e12 * std::max(lo, scale) : b - std::min(1e-13 * b, 1e-6 * width);
      const bool use_log = lo > 0.0 && hi > 4.0 * lo;
      const auto grid = use_log ? log_grid(lo, hi, m) : linear_grid(lo, hi, m);
      std::vector<std::pair<double, double>> samples;
      samples.reserve(grid.size());
      for (double x : grid) samples.emplace_back(x, at(x));
      if (open_right) {
        // Beyond the sampled range U must be decreasing to 0.
        const double last = samples.back().second;
        if (!(last <= samples[samples.size() - 2].second) || !(last < 1e-3 * sup_sample(samples))) {
          throw std::domain_error("gradient density does not decay on the profile's tail");
        }
      }
      add_samples_run(samples, a, b, open_right);
    }
    for (const auto& r : runs_) sup_ = std::max({sup_, r.v0, r.v1});
  }

  static double sup_sample(const std::vector<std::pair<double, double>>& s) {
    double m = 0.0;
    for (const auto& p : s) m = std::max(m, p.second);
    return m;
  }
};

/// ||grad u||_{p,q}^q through the distribution function of U (the default
/// path). When U is non-increasing the rearrangement is a shift and the norm
/// is integrated directly.
inline NormValue gradient_lorentz_norm_q(const MonotoneProfile& u, Dimension n, double p, double q,
                                         const QuadratureConfig& cfg = margins_config()) {
  if (!(p > 0.0) || !(q >= 1.0)) throw std::domain_error("gradient_lorentz_norm: requires p > 0 and q >= 1");
  const GradientDensity U(u, n);
  const LevelSets levels(U);
  if (levels.runs().empty() || levels.sup() == 0.0) return {};
  const double e = q / p - 1.0;
  if (levels.nonincreasing()) {
    const double lo = levels.start();
    auto g = [&U, lo, q, e](double tau) {
      const double v = U(lo + tau);
      if (v == 0.0) return 0.0;
      return std::pow(v, q) * detail::weight(tau, e);
    };
    std::vector<double> pts{0.0};
    for (const auto& r : levels.runs()) pts.push_back(r.x1 - lo);
    return detail::from_quadrature(integrate_pieces(g, pts, cfg));
  }
  const double top = levels.sup();
  std::vector<double> lam{0.0};
  for (double v : levels.critical_levels()) {
    if (v > 0.0 && v < top) lam.push_back(v);
  }
  lam.push_back(top);
  const double power = q / p;
  auto integrand = [&levels, q, power](double lambda) {
    const double mu = levels.measure_above(lambda);
    if (mu == 0.0) return 0.0;
    return std::pow(lambda, q - 1.0) * std::pow(mu, power);
  };
  NormValue out = detail::from_quadrature(integrate_pieces(integrand, lam, cfg));
  out.value *= p;
  out.error_estimate *= p;
  return out;
}

inline NormValue gradient_lorentz_norm_q(const MonotoneProfile& u, Dimension n, LorentzIndex idx,
                                         const QuadratureConfig& cfg = margins_config()) {
  return gradient_lorentz_norm_q(u, n, idx.p(), idx.q(), cfg);
}

inline double gradient_lorentz_norm(const MonotoneProfile& u, Dimension n, LorentzIndex idx,
                                    const QuadratureConfig& cfg = margins_config()) {
  return gradient_lorentz_norm_q(u, n, idx, cfg).root(idx.q());
}

/// ||grad u||_{p,q}^q by sampling U on a log grid of `cells` cells (4-point
/// Gauss average of U^q per cell), sorting the cells by value and laying them
/// out from t = 0. Independent of the level-set path; used as its cross-check.
inline double gradient_lorentz_norm_q_sorted(const MonotoneProfile& u, Dimension n, double p, double q,
                                             int cells = 4096) {
  const GradientDensity U(u, n);
  const double lo = u.head_end();
  const double scale = u.typical_scale();
  const double hi = u.compact() ? u.support_bound() : lo + 1e12 * std::max(scale, u.pieces().rbegin()[1]);
  const double span = hi - lo;
  std::vector<double> edges{0.0};
  for (double x : log_grid(1e-12 * std::min(span, scale), span, cells)) edges.push_back(x);
  for (double b : u.breakpoints()) {
    if (b > lo && b < hi) edges.push_back(b - lo);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const auto& rule = gauss_legendre<4>();
  struct Cell {
    double mean;  // cell average of U^q, the sort key
    double width;
    std::array<double, 4> vals;
    bool increasing;
  };
  std::vector<Cell> cell;
  cell.reserve(edges.size());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Cell c{0.0, edges[i + 1] - edges[i], {}, false};
    for (std::size_t k = 0; k < 4; ++k) {
      c.vals[k] = std::pow(U(lo + edges[i] + c.width * rule.nodes[k]), q);
      c.mean += rule.weights[k] * c.vals[k];
    }
    c.increasing = c.vals[3] > c.vals[0];
    cell.push_back(c);
  }
  // Already in decreasing order: weight each Gauss sample at its own position,
  // which makes the sum a composite Gauss rule for the shifted integral.
  bool in_order = true;
  for (std::size_t i = 0; i < cell.size() && in_order; ++i) {
    in_order = !cell[i].increasing && (i == 0 || cell[i].mean <= cell[i - 1].mean);
  }
  const double e = q / p - 1.0;
  const double power = q / p;
  double t = 0.0;
  double sum = 0.0;
  if (in_order) {
    for (const auto& c : cell) {
      double part = 0.0;
      for (std::size_t k = 0; k < 4; ++k) part += rule.weights[k] * c.vals[k] * detail::weight(t + c.width * rule.nodes[k], e);
      sum += c.width * part;
      t += c.width;
    }
    return sum;
  }
  // Otherwise cells from different monotone runs interleave; a cell's mean is
  // charged with the exact weight of the slot it lands in.
  std::stable_sort(cell.begin(), cell.end(), [](const Cell& x, const Cell& y) { return x.mean > y.mean; });
  for (const auto& c : cell) {
    sum += c.mean * (p / q) * (std::pow(t + c.width, power) - std::pow(t, power));
    t += c.width;
  }
  return sum;
}

/// v(r) = u*(sigma_n r^n) and v'(r) = (u*)'(sigma_n r^n) n sigma_n r^(n-1).
class VTransform {
 public:
  VTransform(MonotoneProfile u, Dimension n) : u_(std::move(u)), n_(n.real()), sigma_(sigma(n.real())) {}

  [[nodiscard]] double v(double r) const {
    if (r == 0.0) return u_.sup();
    return u_.value(sigma_ * std::pow(r, n_));
  }
  [[nodiscard]] double dv(double r) const {
    if (!(r > 0.0)) return 0.0;
    const double t = sigma_ * std::pow(r, n_);
    if (t == 0.0) return 0.0;  // underflow; the weight vanishes there anyway
    const double d = u_.derivative(t);
    if (d == 0.0) return 0.0;
    // (u*)'(t) n t / r avoids forming r^(n-1) separately.
    return d * n_ * t / r;
  }
  /// Radius corresponding to the volume coordinate t.
  [[nodiscard]] double radius(double t) const { return std::pow(t / sigma_, 1.0 / n_); }
  /// Profile breakpoints mapped to the radial variable.
  [[nodiscard]] std::vector<double> pieces() const {
    std::vector<double> out;
    for (double t : u_.pieces()) out.push_back(std::isinf(t) ? t : radius(t));
    return out;
  }
  [[nodiscard]] const MonotoneProfile& profile() const { return u_; }

 private:
  MonotoneProfile u_;
  double n_;
  double sigma_;
};

inline VTransform v_transform(const MonotoneProfile& u, Dimension n) { return {u, n}; }

/// int_0^inf |v'(r)|^q r^(nq/p - 1) dr, the weighted Euclidean seminorm on the
/// right of the key estimate (without the factor n sigma_n^(q/p)).
inline NormValue v_seminorm_q(const MonotoneProfile& u, Dimension n, double p, double q,
                              const QuadratureConfig& cfg = margins_config()) {
  const VTransform v(u, n);
  const double e = n.real() * q / p - 1.0;
  auto g = [&v, q, e](double r) {
    const double d = v.dv(r);
    if (d == 0.0) return 0.0;
    return std::pow(std::abs(d), q) * detail::weight(r, e);
  };
  return detail::from_quadrature(integrate_pieces(g, v.pieces(), cfg));
}

/// u**(t) = (1/t) int_0^t u*, as a profile. Cumulative integrals at the
/// breakpoints and on a log grid are computed once at construction, so
/// evaluation only integrates from the nearest knot and is reentrant.
inline MonotoneProfile maximal_function(const MonotoneProfile& u, const QuadratureConfig& cfg = constants_config()) {
  struct Cache {
    std::vector<double> knots;
    std::vector<double> cum;
    double head_value = 0.0;
  };
  auto cache = std::make_shared<Cache>();
  const double h = u.head_end();
  const double scale = u.typical_scale();
  cache->head_value = h > 0.0 ? u.sup() : 0.0;
  auto uf = [u](double t) { return u.value(t); };

  std::vector<double> knots;
  if (h > 0.0) knots.push_back(h);
  const double first = h > 0.0 ? h : 1e-10 * scale;
  if (h == 0.0) knots.push_back(first);
  const double last = u.compact() ? u.support_bound() : 1e12 * std::max(scale, u.pieces().rbegin()[1]);
  for (double x : log_grid(first, last, 96)) knots.push_back(x);
  for (double b : u.breakpoints()) knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  knots.erase(std::remove_if(knots.begin(), knots.end(), [&](double x) { return x < first || x > last; }),
              knots.end());

  double running = 0.0;
  if (h > 0.0) {
    running = cache->head_value * h;
  } else {
    const auto head = integrate_log(uf, 0.0, first, cfg);
    if (!std::isfinite(head.value)) throw std::domain_error("maximal_function: u* is not integrable at 0");
    running = head.value;
  }
  cache->knots.push_back(knots.front());
  cache->cum.push_back(running);
  for (std::size_t i = 1; i < knots.size(); ++i) {
    running += integrate(uf, knots[i - 1], knots[i], cfg).value;
    cache->knots.push_back(knots[i]);
    cache->cum.push_back(running);
  }
  const bool compact = u.compact();

  auto integral_to = [cache, u, compact, cfg](double t) {
    const auto& k = cache->knots;
    if (t >= k.back()) {
      if (compact) return cache->cum.back();
      return cache->cum.back() + integrate_log([u](double s) { return u.value(s); }, k.back(), t, cfg).value;
    }
    const auto it = std::upper_bound(k.begin(), k.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - k.begin()) - 1;
    return cache->cum[i] + gauss_legendre_integral<20>([&u](double s) { return u.value(s); }, k[i], t);
  };
  const double front = cache->knots.front();
  auto value = [cache, u, integral_to, h, front](double t) {
    if (!(t > 0.0)) return u.sup();
    if (t <= h) return cache->head_value;
    if (t < front) {
      return integrate_log([u](double s) { return u.value(s); }, 0.0, t).value / t;
    }
    return integral_to(t) / t;
  };
  auto deriv = [u, value, h](double t) {
    if (t <= h || !(t > 0.0)) return 0.0;
    return (u.value(t) - value(t)) / t;
  };
  ProfileShape shape;
  shape.breakpoints = u.breakpoints();
  if (u.compact()) shape.breakpoints.push_back(u.support_bound());
  shape.head_end = h;
  shape.typical_scale = scale;
  ProfileSpec spec{"maximal", u.params(), {}};
  spec.params.erase("scale");
  return {spec, value, deriv, shape};
}

}  // namespace hypls
