#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature with variable
// substitutions for infinite ranges, power singularities at the left endpoint
// and integrands that live on many decades (log-variable mapping).

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace hypls {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subdivisions = 2000;
  /// gamma in f(t) ~ (t - a)^(gamma - 1) near the left endpoint; <= 0 disables the mapping.
  double singular_exponent_left = 0.0;

  void validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureConfig: rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw std::invalid_argument("QuadratureConfig: abs_tol must be >= 0");
    if (max_subdivisions < 1) throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 1");
  }
};

/// Defaults for constants and for inequality margins respectively.
inline QuadratureConfig constants_config() { return QuadratureConfig{1e-10, 0.0, 2000, 0.0}; }
inline QuadratureConfig margins_config() { return QuadratureConfig{1e-7, 0.0, 2000, 0.0}; }

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions_used = 0;
  bool converged = true;

  QuadratureResult& operator+=(const QuadratureResult& other) {
    value += other.value;
    error_estimate += other.error_estimate;
    subdivisions_used += other.subdivisions_used;
    converged = converged && other.converged;
    return *this;
  }
};

inline QuadratureResult operator+(QuadratureResult a, const QuadratureResult& b) { return a += b; }

using Integrand = std::function<double(double)>;

namespace detail {

// Abscissae and weights of the 15-point Kronrod rule and embedded 7-point
// Gauss rule on [-1, 1] (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

inline double checked(double y) {
  if (std::isnan(y)) throw std::domain_error("integrate: integrand returned NaN");
  return y;
}

inline Segment gk15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f(center));
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = checked(f(center - dx));
    f2[j] = checked(f(center + dx));
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  const double h = std::abs(half);
  resasc *= h;
  resabs *= h;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, resk * half, err};
}

// Globally adaptive bisection on a finite interval of the (already mapped) variable.
inline QuadratureResult adapt(const Integrand& g, double a, double b, const QuadratureConfig& cfg) {
  std::priority_queue<Segment> heap;
  Segment first = gk15(g, a, b);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  int used = 1;
  auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };
  while (total_err > target() && used < cfg.max_subdivisions) {
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted in floating point
    heap.pop();
    const Segment left = gk15(g, worst.a, mid);
    const Segment right = gk15(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++used;
  }
  // Re-sum to shed accumulated cancellation from the running updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  QuadratureResult r;
  r.value = total;
  r.error_estimate = total_err;
  r.subdivisions_used = used;
  r.converged = total_err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
  return r;
}

}  // namespace detail

/// Integrates f over (a, b); b may be +infinity. Non-convergence is reported
/// through converged = false together with the best estimate; a NaN from f
/// throws std::domain_error.
inline QuadratureResult integrate(const Integrand& f, double a, double b,
                                  const QuadratureConfig& cfg = constants_config()) {
  cfg.validate();
  if (!std::isfinite(a)) throw std::invalid_argument("integrate: left endpoint must be finite");
  if (!(a < b)) {
    if (a == b) return {};
    throw std::invalid_argument("integrate: requires a < b");
  }
  const double gamma = cfg.singular_exponent_left;
  const bool singular = gamma > 0.0 && gamma != 1.0;
  if (std::isinf(b)) {
    // Algebraic tails become endpoint singularities under t = s/(1-s), which
    // defeats the error estimate; split off [a + 1, inf) and integrate it in
    // x = ln(t - a) instead, where such tails decay exponentially.
    const double split = a + 1.0;
    auto tail = [&f, a](double s) {
      const double one_minus = 1.0 - s;
      const double x = s / one_minus;
      const double e = std::exp(x);
      if (!std::isfinite(e)) return 0.0;
      const double y = f(a + e);
      if (y == 0.0) return 0.0;
      return y * e / (one_minus * one_minus);
    };
    return integrate(f, a, split, cfg) + detail::adapt(tail, 0.0, 1.0, cfg);
  }
  if (!singular) {
    Integrand direct = [&f](double t) { return f(t); };
    return detail::adapt(direct, a, b, cfg);
  }
  // t = a + (b - a) s^(1/gamma) removes a (t - a)^(gamma - 1) endpoint singularity.
  const double width = b - a;
  Integrand g = [&f, a, width, gamma](double s) {
    if (s == 0.0) return 0.0;
    const double z = std::pow(s, 1.0 / gamma);
    const double y = f(a + width * z);
    if (y == 0.0) return 0.0;
    return y * width * z / (gamma * s);
  };
  return detail::adapt(g, 0.0, 1.0, cfg);
}

/// Integrates f over (a, b) with 0 <= a < b <= inf in the variable x = ln t.
/// Suited to integrands with power behaviour at 0 or infinity and to ranges
/// spanning many decades.
inline QuadratureResult integrate_log(const Integrand& f, double a, double b,
                                      const QuadratureConfig& cfg = constants_config()) {
  cfg.validate();
  if (!(a >= 0.0)) throw std::invalid_argument("integrate_log: requires a >= 0");
  if (!(a < b)) {
    if (a == b) return {};
    throw std::invalid_argument("integrate_log: requires a < b");
  }
  auto in_log = [&f](double x) {
    const double t = std::exp(x);
    if (!(t > 0.0) || !std::isfinite(t)) return 0.0;
    const double y = f(t);
    if (y == 0.0) return 0.0;
    return y * t;
  };
  QuadratureConfig plain = cfg;
  plain.singular_exponent_left = 0.0;
  if (a == 0.0 && std::isinf(b)) {
    return integrate_log(f, 0.0, 1.0, cfg) + integrate_log(f, 1.0, b, cfg);
  }
  if (a == 0.0) {
    // x = ln b - y, y in (0, inf)
    const double lb = std::log(b);
    return integrate([&in_log, lb](double y) { return in_log(lb - y); }, 0.0,
                     std::numeric_limits<double>::infinity(), plain);
  }
  const double la = std::log(a);
  if (std::isinf(b)) {
    return integrate([&in_log, la](double y) { return in_log(la + y); }, 0.0,
                     std::numeric_limits<double>::infinity(), plain);
  }
  return integrate(in_log, la, std::log(b), plain);
}

/// Integrates over consecutive breakpoints, choosing the log mapping on pieces
/// that touch 0 or infinity or span more than a factor `log_ratio`.
inline QuadratureResult integrate_pieces(const Integrand& f, const std::vector<double>& points,
                                         const QuadratureConfig& cfg = constants_config(),
                                         double log_ratio = 4.0) {
  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double a = points[i];
    const double b = points[i + 1];
    if (!(a < b)) continue;
    if (a >= 0.0 && (a == 0.0 || std::isinf(b) || b > log_ratio * a)) {
      total += integrate_log(f, a, b, cfg);
    } else {
      total += integrate(f, a, b, cfg);
    }
  }
  return total;
}

/// Gauss-Legendre nodes and weights mapped to [0, 1], computed once per order.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussLegendreRule make_gauss_legendre(int m) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(m));
  rule.weights.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(3.141592653589793 * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(m - 1 - i);
    rule.nodes[lo] = 0.5 * (1.0 - x);
    rule.nodes[hi] = 0.5 * (1.0 + x);
    rule.weights[lo] = 0.5 * w;
    rule.weights[hi] = 0.5 * w;
  }
  return rule;
}

template <int M>
const GaussLegendreRule& gauss_legendre() {
  static const GaussLegendreRule rule = make_gauss_legendre(M);
  return rule;
}

/// Fixed-order Gauss-Legendre on [a, b]; for smooth integrands on short pieces.
template <int M = 20, class F>
double gauss_legendre_integral(F&& f, double a, double b) {
  const auto& rule = gauss_legendre<M>();
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(a + (b - a) * rule.nodes[i]);
  return sum * (b - a);
}

/// m log-spaced points from a to b, endpoints exact.
inline std::vector<double> log_grid(double a, double b, int m) {
  if (!(a > 0.0)) throw std::domain_error("log_grid: a must be > 0");
  if (!(b > a)) throw std::domain_error("log_grid: requires a < b");
  if (m < 2) throw std::domain_error("log_grid: m must be >= 2");
  std::vector<double> out(static_cast<std::size_t>(m));
  const double la = std::log(a);
  const double step = (std::log(b) - la) / (m - 1);
  for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = std::exp(la + step * i);
  out.front() = a;
  out.back() = b;
  return out;
}

/// m equally spaced points from a to b, endpoints exact.
inline std::vector<double> linear_grid(double a, double b, int m) {
  if (m < 2) throw std::domain_error("linear_grid: m must be >= 2");
  if (!(b > a)) throw std::domain_error("linear_grid: requires a < b");
  std::vector<double> out(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (m - 1);
  out.front() = a;
  out.back() = b;
  return out;
}

}  // namespace hypls
