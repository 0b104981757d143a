#pragma once

// Closed-form constants of the Lorentz-Sobolev inequalities on hyperbolic
// space, together with the parameter types that index them.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hypls/gamma.hpp"

namespace hypls {

namespace detail {

// Relative slack for comparisons against thresholds such as 2n/(n-1), which
// callers usually pass as rounded decimals or 8.0 / 3.
inline constexpr double kWindowSlack = 1e-12;

inline bool leq(double a, double b) { return a <= b + kWindowSlack * std::max(1.0, std::abs(b)); }

[[noreturn]] inline void domain_fail(const std::string& what) { throw std::domain_error(what); }

}  // namespace detail

/// Dimension of the hyperbolic space, n >= 2.
class Dimension {
 public:
  explicit Dimension(int n) : n_(n) {
    if (n < 2) detail::domain_fail("Dimension: n must be >= 2, got " + std::to_string(n));
  }
  [[nodiscard]] int value() const { return n_; }
  [[nodiscard]] double real() const { return static_cast<double>(n_); }
  /// 2n/(n-1), the lower end of the key-estimate window.
  [[nodiscard]] double critical_q() const { return 2.0 * real() / (real() - 1.0); }

  friend bool operator==(Dimension, Dimension) = default;

 private:
  int n_;
};

/// Lorentz exponents (p, q) with 1 < p < inf and 1 <= q < inf.
class LorentzIndex {
 public:
  LorentzIndex(double p, double q) : p_(p), q_(q) {
    if (!(p > 1.0) || !std::isfinite(p)) {
      detail::domain_fail("LorentzIndex: p must lie in (1, inf), got " + std::to_string(p));
    }
    if (!(q >= 1.0) || !std::isfinite(q)) {
      detail::domain_fail("LorentzIndex: q must lie in [1, inf), got " + std::to_string(q));
    }
  }

  [[nodiscard]] double p() const { return p_; }
  [[nodiscard]] double q() const { return q_; }

  /// 1 < q <= p: the sharp Poincare inequality holds.
  [[nodiscard]] bool poincare_window() const { return q_ > 1.0 && detail::leq(q_, p_); }
  /// 2n/(n-1) <= q <= p.
  [[nodiscard]] bool key_estimate_window(Dimension n) const {
    return detail::leq(n.critical_q(), q_) && detail::leq(q_, p_);
  }
  /// 2n/(n-1) <= q <= p < n.
  [[nodiscard]] bool ps_window(Dimension n) const { return key_estimate_window(n) && p_ < n.real(); }
  /// 2n/(n-1) <= q <= n (p is irrelevant: the critical exponent is p = n).
  [[nodiscard]] bool mt_window(Dimension n) const {
    return detail::leq(n.critical_q(), q_) && detail::leq(q_, n.real());
  }

 private:
  double p_;
  double q_;
};

/// Parameters of the fractional-dimension Sobolev inequality, beta > q > 1.
struct FracSobolevParams {
  FracSobolevParams(double beta_, double q_) : beta(beta_), q(q_) {
    if (!(q > 1.0)) {
      detail::domain_fail("FracSobolevParams: q must be > 1 (the constant degenerates at q = 1)");
    }
    if (!(beta > q)) detail::domain_fail("FracSobolevParams: beta must exceed q");
  }
  double beta;
  double q;
};

/// Volume of the unit ball in (possibly fractional) dimension theta,
/// pi^(theta/2) / Gamma(theta/2 + 1).
inline double sigma(double theta) {
  if (!(theta > 0.0)) detail::domain_fail("sigma: theta must be positive");
  return std::exp(0.5 * theta * std::log(std::numbers::pi) - log_gamma_fn(0.5 * theta + 1.0));
}

/// Surface area of the unit sphere S^(n-1) in R^n, i.e. n sigma_n.
inline double omega_sphere(Dimension n) { return n.real() * sigma(n.real()); }

/// ((n-1)/p)^q, the sharp constant of the Lorentz-Poincare inequality.
inline double poincare_const(Dimension n, LorentzIndex idx) {
  return std::pow((n.real() - 1.0) / idx.p(), idx.q());
}

/// alpha_{n,q} = (n^((n-1)/n) omega_{n-1}^(1/n))^(q/(q-1)).
inline double alpha_nq(Dimension n, double q) {
  if (!(q > 1.0)) detail::domain_fail("alpha_nq: q must be > 1");
  const double nn = n.real();
  const double base =
      std::pow(nn, (nn - 1.0) / nn) * std::pow(omega_sphere(n), 1.0 / nn);
  return std::pow(base, q / (q - 1.0));
}

/// Moser exponent mu_{alpha,theta} = theta alpha^(1/(alpha-1)) sigma_alpha^(1/(alpha-1))
/// of the weighted Moser-Trudinger inequality on the half-line.
inline double mu_exp(double alpha, double theta) {
  if (!(alpha > 1.0)) detail::domain_fail("mu_exp: alpha must be > 1");
  if (!(theta >= 1.0)) detail::domain_fail("mu_exp: theta must be >= 1");
  const double e = 1.0 / (alpha - 1.0);
  return theta * std::pow(alpha, e) * std::pow(sigma(alpha), e);
}

/// j_q = min{ j integer : j >= 1 + n(q-1)/q }.
inline int j_index(Dimension n, double q) {
  if (!(q > 1.0)) detail::domain_fail("j_index: q must be > 1");
  const double x = 1.0 + n.real() * (q - 1.0) / q;
  return static_cast<int>(std::ceil(x - 1e-9 * x));
}

/// e^t minus its Taylor polynomial of degree first_kept - 1, for t >= 0.
inline double truncated_exp(double t, int first_kept) {
  if (t < 0.0) detail::domain_fail("truncated_exp: t must be >= 0");
  if (first_kept <= 0) return std::exp(t);
  if (t < 1.0) {
    // Tail series: no cancellation.
    double term = 1.0;
    for (int j = 1; j <= first_kept; ++j) term *= t / j;
    double sum = 0.0;
    for (int j = first_kept; j < first_kept + 200; ++j) {
      sum += term;
      if (term <= std::numeric_limits<double>::epsilon() * sum) break;
      term *= t / (j + 1);
    }
    return sum;
  }
  double poly = 0.0;
  double term = 1.0;
  for (int j = 0; j < first_kept; ++j) {
    poly += term;
    term *= t / (j + 1);
  }
  return std::exp(t) - poly;
}

/// Phi_q(t) = e^t - sum_{j=0}^{j_q-2} t^j/j!.
inline double phi_q(double t, Dimension n, double q) { return truncated_exp(t, j_index(n, q) - 1); }

/// Sharp constant S(beta, q) of
///   int |w'|^q r^(beta-1) dr >= S (int |w|^(beta q/(beta-q)) r^(beta-1) dr)^((beta-q)/beta).
inline double s_frac(FracSobolevParams params) {
  const double b = params.beta;
  const double q = params.q;
  const double log_bracket = std::log((q - 1.0) / q) + log_gamma_fn(b / q) +
                             log_gamma_fn(b * (q - 1.0) / q) - log_gamma_fn(b);
  return std::exp(std::log(b) + (q - 1.0) * std::log((b - q) / (q - 1.0)) + (q / b) * log_bracket);
}

/// Upper end nq/(n-p) of the admissible l range in the Poincare-Sobolev inequality.
inline double ps_l_max(Dimension n, double p, double q) { return n.real() * q / (n.real() - p); }

/// Fractional dimension lq/(l-q) that the l > q branch of S_{n,p,q,l} feeds to s_frac.
inline double ps_frac_dimension(double q, double l) { return l * q / (l - q); }

/// Sharp constant S_{n,p,q,l} of the Lorentz Poincare-Sobolev inequality,
/// n >= 4, 2n/(n-1) <= q <= p < n, q <= l <= nq/(n-p).
inline double s_npql(Dimension n, double p, double q, double l) {
  const LorentzIndex idx(p, q);
  if (n.value() < 4) detail::domain_fail("s_npql: requires n >= 4");
  if (!idx.ps_window(n)) detail::domain_fail("s_npql: (p, q) outside 2n/(n-1) <= q <= p < n");
  const double nn = n.real();
  const double lmax = ps_l_max(n, p, q);
  if (!detail::leq(q, l) || !detail::leq(l, lmax)) {
    detail::domain_fail("s_npql: l must lie in [q, nq/(n-p)]");
  }
  const double sig = sigma(nn);
  if (std::abs(l - q) <= detail::kWindowSlack * q) {
    return (nn - p) / p * std::pow(sig, 1.0 / nn);
  }
  const double base = (nn - p) * (l - q) / (q * p);
  const double s = s_frac(FracSobolevParams(ps_frac_dimension(q, l), q));
  const double inner = std::pow(nn, 1.0 - q / l) * std::pow(sig, q / nn) *
                       std::pow(base, q + q / l - 1.0) * s;
  return std::pow(inner, 1.0 / q);
}

/// Sharp Sobolev constant S_{n,p} on R^n (Aubin-Talenti):
///   ||grad u||_p >= S_{n,p} ||u||_{np/(n-p)}, 1 < p < n.
inline double talenti_const(Dimension n, double p) {
  const double nn = n.real();
  if (!(p > 1.0) || !(p < nn)) detail::domain_fail("talenti_const: requires 1 < p < n");
  const double log_ratio = log_gamma_fn(nn / p) + log_gamma_fn(1.0 + nn - nn / p) -
                           log_gamma_fn(1.0 + nn / 2.0) - log_gamma_fn(nn);
  return std::sqrt(std::numbers::pi) * std::pow(nn, 1.0 / p) *
         std::pow((nn - p) / (p - 1.0), (p - 1.0) / p) * std::exp(log_ratio / nn);
}

}  // namespace hypls
