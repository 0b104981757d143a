#pragma once

// One operation per inequality. Each returns a VerificationReport with the two
// sides as written, a signed margin (>= 0 means the inequality holds) and a
// tolerance derived from the quadrature error estimates.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hypls/constants.hpp"
#include "hypls/families.hpp"
#include "hypls/geometry.hpp"
#include "hypls/lorentz.hpp"
#include "hypls/quadrature.hpp"
#include "hypls/rearrangement.hpp"
#include "hypls/report.hpp"

namespace hypls {

namespace detail {

inline nlohmann::json with_profile(nlohmann::json params, const MonotoneProfile& u) {
  params["profile"] = to_json(u);
  return params;
}

inline void require_window(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Poincare inequality and its sharpness

/// ||grad u||_{p,q}^q >= ((n-1)/p)^q ||u||_{p,q}^q.
inline VerificationReport verify_poincare(const MonotoneProfile& u, Dimension n, LorentzIndex idx) {
  detail::require_window(idx.poincare_window(), "verify_poincare: requires 1 < q <= p");
  const double C = poincare_const(n, idx);
  const auto grad = gradient_lorentz_norm_q(u, n, idx);
  const auto norm = lorentz_norm_q(u, idx);
  auto r = make_report("poincare",
                       detail::with_profile({{"n", n.value()}, {"p", idx.p()}, {"q", idx.q()}}, u), grad.value,
                       C * norm.value, grad.error_estimate + C * norm.error_estimate, Sense::kGreater);
  r.details["constant"] = C;
  if (norm.value > 0.0 && !r.diverged) r.details["ratio"] = grad.value / norm.value;
  return r;
}

/// sup over t >= a of surface_factor(t) / ((n-1) t) - 1; the ratio decreases in t.
inline double sharpness_epsilon(Dimension n, double a) {
  return HyperbolicSpace(n).surface_factor(a) / ((n.real() - 1.0) * a) - 1.0;
}

/// Upper bound for ||grad u_{a,R}||_{p,q}^q from the sharpness argument:
/// (n-1)^q (1+eps)^q [p/q + p^(-q)(ln R - p ln(2p) - ln a) + 2^q (p/q)(2^(q/p) - (2p)^(-q))].
inline double sharp_family_gradient_bound(Dimension n, LorentzIndex idx, double a, double R) {
  const double p = idx.p();
  const double q = idx.q();
  const double eps = sharpness_epsilon(n, a);
  const double bracket = p / q + std::pow(p, -q) * (std::log(R) - p * std::log(2.0 * p) - std::log(a)) +
                         std::pow(2.0, q) * (p / q) * (std::pow(2.0, q / p) - std::pow(2.0 * p, -q));
  return std::pow(n.real() - 1.0, q) * std::pow(1.0 + eps, q) * bracket;
}

/// ||grad u_{a,R}||^q / ||u_{a,R}||^q along ln(R/a), against ((n-1)/p)^q.
inline SweepResult sharpness_sweep_poincare(Dimension n, LorentzIndex idx, double a,
                                            const std::vector<double>& ln_ra) {
  detail::require_window(idx.poincare_window(), "sharpness_sweep_poincare: requires 1 < q <= p");
  if (!(a > 0.0)) throw std::domain_error("sharpness_sweep_poincare: a must be > 0");
  if (ln_ra.empty() || !std::is_sorted(ln_ra.begin(), ln_ra.end())) {
    throw std::domain_error("sharpness_sweep_poincare: grid must be nonempty and increasing");
  }
  SweepResult s;
  s.kind = "poincare-sharpness";
  s.target = poincare_const(n, idx);
  s.details["a"] = a;
  s.details["epsilon"] = sharpness_epsilon(n, a);
  s.details["gradient_q"] = nlohmann::json::array();
  s.details["norm_q"] = nlohmann::json::array();
  s.details["bound_ratio"] = nlohmann::json::array();
  for (double L : ln_ra) {
    if (!(L > 0.0)) throw std::domain_error("sharpness_sweep_poincare: ln(R/a) must be > 0");
    const double R = a * std::exp(L);
    const auto u = family_sharp(a, R, idx.p());
    const double g = gradient_lorentz_norm_q(u, n, idx).value;
    const double m = lorentz_norm_q(u, idx).value;
    s.abscissae.push_back(L);
    s.ratios.push_back(g / m);
    s.details["gradient_q"].push_back(g);
    s.details["norm_q"].push_back(m);
    s.details["bound_ratio"].push_back(sharp_family_gradient_bound(n, idx, a, R) / m);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Key estimate, Poincare-Sobolev, Hardy

/// ||grad u||^q - ((n-1)/p)^q ||u||^q >= n sigma_n^(q/p) int |v'|^q r^(nq/p - 1) dr.
inline VerificationReport verify_key_estimate(const MonotoneProfile& u, Dimension n, LorentzIndex idx) {
  detail::require_window(n.value() >= 3, "verify_key_estimate: requires n >= 3");
  detail::require_window(idx.key_estimate_window(n), "verify_key_estimate: requires 2n/(n-1) <= q <= p");
  const double C = poincare_const(n, idx);
  const auto grad = gradient_lorentz_norm_q(u, n, idx);
  const auto norm = lorentz_norm_q(u, idx);
  const auto vs = v_seminorm_q(u, n, idx.p(), idx.q());
  const double k = n.real() * std::pow(sigma(n.real()), idx.q() / idx.p());
  auto r = make_report("key_estimate", detail::with_profile({{"n", n.value()}, {"p", idx.p()}, {"q", idx.q()}}, u),
                       grad.value - C * norm.value, k * vs.value,
                       grad.error_estimate + C * norm.error_estimate + k * vs.error_estimate, Sense::kGreater);
  r.details["gradient_q"] = grad.value;
  r.details["norm_q"] = norm.value;
  return r;
}

/// ||grad u||^q - ((n-1)/p)^q ||u||^q >= S_{n,p,q,l}^q ||u||_{p*,l}^q, p* = np/(n-p).
inline VerificationReport verify_poincare_sobolev(const MonotoneProfile& u, Dimension n, double p, double q,
                                                  double l) {
  const double S = s_npql(n, p, q, l);  // validates the window
  const LorentzIndex idx(p, q);
  const double pstar = n.real() * p / (n.real() - p);
  const double C = poincare_const(n, idx);
  const auto grad = gradient_lorentz_norm_q(u, n, idx);
  const auto norm = lorentz_norm_q(u, idx);
  const auto target = lorentz_norm_q(u, pstar, l);
  const double Sq = std::pow(S, q);
  const double tq = target.diverged ? target.value : std::pow(target.value, q / l);
  const double terr = target.value > 0.0 ? (q / l) * tq * target.error_estimate / target.value : 0.0;
  auto r = make_report("poincare_sobolev",
                       detail::with_profile({{"n", n.value()}, {"p", p}, {"q", q}, {"l", l}}, u),
                       grad.value - C * norm.value, Sq * tq,
                       grad.error_estimate + C * norm.error_estimate + Sq * terr, Sense::kGreater);
  r.details["constant"] = S;
  r.details["p_star"] = pstar;
  return r;
}

/// int |(u*)'|^q t^(q + q/p - 1) dt >= p^(-q) ||u||_{p,q}^q.
inline VerificationReport verify_hardy_1d(const MonotoneProfile& u, Dimension n, LorentzIndex idx) {
  detail::require_window(idx.key_estimate_window(n), "verify_hardy_1d: requires 2n/(n-1) <= q <= p");
  const double p = idx.p();
  const double q = idx.q();
  const double e = q + q / p - 1.0;
  auto g = [&u, q, e](double t) {
    const double d = u.derivative(t);
    if (d == 0.0) return 0.0;
    return std::exp(q * std::log(std::abs(d)) + e * std::log(t));
  };
  const auto lhs = detail::from_quadrature(integrate_pieces(g, u.pieces(u.head_end()), margins_config()));
  const auto norm = lorentz_norm_q(u, idx);
  const double c = std::pow(p, -q);
  return make_report("hardy_1d", detail::with_profile({{"n", n.value()}, {"p", p}, {"q", q}}, u), lhs.value,
                     c * norm.value, lhs.error_estimate + c * norm.error_estimate, Sense::kGreater);
}

/// ||u**||_{p,q} <= p/(p-1) ||u||_{p,q}.
inline VerificationReport verify_maximal(const MonotoneProfile& u, LorentzIndex idx) {
  const double q = idx.q();
  const auto mx = lorentz_norm_q(maximal_function(u), idx);
  const auto nm = lorentz_norm_q(u, idx);
  const double c = idx.p() / (idx.p() - 1.0);
  const double lhs = mx.root(q);
  const double rhs = c * nm.root(q);
  // d(x^(1/q)) = x^(1/q - 1)/q dx.
  const double err = (mx.value > 0 ? lhs * mx.error_estimate / (q * mx.value) : 0.0) +
                     (nm.value > 0 ? rhs * nm.error_estimate / (q * nm.value) : 0.0);
  return make_report("maximal", detail::with_profile({{"p", idx.p()}, {"q", q}}, u), lhs, rhs, err, Sense::kLess);
}

/// (b - a)^q >= b^q + |a|^q - q a b^(q-1) for b - a >= 0, b >= 0, q >= 2.
inline VerificationReport verify_convexity_ineq(double a, double b, double q) {
  if (!(b - a >= 0.0) || !(b >= 0.0) || !(q >= 2.0)) {
    throw std::domain_error("verify_convexity_ineq: requires b - a >= 0, b >= 0, q >= 2");
  }
  const double lhs = std::pow(b - a, q);
  const double rhs = std::pow(b, q) + std::pow(std::abs(a), q) - q * a * std::pow(b, q - 1.0);
  const double scale = std::pow(b, q) + std::pow(std::abs(a), q) + std::abs(q * a * std::pow(b, q - 1.0));
  return make_report("convexity", {{"a", a}, {"b", b}, {"q", q}}, lhs, rhs, 0.0, Sense::kGreater,
                     1e-12 * std::max(scale, 1e-300));
}

// ---------------------------------------------------------------------------
// Fractional-dimension Sobolev inequality

/// A non-increasing function on the half-line with its derivative.
struct HalfLineFunction {
  std::string label;
  std::function<double(double)> w;
  std::function<double(double)> dw;
  double scale = 1.0;  // a length on which w varies, used as a quadrature breakpoint
};

inline HalfLineFunction half_line(const FracExtremal& e) {
  return {"frac_extremal", [e](double r) { return e.w(r); }, [e](double r) { return e.dw(r); }, 1.0};
}

/// w^gamma, a perturbation of w inside the admissible class.
inline HalfLineFunction powered(const HalfLineFunction& f, double gamma) {
  return {f.label + "^" + detail::g17(gamma), [f, gamma](double r) { return std::pow(f.w(r), gamma); },
          [f, gamma](double r) {
            const double v = f.w(r);
            return v > 0.0 ? gamma * std::pow(v, gamma - 1.0) * f.dw(r) : 0.0;
          },
          f.scale};
}

namespace detail {

// int_0^inf g(r) dr split at the function's scale.
inline NormValue half_line_integral(const std::function<double(double)>& g, double scale,
                                    const QuadratureConfig& cfg = constants_config()) {
  return from_quadrature(integrate_pieces(g, {0.0, scale, std::numeric_limits<double>::infinity()}, cfg));
}

// |x|^e r^k in log form, 0 when x vanishes.
inline double weighted_power(double x, double e, double r, double k) {
  if (x == 0.0 || r <= 0.0) return 0.0;
  return std::exp(e * std::log(std::abs(x)) + k * std::log(r));
}

}  // namespace detail

/// int |w'|^q r^(beta-1) dr >= S(beta, q) (int |w|^(beta q/(beta-q)) r^(beta-1) dr)^((beta-q)/beta).
inline VerificationReport verify_frac_sobolev(const HalfLineFunction& f, double beta, double q) {
  const FracSobolevParams fp(beta, q);
  const double S = s_frac(fp);
  const double e = beta * q / (beta - q);
  const auto lhs = detail::half_line_integral([&](double r) { return detail::weighted_power(f.dw(r), q, r, beta - 1); },
                                              f.scale);
  const auto J = detail::half_line_integral([&](double r) { return detail::weighted_power(f.w(r), e, r, beta - 1); },
                                            f.scale);
  const double power = (beta - q) / beta;
  const double Jp = J.diverged ? J.value : std::pow(J.value, power);
  const double rhs = S * Jp;
  const double err = lhs.error_estimate + (J.value > 0 ? rhs * power * J.error_estimate / J.value : 0.0);
  auto r = make_report("frac_sobolev", {{"beta", beta}, {"q", q}, {"w", f.label}}, lhs.value, rhs, err,
                       Sense::kGreater);
  r.details["constant"] = S;
  if (Jp > 0.0 && std::isfinite(Jp)) {
    r.details["quotient"] = lhs.value / Jp;
    r.details["quotient_rel_gap"] = lhs.value / Jp / S - 1.0;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Moser-Trudinger

/// int_0^inf Phi_q(alpha_{n,q} u*(t)^(q/(q-1))) dt; the constant head is integrated
/// in closed form. Overflow of the exponential is reported as divergence.
inline NormValue mt_functional(const MonotoneProfile& u, Dimension n, double q,
                               const QuadratureConfig& cfg = margins_config()) {
  detail::require_window(LorentzIndex(n.real(), q).mt_window(n), "mt_functional: requires 2n/(n-1) <= q <= n");
  const double alpha = alpha_nq(n, q);
  const double e = q / (q - 1.0);
  auto phi = [alpha, e, n, q](double v) { return v > 0.0 ? phi_q(alpha * std::pow(v, e), n, q) : 0.0; };
  const double h = u.head_end();
  const double head = h > 0.0 ? h * phi(u.sup()) : 0.0;
  if (!std::isfinite(head)) return NormValue::divergent();
  auto g = [&u, &phi](double t) { return phi(u.value(t)); };
  NormValue out;
  try {
    out = detail::from_quadrature(integrate_pieces(g, u.pieces(h), cfg));
  } catch (const std::domain_error&) {
    return NormValue::divergent();  // the integrand overflowed
  }
  out.value += head;
  if (!std::isfinite(out.value)) return NormValue::divergent();
  return out;
}

/// Trial profile normalized to ||grad(cu)||_{n,q}^q - lambda ||cu||_{n,q}^q = 1.
struct MtEvaluation {
  double scale = 0.0;
  double deficit = 0.0;  // ||grad u||^q - lambda ||u||^q before scaling
  NormValue functional;
  double tau = 0.0;  // ((n-1)/n)^q - lambda
};

inline double mt_threshold(Dimension n, double q) { return std::pow((n.real() - 1.0) / n.real(), q); }

/// By q-homogeneity the normalizing scale is c = deficit^(-1/q); no iteration needed.
inline MtEvaluation mt_normalize_and_evaluate(const MonotoneProfile& u, Dimension n, double q, double lambda) {
  const double thr = mt_threshold(n, q);
  if (!(lambda < thr)) throw std::domain_error("verify_mt: lambda must be below ((n-1)/n)^q");
  const LorentzIndex idx(n.real(), q);
  const auto grad = gradient_lorentz_norm_q(u, n, idx);
  const auto norm = lorentz_norm_q(u, idx);
  MtEvaluation ev;
  ev.tau = thr - lambda;
  ev.deficit = grad.value - lambda * norm.value;
  if (!(ev.deficit > 0.0) || !std::isfinite(ev.deficit)) {
    throw std::domain_error("verify_mt: trial profile cannot be normalized");
  }
  ev.scale = std::pow(ev.deficit, -1.0 / q);
  ev.functional = mt_functional(u.scaled(ev.scale), n, q);
  return ev;
}

/// C_cap = F(0) tau_0^(n/q): the envelope frozen from the lambda = 0 run.
inline double calibrate_mt_envelope(const MonotoneProfile& u, Dimension n, double q) {
  const auto ev = mt_normalize_and_evaluate(u, n, q, 0.0);
  return ev.functional.value * std::pow(ev.tau, n.real() / q);
}

/// int Phi_q(alpha_{n,q} u^(q/(q-1))) dV <= C_cap (((n-1)/n)^q - lambda)^(-n/q) for the normalized trial profile.
inline VerificationReport verify_mt(const MonotoneProfile& u, Dimension n, double q, double lambda, double c_cap) {
  const auto ev = mt_normalize_and_evaluate(u, n, q, lambda);
  const double rhs = c_cap * std::pow(ev.tau, -n.real() / q);
  auto r = make_report("mt", detail::with_profile({{"n", n.value()}, {"q", q}, {"lambda", lambda}, {"c_cap", c_cap}}, u),
                       ev.functional.value, rhs, ev.functional.error_estimate, Sense::kLess);
  r.details["functional"] = detail::json_number(ev.functional.value);
  r.details["scale"] = ev.scale;
  r.details["tau"] = ev.tau;
  return r;
}

/// Normalized functional along a lambda grid, plus the least-squares slope of
/// log F against -log(tau) (the growth exponent, at most n/q by the theorem).
inline SweepResult mt_lambda_sweep(const MonotoneProfile& u, Dimension n, double q, const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw std::domain_error("mt_lambda_sweep: empty grid");
  SweepResult s;
  s.kind = "mt-lambda";
  s.target = mt_threshold(n, q);
  std::vector<double> x, y;
  for (double lam : lambdas) {
    const auto ev = mt_normalize_and_evaluate(u, n, q, lam);
    s.abscissae.push_back(lam);
    s.ratios.push_back(ev.functional.value);
    x.push_back(-std::log(ev.tau));
    y.push_back(std::log(ev.functional.value));
  }
  double slope = 0.0;
  if (x.size() >= 2) {
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxy += (x[i] - mx) * (y[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
    }
    slope = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  s.details["growth_exponent"] = detail::json_number(slope);
  s.details["envelope_exponent"] = n.real() / q;
  return s;
}

/// Change of variables behind the tau-scaled half-line inequality, for u_tau(x) = u(tau^(-1/alpha) x):
///   int Phi_alpha(mu |u_tau|^(alpha/(alpha-1))) d lambda_n = tau^(n/alpha) int Phi_alpha(mu |u|^(...)) d lambda_n,
///   ||u_tau'||_{L^alpha_alpha} = ||u'||_{L^alpha_alpha},  ||u_tau||^alpha_{L^alpha_alpha} = tau ||u||^alpha_{L^alpha_alpha}.
/// The report carries the first identity; the other two are in the details.
inline VerificationReport verify_abreu_scaling(const HalfLineFunction& f, double alpha, Dimension n, double tau) {
  if (!(alpha >= 2.0) || !detail::leq(alpha, n.real())) throw std::domain_error("verify_abreu_scaling: requires 2 <= alpha <= n");
  if (!(tau > 0.0)) throw std::domain_error("verify_abreu_scaling: tau must be > 0");
  const double mu = mu_exp(alpha, n.real());
  const double e = alpha / (alpha - 1.0);
  const double nn = n.real();
  const double k = std::pow(tau, -1.0 / alpha);
  auto w_tau = [&](double r) { return f.w(k * r); };
  auto dw_tau = [&](double r) { return k * f.dw(k * r); };
  auto functional = [&](const std::function<double(double)>& w, double scale) {
    return detail::half_line_integral([&](double r) {
      const double v = w(r);
      const double ph = v > 0.0 ? phi_q(mu * std::pow(v, e), n, alpha) : 0.0;
      return ph > 0.0 ? detail::weighted_power(ph, 1.0, r, nn - 1.0) * nn * sigma(nn) : 0.0;
    }, scale);
  };
  auto la_norm = [&](const std::function<double(double)>& g, double scale) {
    return detail::half_line_integral([&](double r) {
      return detail::weighted_power(g(r), alpha, r, alpha - 1.0) * alpha * sigma(alpha);
    }, scale);
  };
  const double s_tau = f.scale / k;
  const auto F = functional(f.w, f.scale);
  const auto F_tau = functional(w_tau, s_tau);
  const auto G = la_norm(f.dw, f.scale);
  const auto G_tau = la_norm(dw_tau, s_tau);
  const auto N = la_norm(f.w, f.scale);
  const auto N_tau = la_norm(w_tau, s_tau);
  const double rhs = std::pow(tau, nn / alpha) * F.value;
  auto r = make_report("abreu_scaling", {{"alpha", alpha}, {"n", n.value()}, {"tau", tau}, {"w", f.label}},
                       F_tau.value, rhs, F_tau.error_estimate + std::pow(tau, nn / alpha) * F.error_estimate,
                       Sense::kEqual, 1e-8 * std::abs(rhs));
  r.details["functional_rel_dev"] = F_tau.value / rhs - 1.0;
  r.details["gradient_rel_dev"] = G_tau.value / G.value - 1.0;
  r.details["norm_rel_dev"] = N_tau.value / (tau * N.value) - 1.0;
  return r;
}

/// u(r)^alpha <= int u^alpha d lambda_alpha / (sigma_alpha r^alpha) at every radius of the grid;
/// the report is taken at the radius with the smallest margin.
inline VerificationReport verify_pointwise_headbound(const HalfLineFunction& f, double alpha,
                                                     const std::vector<double>& radii) {
  if (!(alpha > 1.0)) throw std::domain_error("verify_pointwise_headbound: alpha must be > 1");
  const auto total = detail::half_line_integral(
      [&](double r) { return detail::weighted_power(f.w(r), alpha, r, alpha - 1.0) * alpha * sigma(alpha); },
      f.scale);
  double worst = std::numeric_limits<double>::infinity();
  double wl = 0.0, wr = 0.0, wrad = 0.0;
  for (double r : radii) {
    if (!(r > 0.0)) continue;
    const double lhs = std::pow(f.w(r), alpha);
    const double rhs = total.value / (sigma(alpha) * std::pow(r, alpha));
    if (rhs - lhs < worst) {
      worst = rhs - lhs;
      wl = lhs;
      wr = rhs;
      wrad = r;
    }
  }
  auto r = make_report("pointwise_headbound", {{"alpha", alpha}, {"w", f.label}}, wl, wr, 0.0, Sense::kLess, 1e-10);
  r.details["radius"] = wrad;
  r.details["total"] = total.value;
  return r;
}

// ---------------------------------------------------------------------------
// Rearrangement

/// ||grad u#||_{p,q} <= ||grad u||_{p,q} for a radial piecewise-linear u.
inline VerificationReport verify_radial_polya_szego(const RadialFunction& fn, Dimension n, LorentzIndex idx) {
  const double q = idx.q();
  const auto star = gradient_lorentz_norm_q(rearrange_radial(fn, n), n, idx);
  const double lhs = star.root(q);
  const double rhs = std::pow(radial_gradient_norm_q(fn, n, idx.p(), q), 1.0 / q);
  const double err = star.value > 0 ? lhs * star.error_estimate / (q * star.value) : 0.0;
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& [r, v] : fn.nodes()) nodes.push_back({r, v});
  return make_report("polya_szego_radial", {{"n", n.value()}, {"p", idx.p()}, {"q", q}, {"nodes", nodes}}, lhs, rhs,
                     err, Sense::kLess, std::max(1e-6, 10.0 * err));
}

/// sum f_k^q W_k <= sum (f*)_k^q W_k with W_k the cell weights of t^(q/p - 1), q < p.
inline VerificationReport verify_hardy_littlewood(const SampledFunction& f, double p, double q) {
  const double lhs = weighted_power_sum(f, p, q);
  const double rhs = weighted_power_sum(decreasing_rearrangement(f), p, q);
  return make_report("hardy_littlewood", {{"p", p}, {"q", q}, {"values", f.values}, {"h", f.cell_measure}}, lhs, rhs,
                     0.0, Sense::kLess, 1e-13 * rhs);
}

/// The rearranged sum equals the maximum over all orderings (length <= 8).
inline VerificationReport verify_hardy_littlewood_bruteforce(const SampledFunction& f, double p, double q) {
  if (f.values.size() > 8) throw std::domain_error("verify_hardy_littlewood_bruteforce: length must be <= 8");
  std::vector<double> perm = f.values;
  std::sort(perm.begin(), perm.end());
  double best = 0.0;
  do {
    best = std::max(best, weighted_power_sum(SampledFunction(perm, f.cell_measure), p, q));
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double sorted = weighted_power_sum(decreasing_rearrangement(f), p, q);
  return make_report("hardy_littlewood_bruteforce", {{"p", p}, {"q", q}, {"values", f.values}, {"h", f.cell_measure}},
                     best, sorted, 0.0, Sense::kEqual, 1e-13 * sorted);
}

// ---------------------------------------------------------------------------
// Geometry

/// surface_factor(t) > (n-1) t on a log grid; lhs is the smallest ratio S(t)/t.
inline VerificationReport verify_surface_lower_bound(Dimension n, int m = 1000, double t_lo = 1e-6, double t_hi = 1e8) {
  const HyperbolicSpace h(n);
  double worst = std::numeric_limits<double>::infinity();
  int strict = 0;
  for (double t : log_grid(t_lo, t_hi, m)) {
    const double ratio = h.surface_factor(t) / t;
    worst = std::min(worst, ratio);
    strict += ratio > n.real() - 1.0;
  }
  auto r = make_report("surface_lower_bound", {{"n", n.value()}, {"points", m}, {"t_min", t_lo}, {"t_max", t_hi}},
                       worst, n.real() - 1.0, 0.0, Sense::kGreater, 0.0);
  r.details["strict_points"] = strict;
  return r;
}

/// Relative gap of the comparison lemma for the surface factor on a log grid.
inline VerificationReport verify_lemma21_grid(Dimension n, double q, int m = 60) {
  const HyperbolicSpace h(n);
  double worst = std::numeric_limits<double>::infinity();
  double at = 0.0;
  for (double t : log_grid(1e-4, 1e4, m)) {
    const double rel = h.lemma21_gap(q, t) / h.lemma21_scale(q, t);
    if (rel < worst) {
      worst = rel;
      at = t;
    }
  }
  auto r = make_report("lemma21", {{"n", n.value()}, {"q", q}, {"points", m}}, worst, 0.0, 0.0, Sense::kGreater, 1e-12);
  r.details["t_at_min"] = at;
  return r;
}

}  // namespace hypls
