#pragma once

// Named suites of verification reports. Each suite is a list of independent
// tasks; tasks may run on several threads, results keep the declared order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hypls/verifiers.hpp"

namespace hypls {

/// A parameter outside the admissible window or an unknown suite: a usage error,
/// as opposed to a report that fails.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Overrides for the per-suite defaults.
struct BatteryConfig {
  std::optional<int> n;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> l;
  std::optional<double> lambda;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: INEQ_VERIFY_THREADS or the hardware count
  double rel_tol = 0.0;  // extra tolerance relative to max(|lhs|, |rhs|), off by default
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"poincare", "key_estimate", "ps",       "frac_sobolev", "mt",
                                                 "rearrangement", "hardy", "geometry", "all"};
  return names;
}

/// Twenty profiles covering compact and infinite support, heads, kinks and slow tails.
inline std::vector<MonotoneProfile> standard_battery(Dimension n, double p, double q) {
  const double nn = n.real();
  std::vector<MonotoneProfile> b = {
      family_sharp(1.0, std::exp(5.0), p),
      family_sharp(1.0, std::exp(10.0), p),
      family_sharp(0.1, 0.1 * std::exp(8.0), p),
      family_sharp(10.0, 10.0 * std::exp(6.0), p),
      family_exponential(1.0),
      family_exponential(0.2),
      family_power(1.0 / p + 0.5, 1.0),
      family_power(1.0 / p + 1.5, 2.0),
      family_geodesic_gaussian(n, 0.5),
      family_geodesic_gaussian(n, 1.5),
      family_frac_pullback(n, q + 2.0 * nn * (q - 1.0) / p, q, 1.0),
      family_frac_pullback(n, q + 4.0 * nn * (q - 1.0) / p, q, 0.5),
      family_moser_log(0.5, 50.0),
      family_moser_log(0.05, 5.0),
      family_v_linear(n, 0.8),
      family_v_linear(n, 2.0),
      family_piecewise_linear({{0.5, 1.0}, {2.0, 0.4}, {6.0, 0.0}}),
      family_piecewise_linear({{0.0, 2.0}, {1.0, 1.5}, {3.0, 1.2}, {10.0, 0.3}, {20.0, 0.0}}),
      family_exponential(0.5).scaled(3.0),
      family_sharp(1.0, std::exp(6.0), p).scaled(0.25),
  };
  return b;
}

/// Two radial bumps, phi(0) and the peaks random; n is not involved.
inline RadialFunction random_two_bump(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double r1 = 0.2 + 0.8 * U(rng);
  const double r2 = r1 + 0.2 + 0.8 * U(rng);
  const double r3 = r2 + 0.2 + 0.8 * U(rng);
  const double r4 = r3 + 0.2 + 1.5 * U(rng);
  const double h1 = 0.5 + U(rng), h2 = 0.5 + U(rng);
  const double valley = std::min(h1, h2) * U(rng);
  return RadialFunction({{0.0, h1 * U(rng)}, {r1, h1}, {r2, valley}, {r3, h2}, {r4, 0.0}});
}

/// A non-increasing half-line function with finite L^alpha_alpha norm.
inline HalfLineFunction random_half_line(std::mt19937_64& rng, int index) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double c = 0.2 + 2.0 * U(rng);
  const double s = 0.1 + 3.0 * U(rng);
  const std::string tag = std::to_string(index);
  switch (index % 3) {
    case 0: {
      const double k = 0.3 + 3.0 * U(rng);
      return {"exp_" + tag, [=](double r) { return c * std::exp(-k * r / s); },
              [=](double r) { return -c * k / s * std::exp(-k * r / s); }, s};
    }
    case 1: {
      const double g = 0.6 + 2.0 * U(rng);
      return {"algebraic_" + tag, [=](double r) { return c * std::pow(1.0 + (r / s) * (r / s), -g); },
              [=](double r) {
                const double x = r / s;
                return -c * g * 2.0 * x / s * std::pow(1.0 + x * x, -g - 1.0);
              },
              s};
    }
    default: {
      // Constant head on (0, s), linear drop to 0 at 2s.
      return {"head_" + tag, [=](double r) { return r <= s ? c : std::max(c * (2.0 - r / s), 0.0); },
              [=](double r) { return r > s && r < 2.0 * s ? -c / s : 0.0; }, s};
    }
  }
}

namespace detail {

using Task = std::function<std::vector<VerificationReport>()>;

struct NamedTask {
  std::string label;
  nlohmann::json params;
  Task run;
};

inline unsigned worker_count(unsigned requested, std::size_t tasks) {
  unsigned n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("INEQ_VERIFY_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && v > 0) n = static_cast<unsigned>(v);
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
}

// An exception inside a task is a failing report that carries the error.
inline std::vector<VerificationReport> run_guarded(const NamedTask& t) {
  try {
    return t.run();
  } catch (const std::exception& e) {
    auto r = make_report(t.label, t.params, std::nan(""), std::nan(""), 0.0, Sense::kGreater);
    r.details["error"] = e.what();
    return {r};
  }
}

inline std::vector<VerificationReport> run_tasks(const std::vector<NamedTask>& tasks, unsigned threads) {
  std::vector<std::vector<VerificationReport>> out(tasks.size());
  const unsigned workers = worker_count(threads, tasks.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) out[i] = run_guarded(tasks[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) out[i] = run_guarded(tasks[i]);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<VerificationReport> flat;
  for (auto& v : out) {
    for (auto& r : v) flat.push_back(std::move(r));
  }
  return flat;
}

inline NamedTask one(std::string label, nlohmann::json params, std::function<VerificationReport()> f) {
  return {std::move(label), std::move(params), [f = std::move(f)] { return std::vector{f()}; }};
}

struct SuiteParams {
  Dimension n;
  double p;
  double q;
};

inline SuiteParams resolve(const BatteryConfig& c, int n0, double p0, double q0) {
  try {
    return {Dimension(c.n.value_or(n0)), c.p.value_or(p0), c.q.value_or(q0)};
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
}

inline LorentzIndex checked_index(double p, double q) {
  try {
    return LorentzIndex(p, q);
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
}

inline void config_require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

inline std::vector<NamedTask> profile_tasks(const std::string& label, const SuiteParams& s,
                                            std::function<VerificationReport(const MonotoneProfile&)> f) {
  std::vector<NamedTask> tasks;
  for (const auto& u : standard_battery(s.n, s.p, s.q)) {
    tasks.push_back(one(label, with_profile({{"n", s.n.value()}, {"p", s.p}, {"q", s.q}}, u), [u, f] { return f(u); }));
  }
  return tasks;
}

inline void append(std::vector<NamedTask>& to, std::vector<NamedTask> from) {
  for (auto& t : from) to.push_back(std::move(t));
}

inline std::vector<NamedTask> poincare_tasks(const BatteryConfig& c) {
  const auto s = resolve(c, 4, 4.0, 3.0);
  const auto idx = checked_index(s.p, s.q);
  config_require(idx.poincare_window(), "poincare: requires 1 < q <= p");
  return profile_tasks("poincare", s, [s, idx](const MonotoneProfile& u) { return verify_poincare(u, s.n, idx); });
}

inline std::vector<NamedTask> key_estimate_tasks(const BatteryConfig& c) {
  const auto s = resolve(c, 4, 4.0, 3.0);
  const auto idx = checked_index(s.p, s.q);
  config_require(s.n.value() >= 3 && idx.key_estimate_window(s.n), "key_estimate: requires n >= 3 and 2n/(n-1) <= q <= p");
  auto tasks = profile_tasks("key_estimate", s,
                             [s, idx](const MonotoneProfile& u) { return verify_key_estimate(u, s.n, idx); });
  const std::uint64_t seed = c.seed;
  tasks.push_back({"convexity", {{"seed", seed}}, [seed] {
                     std::mt19937_64 rng(seed);
                     std::uniform_real_distribution<double> A(-5.0, 5.0), B(0.0, 5.0), Q(2.0, 6.0);
                     std::vector<VerificationReport> out;
                     VerificationReport worst;
                     bool have = false;
                     int count = 0;
                     while (count < 10000) {
                       const double a = A(rng), b = B(rng), q = Q(rng);
                       if (b - a < 0.0) continue;
                       ++count;
                       auto r = verify_convexity_ineq(a, b, q);
                       if (!have || r.margin / std::max(r.tolerance, 1e-300) < worst.margin / std::max(worst.tolerance, 1e-300)) {
                         worst = r;
                         have = true;
                       }
                     }
                     worst.details["samples"] = count;
                     worst.details["selection"] = "smallest margin relative to tolerance";
                     out.push_back(worst);
                     return out;
                   }});
  return tasks;
}

inline std::vector<NamedTask> ps_tasks(const BatteryConfig& c) {
  const auto s = resolve(c, 4, 3.5, 3.0);
  const auto idx = checked_index(s.p, s.q);
  config_require(s.n.value() >= 4 && idx.ps_window(s.n), "ps: requires n >= 4 and the Poincare-Sobolev window");
  const double lmax = ps_l_max(s.n, s.p, s.q);
  std::vector<double> ls = {s.q, 0.5 * (s.q + lmax), lmax};
  if (c.l) {
    config_require(detail::leq(s.q, *c.l) && detail::leq(*c.l, lmax), "ps: requires q <= l <= nq/(n-p)");
    ls = {*c.l};
  }
  std::vector<NamedTask> tasks;
  for (double l : ls) {
    append(tasks, profile_tasks("poincare_sobolev", s, [s, l](const MonotoneProfile& u) {
             return verify_poincare_sobolev(u, s.n, s.p, s.q, l);
           }));
  }
  return tasks;
}

inline std::vector<NamedTask> frac_tasks(const BatteryConfig& c) {
  std::vector<std::pair<double, double>> cases = {{4.0, 2.0}, {6.0, 3.0}, {10.0, 2.5}};
  if (c.q && c.l) cases = {{*c.l, *c.q}};  // beta passed as l
  std::vector<NamedTask> tasks;
  for (auto [beta, q] : cases) {
    try {
      (void)FracSobolevParams(beta, q);
    } catch (const std::domain_error& e) {
      throw ConfigError(e.what());
    }
    tasks.push_back({"frac_sobolev", {{"beta", beta}, {"q", q}}, [beta, q] {
                       const auto w = half_line(family_frac_extremal(beta, q));
                       std::vector<VerificationReport> out = {verify_frac_sobolev(w, beta, q)};
                       for (double g : {0.9, 1.05, 1.3}) out.push_back(verify_frac_sobolev(powered(w, g), beta, q));
                       return out;
                     }});
  }
  return tasks;
}

inline std::vector<NamedTask> mt_tasks(const BatteryConfig& c) {
  const auto s = resolve(c, 4, 4.0, 3.0);
  const Dimension n = s.n;
  const double q = s.q;
  config_require(checked_index(n.real(), q).mt_window(n), "mt: requires 2n/(n-1) <= q <= n");
  const double thr = mt_threshold(n, q);
  std::vector<double> lams = {0.0, 0.2, 0.3};
  lams.erase(std::remove_if(lams.begin(), lams.end(), [thr](double x) { return x >= thr; }), lams.end());
  if (c.lambda) {
    config_require(*c.lambda < thr, "mt: lambda must be below ((n-1)/n)^q");
    lams = {*c.lambda};
  }
  std::vector<NamedTask> tasks;
  for (auto [a, T] : {std::pair{0.5, 50.0}, {0.05, 5.0}}) {
    tasks.push_back({"mt", {{"n", n.value()}, {"q", q}, {"a", a}, {"T", T}}, [=] {
                       const auto u = family_mt(n, q, a, T);
                       const double cap = calibrate_mt_envelope(u, n, q);
                       std::vector<VerificationReport> out;
                       for (double lam : lams) {
                         auto r = verify_mt(u, n, q, lam, cap);
                         r.details["c_cap_source"] = "calibrated at lambda = 0";
                         out.push_back(r);
                       }
                       if (lams.size() >= 2) {
                         const auto sw = mt_lambda_sweep(u, n, q, lams);
                         double step = std::numeric_limits<double>::infinity();
                         for (std::size_t i = 1; i < sw.ratios.size(); ++i) step = std::min(step, sw.ratios[i] - sw.ratios[i - 1]);
                         const nlohmann::json pr = with_profile({{"n", n.value()}, {"q", q}, {"lambdas", lams}}, u);
                         auto mono = make_report("mt_monotone", pr, step, 0.0, 0.0, Sense::kGreater);
                         mono.details["functionals"] = sw.ratios;
                         out.push_back(mono);
                         const double slope = sw.details["growth_exponent"].get<double>();
                         out.push_back(make_report("mt_growth_upper", pr, slope, 1.5 * n.real() / q, 0.0, Sense::kLess));
                         out.push_back(make_report("mt_growth_lower", pr, slope, 0.0, 0.0, Sense::kGreater));
                       }
                       return out;
                     }});
  }
  // Scaling identities and the pointwise bound need alpha in [2, n].
  std::vector<double> alphas;
  for (double al : {2.0, q, n.real()}) {
    if (al >= 2.0 && detail::leq(al, n.real()) && std::find(alphas.begin(), alphas.end(), al) == alphas.end()) {
      alphas.push_back(al);
    }
  }
  for (double al : alphas) {
    tasks.push_back({"abreu_scaling", {{"alpha", al}, {"n", n.value()}}, [=] {
                       const HalfLineFunction w{"gaussian", [](double r) { return std::exp(-r * r); },
                                                [](double r) { return -2.0 * r * std::exp(-r * r); }, 1.0};
                       std::vector<VerificationReport> out;
                       for (double tau : {1.0, 2.0, 10.0}) out.push_back(verify_abreu_scaling(w, al, n, tau));
                       return out;
                     }});
  }
  const std::uint64_t seed = c.seed;
  tasks.push_back({"pointwise_headbound", {{"seed", seed}}, [=] {
                     std::mt19937_64 rng(seed + 17);
                     std::vector<VerificationReport> out;
                     const auto radii = log_grid(1e-2, 1e2, 20);
                     for (int i = 0; i < 50; ++i) {
                       const double al = alphas[static_cast<std::size_t>(i) % alphas.size()];
                       out.push_back(verify_pointwise_headbound(random_half_line(rng, i), al, radii));
                     }
                     return out;
                   }});
  return tasks;
}

inline std::vector<NamedTask> rearrangement_tasks(const BatteryConfig& c) {
  const double p = c.p.value_or(4.0);
  const double q = c.q.value_or(3.0);
  const auto idx = checked_index(p, q);
  config_require(q <= p, "rearrangement: requires q <= p");
  const std::uint64_t seed = c.seed;
  std::vector<NamedTask> tasks;
  tasks.push_back({"hardy_littlewood", {{"p", p}, {"q", q}, {"seed", seed}}, [=] {
                     std::mt19937_64 rng(seed);
                     std::uniform_real_distribution<double> U(0.0, 3.0);
                     std::uniform_int_distribution<int> len(1, 8);
                     std::vector<VerificationReport> out;
                     for (int i = 0; i < 200; ++i) {
                       std::vector<double> v(static_cast<std::size_t>(len(rng)));
                       for (double& x : v) x = U(rng);
                       const SampledFunction f(v, 0.25 + U(rng));
                       out.push_back(verify_hardy_littlewood(f, p, q));
                       out.push_back(verify_hardy_littlewood_bruteforce(f, p, q));
                     }
                     return out;
                   }});
  std::mt19937_64 rng(seed + 1);
  for (int i = 0; i < 50; ++i) {
    const auto fn = random_two_bump(rng);
    const Dimension n(2 + i % 3);
    tasks.push_back(one("polya_szego_radial", {{"n", n.value()}, {"instance", i}},
                        [fn, n, idx] { return verify_radial_polya_szego(fn, n, idx); }));
  }
  return tasks;
}

inline std::vector<NamedTask> hardy_tasks(const BatteryConfig& c) {
  const auto s = resolve(c, 4, 4.0, 3.0);
  const auto idx = checked_index(s.p, s.q);
  config_require(idx.key_estimate_window(s.n), "hardy: requires 2n/(n-1) <= q <= p");
  auto tasks = profile_tasks("hardy_1d", s, [s, idx](const MonotoneProfile& u) { return verify_hardy_1d(u, s.n, idx); });
  append(tasks, profile_tasks("maximal", s, [idx](const MonotoneProfile& u) { return verify_maximal(u, idx); }));
  return tasks;
}

inline std::vector<NamedTask> geometry_tasks(const BatteryConfig& c) {
  std::vector<int> dims = {2, 3, 4, 5, 6};
  if (c.n) {
    config_require(*c.n >= 2, "geometry: requires n >= 2");
    dims = {*c.n};
  }
  std::vector<NamedTask> tasks;
  for (int nv : dims) {
    const Dimension n(nv);
    tasks.push_back(one("surface_lower_bound", {{"n", nv}}, [n] { return verify_surface_lower_bound(n); }));
    const double q0 = n.critical_q();
    for (double q : {q0, q0 + 0.5, q0 + 2.0, 8.0}) {
      tasks.push_back(one("lemma21", {{"n", nv}, {"q", q}}, [n, q] { return verify_lemma21_grid(n, q); }));
    }
  }
  return tasks;
}

// A statement that is false by construction: the rearranged weighted sum is
// claimed to be at most the unsorted one. Exercises the failure path end to end.
inline std::vector<NamedTask> negative_control_tasks(const BatteryConfig&) {
  return {one("hardy_littlewood_reversed", {{"p", 4.0}, {"q", 3.0}}, [] {
    const SampledFunction f({0.5, 2.0, 1.0}, 1.0);
    const double sorted = weighted_power_sum(decreasing_rearrangement(f), 4.0, 3.0);
    const double given = weighted_power_sum(f, 4.0, 3.0);
    return make_report("hardy_littlewood_reversed", {{"p", 4.0}, {"q", 3.0}, {"values", f.values}}, sorted, given, 0.0,
                       Sense::kLess);
  })};
}

inline std::vector<NamedTask> suite_tasks(const std::string& suite, const BatteryConfig& c) {
  if (suite == "negative_control") return negative_control_tasks(c);
  if (suite == "poincare") return poincare_tasks(c);
  if (suite == "key_estimate") return key_estimate_tasks(c);
  if (suite == "ps") return ps_tasks(c);
  if (suite == "frac_sobolev") return frac_tasks(c);
  if (suite == "mt") return mt_tasks(c);
  if (suite == "rearrangement") return rearrangement_tasks(c);
  if (suite == "hardy") return hardy_tasks(c);
  if (suite == "geometry") return geometry_tasks(c);
  if (suite == "all") {
    std::vector<NamedTask> all;
    for (const auto& name : suite_names()) {
      if (name != "all") append(all, suite_tasks(name, c));
    }
    return all;
  }
  throw ConfigError("unknown suite '" + suite + "'");
}

}  // namespace detail

/// Runs a named suite ("negative_control" is an always-failing self-test, not part of "all"). Parameters in `c` override the suite defaults; for "all"
/// they apply to every suite that takes them. Throws ConfigError on an unknown
/// suite or parameters outside a suite's window.
inline std::vector<VerificationReport> run_battery(const std::string& suite, const BatteryConfig& c = {}) {
  if (!(c.rel_tol >= 0.0)) throw ConfigError("rel_tol must be >= 0");
  auto reports = detail::run_tasks(detail::suite_tasks(suite, c), c.threads);
  if (c.rel_tol > 0.0) {
    for (auto& r : reports) {
      if (r.diverged) continue;
      r.tolerance = std::max(r.tolerance, c.rel_tol * std::max(std::abs(r.lhs), std::abs(r.rhs)));
      r.pass = r.margin >= -r.tolerance;
    }
  }
  return reports;
}

}  // namespace hypls
