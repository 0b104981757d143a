// Acceptance run: one PASS/FAIL line per criterion with its measured runtime
// against the runtime limit. Exit code 0 iff every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hypls/hypls.hpp"

using namespace hypls;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<Outcome()> run;
};

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome constants_anchors() {
  Outcome o;
  const bool exact = poincare_const(Dimension(2), LorentzIndex(2.0, 2.0)) == 0.25;
  double worst_alpha = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const Dimension d(n);
    worst_alpha = std::max(worst_alpha, rel_err(alpha_nq(d, n), n * std::pow(omega_sphere(d), 1.0 / (n - 1.0))));
  }
  double worst_mu = 0.0;
  for (int n = 3; n <= 8; ++n) {
    const Dimension d(n);
    for (int k = 0; k <= 6; ++k) {
      const double q = d.critical_q() + k * (n - d.critical_q()) / 6.0;
      const double via_mu = mu_exp(q, n) * std::pow(n * std::pow(sigma(n), q / n) / (q * sigma(q)), 1.0 / (q - 1.0));
      worst_mu = std::max(worst_mu, rel_err(alpha_nq(d, q), via_mu));
    }
  }
  o.pass = exact && worst_alpha <= 1e-12 && worst_mu <= 1e-10;
  o.detail = std::string("poincare_const(2,2,2)==0.25 ") + (exact ? "exact" : "NOT exact") +
             "; alpha_nq(n,n) max rel err " + fmt("%.2e", worst_alpha) + " (<=1e-12); mu identity max rel err " +
             fmt("%.2e", worst_mu) + " (<=1e-10)";
  return o;
}

Outcome frac_sharpness() {
  Outcome o;
  std::ostringstream d;
  for (auto [beta, q] : {std::pair{4.0, 2.0}, {6.0, 3.0}, {10.0, 2.5}}) {
    const auto r = verify_frac_sobolev(half_line(family_frac_extremal(beta, q)), beta, q);
    const double gap = std::abs(r.details["quotient_rel_gap"].get<double>());
    o.pass = o.pass && gap <= 1e-4;
    d << "(" << beta << "," << q << "): rel gap " << fmt("%.2e", gap) << "  ";
  }
  o.detail = d.str() + "(<=1e-4)";
  return o;
}

Outcome poincare_sweep() {
  Outcome o;
  const Dimension n(4);
  const LorentzIndex idx(4.0, 3.0);
  // a large enough that the surface-factor slack epsilon is about 1%.
  const double a = 1e4;
  std::vector<double> grid;
  for (int i = 0; i < 8; ++i) grid.push_back(5.0 + 5.0 * i);
  const auto s = sharpness_sweep_poincare(n, idx, a, grid);
  bool above = true, decreasing = true;
  for (std::size_t i = 0; i < s.ratios.size(); ++i) {
    above = above && s.ratios[i] >= s.target;
    if (i > 0) decreasing = decreasing && s.ratios[i] < s.ratios[i - 1];
  }
  const double at40 = s.ratios.back() / s.target;
  o.pass = above && decreasing && at40 <= 1.15;
  o.detail = std::string("ratio >= 27/64: ") + (above ? "yes" : "no") + "; decreasing: " + (decreasing ? "yes" : "no") +
             "; ratio/target at ln(R/a)=40: " + fmt("%.4f", at40) + " (<=1.15); epsilon(a=1e4) " +
             fmt("%.3e", s.details["epsilon"].get<double>()) + "; upper-bound/target at 40: " +
             fmt("%.2f", s.details["bound_ratio"].back().get<double>() / s.target);
  return o;
}

Outcome sharp_norm_closed_form() {
  Outcome o;
  double worst = 0.0;
  const std::vector<std::array<double, 4>> triples = {
      {1.0, 40.0, 4.0, 3.0}, {0.1, 12.0, 3.0, 2.0}, {5.0, 7.0, 2.5, 2.5}, {1.0, 2.0, 4.0, 1.5}, {100.0, 25.0, 6.0, 4.0}};
  for (const auto& [a, L, p, q] : triples) {
    const auto u = family_sharp(a, a * std::exp(L), p);
    const double tail = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [p = p, q = q](double s) { return std::pow(2.0 - s, q) * std::pow(s, q / p - 1.0); }, 1.0, 2.0, 15, 1e-14);
    const double want = p / q + L + tail;
    worst = std::max(worst, rel_err(lorentz_norm_q(u, LorentzIndex(p, q)).value, want));
  }
  o.pass = worst <= 1e-8;
  o.detail = "5 (a, ln(R/a), p, q) triples, max rel err " + fmt("%.2e", worst) + " (<=1e-8)";
  return o;
}

Outcome geometry_grid() {
  Outcome o;
  bool strict = true, lemma = true, limit = true;
  std::ostringstream lim;
  for (int nv = 2; nv <= 6; ++nv) {
    const Dimension n(nv);
    const auto s = verify_surface_lower_bound(n);
    strict = strict && s.details["strict_points"].get<int>() == 1000;
    const double q0 = n.critical_q();
    for (double q : {q0, q0 + 0.5, q0 + 2.0, 8.0}) lemma = lemma && verify_lemma21_grid(n, q).margin >= -1e-12;
    const double ratio = HyperbolicSpace(n).surface_factor(1e8) / 1e8;
    const double dev = std::abs(ratio - (nv - 1.0));
    limit = limit && dev <= 1e-3;
    lim << " n=" << nv << ":" << fmt("%.2e", dev);
  }
  o.pass = strict && lemma && limit;
  o.detail = std::string("estF strict on 1000 pts x n=2..6: ") + (strict ? "yes" : "no") +
             "; lemma21 gap >= -1e-12 rel: " + (lemma ? "yes" : "no") + "; |F(1e8)/1e8 - (n-1)| (<=1e-3):" + lim.str();
  return o;
}

Outcome inequality_batteries() {
  Outcome o;
  std::size_t total = 0, failed = 0, not_strict = 0;
  BatteryConfig c;
  for (const char* suite : {"poincare", "key_estimate", "ps", "hardy"}) {
    for (const auto& r : run_battery(suite, c)) {
      ++total;
      failed += !r.pass;
      if (r.name == "poincare" && !(r.margin > 1e-10 * r.rhs)) ++not_strict;
    }
  }
  o.pass = failed == 0 && not_strict == 0;
  o.detail = std::to_string(total) + " reports over the 20-profile battery (poincare, key estimate, Poincare-Sobolev x3 l, "
             "Hardy 1-d, maximal); failed " + std::to_string(failed) + "; Poincare margins not strict: " +
             std::to_string(not_strict);
  return o;
}

Outcome rearrangement_oracles() {
  Outcome o;
  std::size_t hl = 0, ps = 0, failed = 0;
  for (const auto& r : run_battery("rearrangement")) {
    hl += r.name.rfind("hardy_littlewood", 0) == 0;
    ps += r.name == "polya_szego_radial";
    failed += !r.pass;
  }
  o.pass = failed == 0 && hl == 400 && ps == 50;
  o.detail = "Hardy-Littlewood 200 instances (inequality + brute force), Polya-Szego 50 two-bump functions n=2..4; failed " +
             std::to_string(failed);
  return o;
}

Outcome moser_trudinger() {
  Outcome o;
  const Dimension n(4);
  const double q = 3.0;
  const std::vector<double> lams = {0.0, 0.2, 0.3};
  std::ostringstream d;
  bool finite = true, monotone = true, slope_ok = true;
  for (auto [a, T] : {std::pair{0.5, 50.0}, {0.05, 5.0}}) {
    const auto s = mt_lambda_sweep(family_mt(n, q, a, T), n, q, lams);
    for (std::size_t i = 0; i < s.ratios.size(); ++i) {
      finite = finite && std::isfinite(s.ratios[i]);
      if (i > 0) monotone = monotone && s.ratios[i] >= s.ratios[i - 1];
    }
    const double slope = s.details["growth_exponent"].get<double>();
    slope_ok = slope_ok && slope >= 0.0 && slope <= 1.5 * n.real() / q;
    d << "shape(" << a << "," << T << ") slope " << fmt("%.4f", slope) << "; ";
  }
  double worst = 0.0;
  const HalfLineFunction w{"gaussian", [](double r) { return std::exp(-r * r); },
                           [](double r) { return -2.0 * r * std::exp(-r * r); }, 1.0};
  for (double alpha : {2.0, 3.0, 4.0}) {
    for (double tau : {1.0, 2.0, 10.0}) {
      const auto r = verify_abreu_scaling(w, alpha, n, tau);
      for (const char* k : {"functional_rel_dev", "gradient_rel_dev", "norm_rel_dev"}) {
        worst = std::max(worst, std::abs(r.details[k].get<double>()));
      }
    }
  }
  o.pass = finite && monotone && slope_ok && worst <= 1e-8;
  o.detail = std::string("finite: ") + (finite ? "yes" : "no") + "; non-decreasing in lambda: " +
             (monotone ? "yes" : "no") + "; " + d.str() + "range [0, " + fmt("%.1f", 1.5 * n.real() / q) +
             "]; scaling identities max rel dev " + fmt("%.2e", worst) + " (<=1e-8)";
  return o;
}

Outcome cli_contract(double& all_runtime) {
  Outcome o;
  auto run = [](std::vector<std::string> args, std::string* out = nullptr) {
    args.insert(args.begin(), "ineq_verify");
    std::ostringstream os, es;
    const int code = cli::run(args, os, es);
    if (out) *out = os.str();
    return code;
  };
  const bool c0 = run({"verify", "--suite", "poincare", "--n", "4", "--p", "4", "--q", "3"}) == 0;
  const bool c1 = run({"verify", "--suite", "negative_control"}) == 1;
  const bool c2 = run({"verify", "--suite", "nonexistent"}) == 2 && run({"constants", "--p", "2", "--q", "2"}) == 2 &&
                  run({"sweep", "--kind", "mt-lambda", "--lambda", "0:0.3:0"}) == 2;
  std::string a, b;
  const auto t0 = std::chrono::steady_clock::now();
  const int all_code = run({"verify", "--suite", "all", "--no-timestamp", "--threads", "1"}, &a);
  all_runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  run({"verify", "--suite", "all", "--no-timestamp"}, &b);
  const bool same = a == b && !a.empty();
  o.pass = c0 && c1 && c2 && all_code == 0 && same && all_runtime < 180.0;
  o.detail = std::string("exit 0/1/2: ") + (c0 && c1 && c2 ? "ok" : "WRONG") + "; verify --suite all exit " +
             std::to_string(all_code) + " in " + fmt("%.1f", all_runtime) + " s (<180 s, single thread); " +
             "byte-identical with --no-timestamp: " + (same ? "yes" : "no");
  return o;
}

}  // namespace

int main() {
  double all_runtime = 0.0;
  const std::vector<Criterion> criteria = {
      {1, "constant anchors", 1.0, constants_anchors},
      {2, "fractional Sobolev sharpness", 5.0, frac_sharpness},
      {3, "Poincare sharpness sweep", 10.0, poincare_sweep},
      {4, "closed-form norm of the sharp family", 2.0, sharp_norm_closed_form},
      {5, "geometry grid", 5.0, geometry_grid},
      {6, "inequality batteries", 60.0, inequality_batteries},
      {7, "rearrangement oracles", 30.0, rearrangement_oracles},
      {8, "Moser-Trudinger trend suite", 60.0, moser_trudinger},
      {9, "CLI contract", 400.0, [&all_runtime] { return cli_contract(all_runtime); }},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // Criterion 9 bounds the verify --suite all run, not the two runs plus the exit-code probes.
    const bool in_time = c.id == 9 ? all_runtime < 180.0 : dt < c.limit_s;
    const bool pass = o.pass && in_time;
    all = all && pass;
    std::printf("%s criterion %d: %s [%.2f s, limit %s] %s\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), dt,
                c.id == 9 ? "180 s for verify --suite all" : fmt("%g s", c.limit_s).c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
