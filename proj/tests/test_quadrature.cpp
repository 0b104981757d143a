#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hypls/gamma.hpp"
#include "hypls/quadrature.hpp"

using namespace hypls;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Known {
  std::string name;
  Integrand f;
  double a, b;
  double exact;
  double singular = 0.0;
};

std::vector<Known> battery() {
  const double pi = std::numbers::pi;
  return {
      {"exp", [](double t) { return std::exp(-t); }, 0.0, kInf, 1.0},
      {"t2exp", [](double t) { return std::exp(2.0 * std::log(t) - t); }, 0.0, kInf, 2.0},
      {"t5exp2", [](double t) { return std::exp(5.0 * std::log(t) - 2.0 * t); }, 0.0, kInf, 120.0 / 64.0},
      {"inv_sqrt", [](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, 2.0, 0.5},
      {"t^-0.9", [](double t) { return std::pow(t, -0.9); }, 0.0, 1.0, 10.0, 0.1},
      {"gamma_q_p", [](double t) { return std::exp(-2.0 * t) * std::pow(t, 2.0 / 3.0 - 1.0); }, 0.0, kInf,
       gamma_fn(2.0 / 3.0) / std::pow(2.0, 2.0 / 3.0), 2.0 / 3.0},
      {"poly", [](double t) { return 3.0 * t * t - 2.0 * t + 1.0; }, -1.0, 2.0, 9.0 - 3.0 + 3.0},
      {"sin", [](double t) { return std::sin(t); }, 0.0, pi, 2.0},
      {"cauchy", [](double t) { return 1.0 / (1.0 + t * t); }, 0.0, kInf, pi / 2.0},
      {"log", [](double t) { return std::log(t); }, 0.0, 1.0, -1.0},
      {"gauss", [](double t) { return std::exp(-t * t); }, 0.0, kInf, std::sqrt(pi) / 2.0},
      {"power_tail", [](double t) { return std::pow(1.0 + t, -3.0); }, 0.0, kInf, 0.5},
      {"sqrt", [](double t) { return std::sqrt(t); }, 0.0, 4.0, 16.0 / 3.0},
      {"shifted_exp", [](double t) { return std::exp(-(t - 3.0)); }, 3.0, kInf, 1.0},
      {"beta", [](double t) { return std::pow(t, -0.5) * std::pow(1.0 - t, 0.5); }, 0.0, 1.0,
       beta_fn(0.5, 1.5), 0.5},
      {"rational", [](double t) { return 1.0 / (t * (1.0 + t)) * std::pow(t, 0.5); }, 0.0, kInf, pi, 0.5},
      {"cosh", [](double t) { return std::cosh(t); }, 0.0, 2.0, std::sinh(2.0)},
      {"peak", [](double t) { return 1.0 / (1e-4 + (t - 0.3) * (t - 0.3)); }, 0.0, 1.0,
       100.0 * (std::atan(70.0) + std::atan(30.0))},
      {"exp_poly3", [](double t) { return t > 1e3 ? 0.0 : (1.0 + t + t * t * t) * std::exp(-t); }, 0.0, kInf, 1.0 + 1.0 + 6.0},
      {"logpow", [](double t) { return t * std::log(t) * std::log(t); }, 0.0, 1.0, 0.25},
  };
}

}  // namespace

TEST(Integrate, SpecExamples) {
  auto r1 = integrate([](double t) { return std::exp(-t); }, 0.0, kInf);
  EXPECT_TRUE(r1.converged);
  EXPECT_NEAR(r1.value, 1.0, 1e-12);

  QuadratureConfig cfg;
  cfg.singular_exponent_left = 0.5;
  auto r2 = integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, cfg);
  EXPECT_NEAR(r2.value, 2.0, 1e-12);

  const double p = 3.0, q = 2.0;
  cfg.singular_exponent_left = q / p;
  auto r3 = integrate([=](double t) { return std::exp(-q * t) * std::pow(t, q / p - 1.0); }, 0.0, kInf, cfg);
  EXPECT_NEAR(r3.value, gamma_fn(q / p) / std::pow(q, q / p), 1e-10);
}

TEST(Integrate, ErrorEstimateIsReliableOnBattery) {
  int within = 0;
  int total = 0;
  for (const auto& k : battery()) {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    cfg.singular_exponent_left = k.singular;
    const auto r = integrate(k.f, k.a, k.b, cfg);
    const double err = std::abs(r.value - k.exact);
    ++total;
    EXPECT_TRUE(r.converged) << k.name;
    EXPECT_GE(r.error_estimate, 0.0) << k.name;
    EXPECT_LE(err, 1e-8 * std::abs(k.exact)) << k.name;
    // Floating-point floor: an error at the level of a few ulps counts as bounded.
    if (err <= r.error_estimate + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(k.exact)) ++within;
    EXPECT_LE(err, 10.0 * r.error_estimate + 16.0 * std::numeric_limits<double>::epsilon() * std::abs(k.exact))
        << k.name;
  }
  EXPECT_EQ(total, 20);
  EXPECT_GE(within, 19);
}

TEST(Integrate, LogVariableOnBattery) {
  for (const auto& k : battery()) {
    if (k.a < 0.0 || k.name == "peak") continue;
    const auto r = integrate_log(k.f, k.a, k.b);
    EXPECT_NEAR(r.value, k.exact, 1e-8 * std::abs(k.exact)) << k.name;
  }
}

TEST(Integrate, Additivity) {
  auto f = [](double t) { return std::exp(-t) * std::pow(t, 0.3) + 1.0 / (1.0 + t * t); };
  const auto whole = integrate(f, 0.0, 5.0);
  for (double c : {0.1, 1.0, 2.5, 4.9}) {
    const auto left = integrate(f, 0.0, c);
    const auto right = integrate(f, c, 5.0);
    EXPECT_NEAR(left.value + right.value, whole.value,
                left.error_estimate + right.error_estimate + whole.error_estimate + 1e-15);
  }
  const std::vector<double> pts = {0.0, 0.5, 3.0, 100.0, kInf};
  auto g = [](double t) { return std::exp(-t); };
  EXPECT_NEAR(integrate_pieces(g, pts).value, 1.0, 1e-12);
}

TEST(Integrate, FailureModes) {
  EXPECT_THROW(integrate([](double) { return std::nan(""); }, 0.0, 1.0), std::domain_error);
  EXPECT_THROW(integrate([](double t) { return t; }, 1.0, 0.0), std::invalid_argument);
  EXPECT_EQ(integrate([](double t) { return t; }, 1.0, 1.0).value, 0.0);
  QuadratureConfig bad;
  bad.rel_tol = 0.0;
  EXPECT_THROW(integrate([](double t) { return t; }, 0.0, 1.0, bad), std::invalid_argument);
  bad = QuadratureConfig{};
  bad.max_subdivisions = 0;
  EXPECT_THROW(integrate([](double t) { return t; }, 0.0, 1.0, bad), std::invalid_argument);

  // A budget of one subdivision on a hard integrand must say so.
  QuadratureConfig tight;
  tight.max_subdivisions = 1;
  tight.rel_tol = 1e-14;
  const auto r = integrate([](double t) { return 1.0 / (1e-6 + (t - 0.37) * (t - 0.37)); }, 0.0, 1.0, tight);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(std::isfinite(r.value));
}

TEST(Integrate, GaussLegendreExactForPolynomials) {
  auto f = [](double t) { return std::pow(t, 19) - 3.0 * std::pow(t, 7); };
  EXPECT_NEAR(gauss_legendre_integral<10>(f, 0.0, 2.0), std::pow(2.0, 20) / 20.0 - 3.0 * 256.0 / 8.0, 1e-9);
  const auto& rule = gauss_legendre<24>();
  double wsum = 0.0;
  for (double w : rule.weights) wsum += w;
  EXPECT_NEAR(wsum, 1.0, 1e-15);
}

TEST(LogGrid, Properties) {
  auto g = log_grid(1.0, 100.0, 3);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0], 1.0);
  EXPECT_NEAR(g[1], 10.0, 1e-13);
  EXPECT_EQ(g[2], 100.0);
  auto d = log_grid(1e-6, 1e6, 13);
  ASSERT_EQ(d.size(), 13u);
  for (int i = 0; i < 13; ++i) EXPECT_NEAR(std::log10(d[i]), -6.0 + i, 1e-12);
  EXPECT_EQ(d.front(), 1e-6);
  EXPECT_EQ(d.back(), 1e6);
  auto big = log_grid(0.37, 9.1e7, 1000);
  for (std::size_t i = 1; i < big.size(); ++i) EXPECT_LT(big[i - 1], big[i]);
  EXPECT_EQ(big.front(), 0.37);
  EXPECT_EQ(big.back(), 9.1e7);
  EXPECT_THROW(log_grid(0.0, 1.0, 3), std::domain_error);
  EXPECT_THROW(log_grid(-1.0, 1.0, 3), std::domain_error);
  EXPECT_THROW(log_grid(1.0, 2.0, 1), std::domain_error);
}
