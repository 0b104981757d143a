#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "hypls/constants.hpp"

using namespace hypls;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// ((int |w'|^q r^(b-1)) / (int |w|^(bq/(b-q)) r^(b-1))^((b-q)/b)) for the
// extremal w = (1 + r^(q/(q-1)))^(-(b-q)/q), evaluated with Boost quadrature.
double extremal_quotient_boost(double b, double q) {
  const double s = q / (q - 1.0);
  const double e = (b - q) / q;
  // Log-space forms stay finite where r^s overflows.
  auto log1p_rs = [=](double r) { return std::log1p(std::exp(s * std::log(r))); };
  auto num_f = [=](double r) {
    if (!(r > 0.0) || !std::isfinite(r)) return 0.0;
    const double log_dw = std::log(e * s) + (s - 1.0) * std::log(r) - (e + 1.0) * log1p_rs(r);
    return std::exp(q * log_dw + (b - 1.0) * std::log(r));
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  const double num = integrator.integrate(num_f);
  const double qs = b * q / (b - q);
  const double den = integrator.integrate([=](double r) {
    if (!(r > 0.0) || !std::isfinite(r)) return 0.0;
    return std::exp(-e * qs * log1p_rs(r) + (b - 1.0) * std::log(r));
  });
  return num / std::pow(den, (b - q) / b);
}

}  // namespace

TEST(Gamma, SpecialValues) {
  EXPECT_NEAR(gamma_fn(1.0), 1.0, 1e-15);
  EXPECT_NEAR(gamma_fn(0.5), std::sqrt(std::numbers::pi), 1e-14);
  EXPECT_NEAR(gamma_fn(4.0), 6.0, 1e-13);
  EXPECT_THROW(gamma_fn(0.0), std::domain_error);
  EXPECT_THROW(gamma_fn(-1.5), std::domain_error);
  EXPECT_THROW(log_gamma_fn(-2.0), std::domain_error);
}

TEST(Gamma, MatchesStdTgamma) {
  for (double x = 0.05; x < 60.0; x *= 1.07) {
    EXPECT_LT(rel_err(gamma_fn(x), std::tgamma(x)), 1e-12) << "x=" << x;
    EXPECT_NEAR(log_gamma_fn(x), std::lgamma(x), 1e-12 * std::max(1.0, std::abs(std::lgamma(x)))) << "x=" << x;
  }
}

TEST(Gamma, RecursionOnRandomArguments) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> dist(0.1, 50.0);
  for (int i = 0; i < 100; ++i) {
    const double x = dist(rng);
    EXPECT_LT(rel_err(gamma_fn(x + 1.0), x * gamma_fn(x)), 1e-11) << "x=" << x;
  }
}

TEST(Sigma, LowDimensionalVolumes) {
  EXPECT_NEAR(sigma(2.0), std::numbers::pi, 1e-14);
  EXPECT_NEAR(sigma(3.0), 4.0 * std::numbers::pi / 3.0, 1e-14);
  EXPECT_NEAR(sigma(4.0), std::numbers::pi * std::numbers::pi / 2.0, 1e-14);
  EXPECT_THROW(sigma(0.0), std::domain_error);
}

TEST(Sigma, BetaRecursionAndSlicedVolume) {
  for (int n = 2; n <= 10; ++n) {
    const double want = sigma(n - 1.0) * std::tgamma(0.5) * std::tgamma((n + 1) / 2.0) / std::tgamma(n / 2.0 + 1.0);
    EXPECT_LT(rel_err(sigma(n), want), 1e-13) << "n=" << n;
  }
  boost::math::quadrature::tanh_sinh<double> ts;
  const double disc = ts.integrate([](double x) { return 2.0 * std::sqrt(1.0 - x * x); }, -1.0, 1.0);
  const double ball = ts.integrate([](double x) { return std::numbers::pi * (1.0 - x * x); }, -1.0, 1.0);
  EXPECT_LT(rel_err(sigma(2.0), disc), 1e-12);
  EXPECT_LT(rel_err(sigma(3.0), ball), 1e-12);
}

TEST(OmegaSphere, Values) {
  EXPECT_NEAR(omega_sphere(Dimension(2)), 2.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(omega_sphere(Dimension(3)), 4.0 * std::numbers::pi, 1e-13);
  EXPECT_NEAR(omega_sphere(Dimension(4)), 2.0 * std::numbers::pi * std::numbers::pi, 1e-13);
}

TEST(Parameters, Guards) {
  EXPECT_THROW(Dimension(1), std::domain_error);
  EXPECT_THROW(LorentzIndex(1.0, 2.0), std::domain_error);
  EXPECT_THROW(LorentzIndex(2.0, 0.5), std::domain_error);
  EXPECT_THROW(FracSobolevParams(3.0, 1.0), std::domain_error);
  EXPECT_THROW(FracSobolevParams(2.0, 2.0), std::domain_error);
  const Dimension n(4);
  EXPECT_TRUE(LorentzIndex(4, 3).poincare_window());
  EXPECT_FALSE(LorentzIndex(3, 4).poincare_window());
  EXPECT_TRUE(LorentzIndex(4, 8.0 / 3.0).key_estimate_window(n));
  EXPECT_FALSE(LorentzIndex(4, 2.5).key_estimate_window(n));
  EXPECT_TRUE(LorentzIndex(3.5, 3).ps_window(n));
  EXPECT_FALSE(LorentzIndex(4, 3).ps_window(n));
  EXPECT_TRUE(LorentzIndex(10, 3).mt_window(n));
  EXPECT_FALSE(LorentzIndex(10, 4.5).mt_window(n));
}

TEST(PoincareConst, Values) {
  EXPECT_EQ(poincare_const(Dimension(2), LorentzIndex(2, 2)), 0.25);
  EXPECT_NEAR(poincare_const(Dimension(4), LorentzIndex(4, 3)), 27.0 / 64.0, 1e-15);
  EXPECT_NEAR(poincare_const(Dimension(4), LorentzIndex(4, 3)), std::exp(3.0 * (std::log(3.0) - std::log(4.0))),
              1e-15);
}

TEST(AlphaNq, CriticalCaseReducesToMoserExponent) {
  EXPECT_NEAR(alpha_nq(Dimension(2), 2.0), 4.0 * std::numbers::pi, 1e-12);
  for (int n = 2; n <= 8; ++n) {
    const Dimension d(n);
    const double want = n * std::pow(omega_sphere(d), 1.0 / (n - 1.0));
    EXPECT_LT(rel_err(alpha_nq(d, n), want), 1e-12) << "n=" << n;
  }
  EXPECT_THROW(alpha_nq(Dimension(3), 1.0), std::domain_error);
}

TEST(AlphaNq, ScalingIdentityWithMoserExponent) {
  for (int n = 3; n <= 8; ++n) {
    const Dimension d(n);
    for (double q = d.critical_q(); q <= n + 1e-12; q += (n - d.critical_q()) / 5.0 + 1e-3) {
      const double via_mu =
          mu_exp(q, n) * std::pow(n * std::pow(sigma(n), q / n) / (q * sigma(q)), 1.0 / (q - 1.0));
      EXPECT_LT(rel_err(alpha_nq(d, q), via_mu), 1e-10) << "n=" << n << " q=" << q;
    }
  }
  EXPECT_NEAR(alpha_nq(Dimension(4), 3.0), 14.556807641788625, 1e-12);
}

TEST(MuExp, Values) {
  EXPECT_NEAR(mu_exp(2.0, 2.0), 4.0 * std::numbers::pi, 1e-13);
  EXPECT_THROW(mu_exp(1.0, 2.0), std::domain_error);
  EXPECT_THROW(mu_exp(2.0, 0.5), std::domain_error);
}

TEST(JIndex, Values) {
  EXPECT_EQ(j_index(Dimension(4), 2.0), 3);
  EXPECT_EQ(j_index(Dimension(4), 3.0), 4);
  for (int n = 2; n <= 8; ++n) EXPECT_EQ(j_index(Dimension(n), n), n);
  EXPECT_EQ(j_index(Dimension(3), 1.5), 2);
}

TEST(PhiQ, ValuesAndMonotonicity) {
  const Dimension n(4);
  EXPECT_EQ(phi_q(0.0, n, 2.0), 0.0);
  EXPECT_NEAR(phi_q(1.0, n, 2.0), std::numbers::e - 2.0, 1e-15);
  EXPECT_NEAR(phi_q(5.0, n, 3.0), std::exp(5.0) - 1.0 - 5.0 - 12.5, 1e-12);
  double prev = -1.0;
  for (double t = 0.0; t < 30.0; t += 0.01) {
    const double v = phi_q(t, n, 3.0);
    EXPECT_GT(v, prev) << "t=" << t;
    prev = v;
  }
}

TEST(PhiQ, LowestSurvivingTerm) {
  for (int n = 2; n <= 6; ++n) {
    const Dimension d(n);
    for (double q : {d.critical_q(), 0.5 * (d.critical_q() + n), static_cast<double>(n)}) {
      const int k = j_index(d, q) - 1;
      const double t = 1e-6;
      EXPECT_LT(rel_err(phi_q(t, d, q) / std::pow(t, k), 1.0 / std::tgamma(k + 1.0)), 1e-5)
          << "n=" << n << " q=" << q;
    }
  }
}

TEST(PhiQ, SmallArgumentHasNoCancellation) {
  // e^t - 1 - t - t^2/2 at t = 1e-3 by its series.
  const double t = 1e-3;
  const double want = t * t * t / 6.0 * (1.0 + t / 4.0 + t * t / 20.0 + t * t * t / 120.0);
  EXPECT_LT(rel_err(phi_q(t, Dimension(4), 3.0), want), 1e-14);
}

TEST(SFrac, ClosedFormValues) {
  EXPECT_NEAR(s_frac({4.0, 2.0}), 8.0 * std::sqrt(1.0 / 12.0), 1e-13);
  EXPECT_NEAR(s_frac({6.0, 3.0}), 2.4647515087732475, 1e-12);
  EXPECT_NEAR(s_frac({10.0, 2.5}), 20.767546186031979, 1e-11);
  EXPECT_THROW(s_frac({2.0, 2.0}), std::domain_error);
}

TEST(SFrac, MatchesExtremalQuotient) {
  for (auto [b, q] : {std::pair{4.0, 2.0}, {6.0, 3.0}, {10.0, 2.5}, {5.0, 1.5}, {7.5, 4.0}}) {
    EXPECT_LT(rel_err(s_frac({b, q}), extremal_quotient_boost(b, q)), 1e-8) << "beta=" << b << " q=" << q;
  }
}

TEST(SNpql, Branches) {
  const Dimension n(4);
  EXPECT_NEAR(s_npql(n, 3.0, 3.0, 3.0), std::pow(sigma(4.0), 0.25) / 3.0, 1e-14);
  EXPECT_NEAR(s_npql(n, 3.0, 3.0, 3.0), 0.49681669647636342, 1e-14);
  // Regression values (independent 40-digit evaluation of the same formula).
  EXPECT_NEAR(s_npql(n, 3.0, 3.0, 6.0), 1.0154318252547683, 1e-12);
  EXPECT_NEAR(s_npql(n, 3.5, 3.0, 13.5), 0.71607304577833947, 1e-12);
  EXPECT_NEAR(s_npql(n, 3.5, 3.0, 24.0), 0.79007857580568997, 1e-12);
  const double lmax = ps_l_max(n, 3.0, 3.0);
  EXPECT_DOUBLE_EQ(lmax, 12.0);
  const double at_end = s_npql(n, 3.0, 3.0, lmax);
  EXPECT_TRUE(std::isfinite(at_end));
  EXPECT_GT(at_end, 0.0);
}

TEST(SNpql, Guards) {
  EXPECT_THROW(s_npql(Dimension(3), 2.5, 3.0, 3.0), std::domain_error);
  EXPECT_THROW(s_npql(Dimension(4), 3.0, 3.0, 2.9), std::domain_error);
  EXPECT_THROW(s_npql(Dimension(4), 3.0, 3.0, 12.5), std::domain_error);
  EXPECT_THROW(s_npql(Dimension(4), 4.0, 3.0, 4.0), std::domain_error);
  EXPECT_THROW(s_npql(Dimension(4), 3.0, 2.5, 3.0), std::domain_error);
}

TEST(Talenti, GoldenValuesAndIdentities) {
  EXPECT_NEAR(talenti_const(Dimension(4), 2.0), 3.2031857019684189, 1e-12);
  EXPECT_NEAR(talenti_const(Dimension(3), 2.0), 2.3404922750420117, 1e-12);
  for (int n = 3; n <= 8; ++n) {
    const Dimension d(n);
    const double s = talenti_const(d, 2.0);
    const double surface = omega_sphere(Dimension(n + 1));  // |S^n|
    EXPECT_LT(rel_err(s * s, n * (n - 2.0) / 4.0 * std::pow(surface, 2.0 / n)), 1e-12) << "n=" << n;
    // Radial reduction: S_{n,p}^p = omega^(p/n) S(n, p).
    for (double p : {1.5, 2.0, 0.5 * (n + 1.0)}) {
      if (!(p < n)) continue;
      EXPECT_LT(rel_err(std::pow(talenti_const(d, p), p),
                        std::pow(omega_sphere(d), p / n) * s_frac({static_cast<double>(n), p})),
                1e-12)
          << "n=" << n << " p=" << p;
    }
  }
  EXPECT_THROW(talenti_const(Dimension(3), 3.0), std::domain_error);
}

TEST(Talenti, MatchesRadialExtremalQuotient) {
  for (auto [n, p] : {std::pair{4, 2.0}, {3, 1.5}, {5, 2.5}}) {
    const Dimension d(n);
    const double want = std::pow(omega_sphere(d), 1.0 / n) * std::pow(extremal_quotient_boost(n, p), 1.0 / p);
    EXPECT_LT(rel_err(talenti_const(d, p), want), 1e-8) << "n=" << n << " p=" << p;
  }
}
