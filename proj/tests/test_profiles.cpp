#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "hypls/families.hpp"

using namespace hypls;

namespace {

std::vector<MonotoneProfile> sample_profiles() {
  return {
      family_sharp(0.5, 40.0, 4.0),
      family_exponential(1.3),
      family_power(0.9, 2.0),
      family_geodesic_gaussian(Dimension(4), 0.8),
      family_frac_pullback(Dimension(4), 5.0, 3.0, 0.7),
      family_moser_log(0.1, 30.0),
      family_v_linear(Dimension(3), 1.5),
      family_piecewise_linear({{0.2, 2.0}, {1.0, 1.5}, {3.0, 0.25}, {4.0, 0.0}}),
      family_step(2.0, 1.0),
      family_exponential(0.5).scaled(3.0),
  };
}

}  // namespace

TEST(Profiles, NonincreasingAndNonnegative) {
  for (const auto& u : sample_profiles()) EXPECT_TRUE(u.nonincreasing_on_grid()) << u.kind();
}

TEST(Profiles, JsonRoundTripReproducesValues) {
  for (const auto& u : sample_profiles()) {
    const auto j = to_json(u);
    const auto back = profile_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back.kind(), u.kind());
    for (double t : {1e-6, 0.05, 0.3, 1.0, 2.5, 7.0, 100.0}) {
      EXPECT_EQ(back.value(t), u.value(t)) << u.kind() << " t=" << t;
      EXPECT_EQ(back.derivative(t), u.derivative(t)) << u.kind() << " t=" << t;
    }
  }
}

TEST(Profiles, JsonErrors) {
  EXPECT_THROW(spec_from_json(nlohmann::json::parse(R"({"params":{}})")), std::invalid_argument);
  EXPECT_THROW(spec_from_json(nlohmann::json::parse(R"({"kind":"sharp","params":{"a":"x"}})")),
               std::invalid_argument);
  EXPECT_THROW(profile_from_json(nlohmann::json::parse(R"({"kind":"sharp","params":{"a":1}})")),
               std::invalid_argument);
  EXPECT_THROW(profile_from_json(nlohmann::json::parse(R"({"kind":"nope"})")), std::invalid_argument);
}

TEST(Profiles, SharpFamilyShape) {
  const double a = 0.25, R = 64.0, p = 4.0;
  const auto f = family_sharp(a, R, p);
  EXPECT_DOUBLE_EQ(f.value(0.5 * a), std::pow(a, -1.0 / p));
  EXPECT_DOUBLE_EQ(f.value(a), std::pow(a, -1.0 / p));
  EXPECT_NEAR(f.value(R * (1 - 1e-12)), f.value(R), 1e-12);
  EXPECT_DOUBLE_EQ(f.value(1.5 * R), 0.5 * std::pow(R, -1.0 / p));
  EXPECT_EQ(f.value(2.0 * R), 0.0);
  EXPECT_EQ(f.support_bound(), 2.0 * R);
  EXPECT_EQ(f.head_end(), a);
  EXPECT_DOUBLE_EQ(f.sup(), std::pow(a, -1.0 / p));
  // One-sided derivatives at R differ by the factor p.
  EXPECT_NEAR(f.derivative(R * (1 - 1e-14)) / f.derivative(R), 1.0 / p, 1e-10);
  EXPECT_THROW(family_sharp(2.0, 1.0, 4.0), std::domain_error);
}

TEST(Profiles, DerivativesMatchFiniteDifferences) {
  for (const auto& u : sample_profiles()) {
    if (!u.absolutely_continuous()) continue;
    for (double t : {0.07, 0.6, 1.7, 3.3}) {
      bool near_break = false;
      for (double b : u.pieces()) near_break |= std::abs(t - b) < 1e-3;
      if (near_break || t >= u.support_bound()) continue;
      const double h = 1e-6 * t;
      const double fd = (u.value(t + h) - u.value(t - h)) / (2 * h);
      EXPECT_NEAR(u.derivative(t), fd, 1e-6 * std::max(1.0, std::abs(fd))) << u.kind() << " t=" << t;
    }
  }
}

TEST(Profiles, FractionalExtremal) {
  const auto w = family_frac_extremal(4.0, 2.0);
  EXPECT_DOUBLE_EQ(w.w(0.0), 1.0);
  EXPECT_DOUBLE_EQ(w.w(1.0), 0.5);
  EXPECT_NEAR(w.minus_r_dw(0.8), -0.8 * w.dw(0.8), 1e-15);
  // Decay like r^(-(beta-q)/(q-1)).
  const double r = 1e6;
  EXPECT_NEAR(w.w(r) * std::pow(r, 2.0), 1.0, 1e-6);
  EXPECT_THROW(family_frac_extremal(2.0, 2.0), std::domain_error);
  EXPECT_THROW(family_frac_extremal(3.0, 1.0), std::domain_error);
}

TEST(Profiles, PullbackAndVLinearInvertTheRadialMap) {
  const Dimension n(4);
  const double s = sigma(4.0);
  const auto u = family_frac_pullback(n, 6.0, 3.0, 0.5);
  const auto ext = family_frac_extremal(6.0, 3.0);
  for (double r : {0.1, 0.5, 2.0}) EXPECT_NEAR(u.value(s * std::pow(r, 4.0)), ext.w(r / 0.5), 1e-14);
  const auto v = family_v_linear(n, 2.0);
  EXPECT_NEAR(v.value(s * std::pow(0.5, 4.0)), 0.75, 1e-14);
  EXPECT_EQ(v.value(s * 16.0), 0.0);
}

TEST(Profiles, PiecewiseLinearValidation) {
  EXPECT_THROW(family_piecewise_linear({{0.0, 1.0}}), std::domain_error);
  EXPECT_THROW(family_piecewise_linear({{0.0, 1.0}, {1.0, 2.0}}), std::domain_error);
  EXPECT_THROW(family_piecewise_linear({{1.0, 1.0}, {0.5, 0.0}}), std::domain_error);
  const auto jump = family_piecewise_linear({{0.0, 1.0}, {1.0, 0.5}});
  EXPECT_FALSE(jump.absolutely_continuous());
  const auto pl = family_piecewise_linear({{0.5, 1.0}, {1.5, 0.0}});
  EXPECT_TRUE(pl.absolutely_continuous());
  EXPECT_EQ(pl.head_end(), 0.5);
  EXPECT_DOUBLE_EQ(pl.value(1.0), 0.5);
}

TEST(Profiles, ScalingAndStep) {
  const auto e = family_exponential(1.0);
  const auto c = e.scaled(2.5).scaled(2.0);
  EXPECT_DOUBLE_EQ(c.value(1.0), 5.0 * std::exp(-1.0));
  EXPECT_DOUBLE_EQ(c.scale(), 5.0);
  EXPECT_DOUBLE_EQ(e.value(1.0), std::exp(-1.0));
  EXPECT_THROW(e.scaled(-1.0), std::domain_error);
  const auto st = family_step(3.0, 2.0);
  EXPECT_FALSE(st.absolutely_continuous());
  EXPECT_EQ(st.value(1.0), 3.0);
  EXPECT_EQ(st.value(2.0), 0.0);
}

TEST(Profiles, MtWindowGuard) {
  EXPECT_NO_THROW(family_mt(Dimension(4), 3.0, 0.1, 10.0));
  EXPECT_THROW(family_mt(Dimension(4), 2.0, 0.1, 10.0), std::domain_error);
  EXPECT_THROW(family_mt(Dimension(4), 5.0, 0.1, 10.0), std::domain_error);
}
