#include <set>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "hypls/battery.hpp"

using namespace hypls;

namespace {

std::string dump(const std::vector<VerificationReport>& r) { return to_json(r).dump(); }

}  // namespace

TEST(Battery, StandardProfilesAreDistinctAndAdmissible) {
  const auto b = standard_battery(Dimension(4), 4.0, 3.0);
  ASSERT_EQ(b.size(), 20u);
  std::set<std::string> seen;
  for (const auto& u : b) {
    EXPECT_TRUE(u.absolutely_continuous());
    seen.insert(to_json(u).dump());
  }
  EXPECT_EQ(seen.size(), 20u);
}

TEST(Battery, SuitesPassAndEveryReportIsConsistent) {
  for (const char* suite : {"geometry", "frac_sobolev", "mt", "hardy"}) {
    const auto reports = run_battery(suite);
    ASSERT_FALSE(reports.empty()) << suite;
    for (const auto& r : reports) {
      EXPECT_EQ(r.pass, !r.diverged && r.margin >= -r.tolerance);
      EXPECT_TRUE(r.pass) << suite << " " << to_json(r).dump();
      EXPECT_FALSE(r.params.empty());
    }
  }
}

TEST(Battery, DeterministicAcrossThreadCounts) {
  BatteryConfig one, many;
  one.threads = 1;
  many.threads = 4;
  EXPECT_EQ(dump(run_battery("mt", one)), dump(run_battery("mt", many)));
  EXPECT_EQ(dump(run_battery("geometry", one)), dump(run_battery("geometry", many)));
}

TEST(Battery, SeedChangesRandomInstancesOnly) {
  BatteryConfig a, b;
  b.seed = 99;
  const auto ra = run_battery("mt", a);
  const auto rb = run_battery("mt", b);
  ASSERT_EQ(ra.size(), rb.size());
  EXPECT_NE(dump(ra), dump(rb));
  EXPECT_EQ(to_json(ra.front()).dump(), to_json(rb.front()).dump());
}

TEST(Battery, ConfigErrors) {
  EXPECT_THROW(run_battery("nonexistent"), ConfigError);
  BatteryConfig c;
  c.q = 5.0;  // above p = 4
  EXPECT_THROW(run_battery("poincare", c), ConfigError);
  BatteryConfig k;
  k.n = 2;
  EXPECT_THROW(run_battery("key_estimate", k), ConfigError);
  BatteryConfig m;
  m.lambda = 0.5;  // above 27/64
  EXPECT_THROW(run_battery("mt", m), ConfigError);
  BatteryConfig l;
  l.l = 100.0;
  EXPECT_THROW(run_battery("ps", l), ConfigError);
  BatteryConfig t;
  t.rel_tol = -1.0;
  EXPECT_THROW(run_battery("geometry", t), ConfigError);
}

TEST(Battery, FailuresSurfaceAsReports) {
  const auto neg = run_battery("negative_control");
  ASSERT_EQ(neg.size(), 1u);
  EXPECT_FALSE(neg[0].pass);
  EXPECT_FALSE(all_pass(neg));
  // A throwing task becomes a failing report carrying the message and parameters.
  const std::vector<detail::NamedTask> tasks = {
      {"boom", {{"x", 1}}, []() -> std::vector<VerificationReport> { throw std::domain_error("bad input"); }}};
  const auto r = detail::run_tasks(tasks, 1);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_FALSE(r[0].pass);
  EXPECT_EQ(r[0].details["error"], "bad input");
  EXPECT_EQ(r[0].params["x"], 1);
}

TEST(Battery, RelativeToleranceOnlyWidens) {
  BatteryConfig c;
  c.rel_tol = 1e-3;
  const auto base = run_battery("geometry");
  const auto wide = run_battery("geometry", c);
  ASSERT_EQ(base.size(), wide.size());
  for (std::size_t i = 0; i < base.size(); ++i) EXPECT_GE(wide[i].tolerance, base[i].tolerance);
}
