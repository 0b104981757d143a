#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hypls/cli.hpp"

using namespace hypls;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ineq_verify");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

std::string read(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ConstantsTable) {
  const auto r = run({"constants", "--n", "2", "--p", "2", "--q", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["constants"]["poincare_const"].get<double>(), 0.25);
  const auto s = run({"constants", "--n", "4", "--p", "3", "--q", "3", "--l", "6", "--format", "json"});
  ASSERT_EQ(s.code, 0);
  const auto k = nlohmann::json::parse(s.out);
  EXPECT_NEAR(k["constants"]["s_npql"].get<double>(), s_npql(Dimension(4), 3, 3, 6), 1e-15);
  // Out-of-window entries are marked instead of failing the whole table.
  const auto t = run({"constants", "--n", "3", "--p", "4", "--q", "3", "--format", "json"});
  ASSERT_EQ(t.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(t.out)["constants"]["talenti_const"].is_string());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"constants", "--p", "2", "--q", "2"}).code, 2);
  EXPECT_EQ(run({"constants", "--n", "1", "--p", "2", "--q", "2"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "bogus"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "poincare", "--q", "9"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "geometry", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "geometry", "--format", "both"}).code, 2);  // needs --output
  EXPECT_EQ(run({"verify", "--suite", "geometry"}).code, 0);
  EXPECT_EQ(run({"verify", "--suite", "negative_control"}).code, 1);
  EXPECT_EQ(run({"sweep", "--kind", "mt-lambda", "--lambda", "0:0.3:0"}).code, 2);
  EXPECT_EQ(run({"sweep", "--kind", "mt-lambda", "--lambda", "0.3:0:3"}).code, 2);
  EXPECT_EQ(run({"sweep", "--kind", "mt-lambda", "--lambda", "0:0.5:3"}).code, 2);  // above threshold
  EXPECT_EQ(run({"sweep", "--kind", "nope"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DeterministicWithoutTimestamp) {
  const auto a = run({"verify", "--suite", "mt", "--no-timestamp", "--threads", "1"});
  const auto b = run({"verify", "--suite", "mt", "--no-timestamp", "--threads", "3"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(nlohmann::json::parse(a.out).contains("timestamp"));
  const auto c = run({"verify", "--suite", "geometry"});
  EXPECT_TRUE(nlohmann::json::parse(c.out).contains("timestamp"));
}

TEST(Cli, SweepTables) {
  const auto r = run({"sweep", "--kind", "poincare-sharpness", "--n", "4", "--p", "4", "--q", "3", "--lnRa", "5:40:8"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "abscissa,ratio,target");
  std::vector<double> ratios;
  while (std::getline(in, line)) {
    double x, y, t;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &y, &t), 3);
    ratios.push_back(y);
    EXPECT_DOUBLE_EQ(t, 27.0 / 64.0);
  }
  ASSERT_EQ(ratios.size(), 8u);
  for (std::size_t i = 1; i < ratios.size(); ++i) EXPECT_LT(ratios[i], ratios[i - 1]);
  const auto m = run({"sweep", "--kind", "mt-lambda", "--n", "4", "--q", "3", "--lambda", "0:0.3:4", "--format", "json"});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(nlohmann::json::parse(m.out)["sweep"]["ratios"].size(), 4u);
}

TEST(Cli, CsvRoundTripsDoubles) {
  const auto r = run({"verify", "--suite", "frac_sobolev", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  const auto j = run({"verify", "--suite", "frac_sobolev", "--format", "json"});
  const auto reports = nlohmann::json::parse(j.out)["reports"];
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "name,params,lhs,rhs,sense,margin,error_estimate,tolerance,pass");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, reports.size());
  EXPECT_NE(r.out.find(hypls::detail::g17(reports[0]["lhs"].get<double>())), std::string::npos);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const std::string cfg = temp_path("ineq_cfg.txt");
  {
    std::ofstream f(cfg);
    f << "# poincare run\nsuite = poincare\nn = 4\np = 4\nq = 3\nno_timestamp = true\nformat = csv\n";
  }
  const auto r = run({"verify", "--config", cfg, "--q", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"\"q\"\":2.0"), std::string::npos);
  EXPECT_EQ(r.out.rfind("name,params", 0), 0u);
  {
    std::ofstream f(cfg);
    f << "suite poincare\n";
  }
  EXPECT_EQ(run({"verify", "--config", cfg}).code, 2);
  {
    std::ofstream f(cfg);
    f << "unknown_key = 1\n";
  }
  EXPECT_EQ(run({"verify", "--suite", "geometry", "--config", cfg}).code, 2);
  EXPECT_EQ(run({"verify", "--config", temp_path("missing.txt")}).code, 2);
}

TEST(Cli, WritesBothFormats) {
  const std::string base = temp_path("ineq_out.json");
  const auto r = run({"verify", "--suite", "frac_sobolev", "--format", "both", "--output", base, "--no-timestamp"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(read(base));
  EXPECT_TRUE(j["all_pass"].get<bool>());
  EXPECT_EQ(read(temp_path("ineq_out.csv")).rfind("name,params", 0), 0u);
}

TEST(Cli, GridParsing) {
  const auto g = cli::parse_grid("1:3:3", false);
  EXPECT_EQ(g.points(), (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_EQ(cli::parse_grid("2:2:1", false).points(), std::vector<double>{2.0});
  EXPECT_THROW(cli::parse_grid("1:3", false), ConfigError);
  EXPECT_THROW(cli::parse_grid("1:x:3", false), ConfigError);
  EXPECT_THROW(cli::parse_grid("0:3:3", true), ConfigError);
}
