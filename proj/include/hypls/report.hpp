#pragma once

// Structured verification reports and their JSON / CSV projections.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace hypls {

/// Which way the inequality points. For kGreater the report checks lhs >= rhs
/// and margin = lhs - rhs; for kLess it checks lhs <= rhs and margin = rhs - lhs;
/// for kEqual margin = -|lhs - rhs|. In every case margin >= 0 means "holds".
enum class Sense { kGreater, kLess, kEqual };

inline const char* sense_name(Sense s) {
  switch (s) {
    case Sense::kGreater: return ">=";
    case Sense::kLess: return "<=";
    case Sense::kEqual: return "==";
  }
  return "?";
}

struct VerificationReport {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double error_estimate = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  Sense sense = Sense::kGreater;
  bool diverged = false;
  nlohmann::json details = nlohmann::json::object();
};

/// Default tolerance: never fail on integration noise, never mask a violation above 1e-6.
inline double default_tolerance(double error_estimate) { return std::max(1e-8, 10.0 * error_estimate); }

inline double signed_margin(double lhs, double rhs, Sense s) {
  switch (s) {
    case Sense::kGreater: return lhs - rhs;
    case Sense::kLess: return rhs - lhs;
    case Sense::kEqual: return -std::abs(lhs - rhs);
  }
  return 0.0;
}

/// Fills margin, tolerance and pass. A negative `tolerance` selects the default.
inline VerificationReport make_report(std::string name, nlohmann::json params, double lhs, double rhs,
                                      double error_estimate, Sense sense, double tolerance = -1.0) {
  VerificationReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.sense = sense;
  r.error_estimate = std::isfinite(error_estimate) ? std::abs(error_estimate) : 0.0;
  r.tolerance = tolerance >= 0.0 ? tolerance : default_tolerance(r.error_estimate);
  r.diverged = !std::isfinite(lhs) || !std::isfinite(rhs);
  r.margin = r.diverged ? -std::numeric_limits<double>::infinity() : signed_margin(lhs, rhs, sense);
  r.pass = !r.diverged && r.margin >= -r.tolerance;
  return r;
}

/// A sweep along a one-parameter family: f(abscissa) against a target value.
struct SweepResult {
  std::string kind;
  std::vector<double> abscissae;
  std::vector<double> ratios;
  double target = 0.0;
  nlohmann::json details = nlohmann::json::object();
};

namespace detail {

// Non-finite doubles have no JSON literal; they are written as strings.
inline nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

inline std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["params"] = r.params;
  j["lhs"] = detail::json_number(r.lhs);
  j["rhs"] = detail::json_number(r.rhs);
  j["sense"] = sense_name(r.sense);
  j["margin"] = detail::json_number(r.margin);
  j["error_estimate"] = detail::json_number(r.error_estimate);
  j["tolerance"] = detail::json_number(r.tolerance);
  j["pass"] = r.pass;
  if (r.diverged) j["diverged"] = true;
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

inline nlohmann::json to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : reports) a.push_back(to_json(r));
  return a;
}

inline nlohmann::json to_json(const SweepResult& s) {
  nlohmann::json j;
  j["kind"] = s.kind;
  j["target"] = detail::json_number(s.target);
  j["abscissae"] = nlohmann::json::array();
  j["ratios"] = nlohmann::json::array();
  for (double x : s.abscissae) j["abscissae"].push_back(detail::json_number(x));
  for (double x : s.ratios) j["ratios"].push_back(detail::json_number(x));
  if (!s.details.empty()) j["details"] = s.details;
  return j;
}

/// One row per report; params as compact JSON in a quoted column.
inline void write_csv(std::ostream& os, const std::vector<VerificationReport>& reports) {
  os << "name,params,lhs,rhs,sense,margin,error_estimate,tolerance,pass\n";
  for (const auto& r : reports) {
    os << detail::csv_quote(r.name) << ',' << detail::csv_quote(r.params.dump()) << ',' << detail::g17(r.lhs) << ','
       << detail::g17(r.rhs) << ',' << sense_name(r.sense) << ',' << detail::g17(r.margin) << ','
       << detail::g17(r.error_estimate) << ',' << detail::g17(r.tolerance) << ',' << (r.pass ? "true" : "false")
       << '\n';
  }
}

/// Plot-ready table: abscissa, value, target.
inline void write_csv(std::ostream& os, const SweepResult& s) {
  os << "abscissa,ratio,target\n";
  for (std::size_t i = 0; i < s.abscissae.size(); ++i) {
    os << detail::g17(s.abscissae[i]) << ',' << detail::g17(s.ratios[i]) << ',' << detail::g17(s.target) << '\n';
  }
}

inline bool all_pass(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

}  // namespace hypls
