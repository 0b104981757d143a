#pragma once

// ineq_verify front end: constants, verify and sweep subcommands.
// Exit codes: 0 all reports pass, 1 some report fails, 2 configuration error.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypls/battery.hpp"

namespace hypls::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;
inline constexpr const char* kToolVersion = "1.0.0";

/// Inclusive grid "min:max:count".
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
  bool log = false;

  [[nodiscard]] std::vector<double> points() const {
    if (count == 1) return {lo};
    return log ? log_grid(lo, hi, count) : linear_grid(lo, hi, count);
  }
};

inline GridSpec parse_grid(const std::string& text, bool log) {
  GridSpec g;
  g.log = log;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw ConfigError("grid must be min:max:count, got '" + text + "'");
  try {
    std::size_t used = 0;
    g.lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("");
    g.hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("");
    g.count = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("");
  } catch (const std::logic_error&) {
    throw ConfigError("grid must be min:max:count, got '" + text + "'");
  }
  if (g.count < 1) throw ConfigError("grid count must be >= 1");
  if (!(g.lo <= g.hi) || (g.count > 1 && !(g.lo < g.hi))) throw ConfigError("grid requires min < max");
  if (log && !(g.lo > 0.0)) throw ConfigError("log grid requires min > 0");
  return g;
}

/// Flat key=value file; '#' starts a comment. Keys are long flag names.
inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  std::vector<std::pair<std::string, std::string>> out;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    for (char& ch : key) {
      if (ch == '_') ch = '-';
    }
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

namespace detail {

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = {"constants", "verify", "sweep"};
  return s;
}

// Splices the config file into the argument list right after the subcommand,
// so that flags given on the command line (parsed later, last one wins) override it.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> file;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config requires a file");
      file = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!file) return args;
  std::vector<std::string> injected;
  for (const auto& [k, v] : read_config_file(*file)) {
    if (k == "no-timestamp") {
      if (v == "true" || v == "1" || v.empty()) injected.push_back("--no-timestamp");
      else if (v != "false" && v != "0") throw ConfigError("no_timestamp must be true or false");
      continue;
    }
    injected.push_back("--" + k);
    injected.push_back(v);
  }
  std::size_t at = args.size();
  for (std::size_t i = 1; i < args.size(); ++i) {
    for (const auto& s : subcommands()) {
      if (args[i] == s) at = std::min(at, i + 1);
    }
  }
  if (at == args.size() && std::find_first_of(args.begin(), args.end(), subcommands().begin(), subcommands().end()) ==
                               args.end()) {
    throw ConfigError("a subcommand (constants, verify, sweep) is required");
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
  return args;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct OutputOptions {
  std::string path;
  std::string format;
  bool no_timestamp = false;
};

inline std::string with_extension(const std::string& path, const std::string& ext) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  const std::string stem = dot != std::string::npos && (slash == std::string::npos || dot > slash) ? path.substr(0, dot) : path;
  return stem + ext;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

// JSON and/or CSV to the output path, or the selected format to `out`.
inline void emit(const OutputOptions& o, const nlohmann::json& doc, const std::string& csv, std::ostream& out) {
  const std::string json_text = doc.dump(2) + "\n";
  if (o.path.empty()) {
    if (o.format == "both") throw ConfigError("--format both requires --output");
    out << (o.format == "csv" ? csv : json_text);
    return;
  }
  if (o.format == "json") write_file(o.path, json_text);
  if (o.format == "csv") write_file(o.path, csv);
  if (o.format == "both") {
    write_file(with_extension(o.path, ".json"), json_text);
    write_file(with_extension(o.path, ".csv"), csv);
  }
}

inline nlohmann::json document_header(const OutputOptions& o, const std::string& command) {
  nlohmann::json doc;
  doc["tool"] = "ineq_verify";
  doc["version"] = kToolVersion;
  doc["command"] = command;
  if (!o.no_timestamp) doc["timestamp"] = utc_timestamp();
  return doc;
}

template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

// One row of the constants table; values outside their window are reported as such.
struct ConstantRow {
  std::string name;
  std::optional<double> value;
  std::string note;
};

inline std::vector<ConstantRow> constant_table(int n_, double p, double q, std::optional<double> l) {
  const Dimension n(n_);
  const LorentzIndex idx(p, q);
  std::vector<ConstantRow> rows;
  auto add = [&rows](const std::string& name, auto f) {
    try {
      rows.push_back({name, f(), ""});
    } catch (const std::domain_error& e) {
      rows.push_back({name, std::nullopt, e.what()});
    }
  };
  add("sigma_n", [&] { return sigma(n.real()); });
  add("omega_sphere", [&] { return omega_sphere(n); });
  add("critical_q", [&] { return n.critical_q(); });
  add("poincare_const", [&] {
    if (!idx.poincare_window()) throw std::domain_error("requires 1 < q <= p");
    return poincare_const(n, idx);
  });
  add("poincare_const_root", [&] { return (n.real() - 1.0) / p; });
  add("alpha_nq", [&] { return alpha_nq(n, q); });
  add("mu_exp_q_n", [&] { return mu_exp(q, n.real()); });
  add("j_index", [&] { return static_cast<double>(j_index(n, q)); });
  add("mt_threshold", [&] { return mt_threshold(n, q); });
  add("talenti_const", [&] { return talenti_const(n, p); });
  add("ps_l_max", [&] {
    if (!(p < n.real())) throw std::domain_error("requires p < n");
    return ps_l_max(n, p, q);
  });
  if (l) {
    add("ps_frac_dimension", [&] {
      if (!(*l > q)) throw std::domain_error("requires l > q");
      return ps_frac_dimension(q, *l);
    });
    add("s_frac", [&] {
      if (!(*l > q)) throw std::domain_error("requires l > q");
      return s_frac(FracSobolevParams(ps_frac_dimension(q, *l), q));
    });
    add("s_npql", [&] { return s_npql(n, p, q, *l); });
    add("s_npql_pow_q", [&] { return std::pow(s_npql(n, p, q, *l), q); });
  }
  return rows;
}

}  // namespace detail

/// Runs the tool on an argument vector; all output goes to `out` / `err`.
inline int run(const std::vector<std::string>& argv_in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> argv;
  try {
    argv = detail::expand_config(argv_in);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  CLI::App app{"Numerical verification of sharp Lorentz-Sobolev inequalities on hyperbolic space", "ineq_verify"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  app.add_option("--config", "Flat key=value file; command-line flags override it");

  detail::OutputOptions v_out, s_out;
  std::uint64_t seed = 1;
  double rel_tol = 0.0;
  unsigned threads = 0;
  auto add_output = [](CLI::App* sub, detail::OutputOptions& outopt, const std::string& default_format) {
    outopt.format = default_format;
    sub->add_option("--output,-o", outopt.path, "Output file (stdout if omitted)");
    sub->add_option("--format", outopt.format, "json, csv or both")
        ->check(CLI::IsMember({"json", "csv", "both"}));
    sub->add_flag("--no-timestamp", outopt.no_timestamp, "Omit the timestamp for byte-identical output");
  };

  // constants
  auto* c_cmd = app.add_subcommand("constants", "Print the closed-form constants for (n, p, q[, l])");
  int c_n = 0;
  double c_p = 0.0, c_q = 0.0;
  std::optional<double> c_l;
  c_cmd->add_option("--n", c_n, "Dimension, >= 2")->required();
  c_cmd->add_option("--p", c_p, "Lorentz exponent p > 1")->required();
  c_cmd->add_option("--q", c_q, "Lorentz exponent q >= 1")->required();
  c_cmd->add_option("--l", c_l, "Target index of the Poincare-Sobolev inequality");
  std::string c_format = "text";
  c_cmd->add_option("--format", c_format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  std::string c_output;
  c_cmd->add_option("--output,-o", c_output, "Output file (stdout if omitted)");

  // verify
  auto* v_cmd = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  BatteryConfig bc;
  v_cmd->add_option("--suite", suite, "poincare, key_estimate, ps, frac_sobolev, mt, rearrangement, hardy, geometry, all")
      ->required();
  v_cmd->add_option("--n", bc.n, "Dimension override");
  v_cmd->add_option("--p", bc.p, "p override");
  v_cmd->add_option("--q", bc.q, "q override");
  v_cmd->add_option("--l", bc.l, "l override (ps); beta for frac_sobolev");
  v_cmd->add_option("--lambda", bc.lambda, "lambda override (mt)");
  v_cmd->add_option("--seed", seed, "Seed of the random instances");
  v_cmd->add_option("--rel-tol", rel_tol, "Additional tolerance relative to max(|lhs|, |rhs|)");
  v_cmd->add_option("--threads", threads, "Worker threads (default: INEQ_VERIFY_THREADS or all cores)");
  add_output(v_cmd, v_out, "json");

  // sweep
  auto* s_cmd = app.add_subcommand("sweep", "Evaluate a one-parameter family and emit a plot-ready table");
  std::string kind;
  int s_n = 4;
  double s_p = 4.0, s_q = 3.0, s_a = 1.0, s_T = 50.0, s_mt_a = 0.5;
  std::optional<std::string> lnra_text, lambda_text;
  std::string spacing = "linear";
  s_cmd->add_option("--kind", kind, "poincare-sharpness or mt-lambda")
      ->required()
      ->check(CLI::IsMember({"poincare-sharpness", "mt-lambda"}));
  s_cmd->add_option("--n", s_n, "Dimension");
  s_cmd->add_option("--p", s_p, "p (poincare-sharpness)");
  s_cmd->add_option("--q", s_q, "q");
  s_cmd->add_option("--a", s_a, "Head length a of u_{a,R} (poincare-sharpness)");
  s_cmd->add_option("--mt-a", s_mt_a, "Head length of the Moser profile (mt-lambda)");
  s_cmd->add_option("--T", s_T, "Cutoff of the Moser profile (mt-lambda)");
  s_cmd->add_option("--lnRa", lnra_text, "ln(R/a) grid min:max:count");
  s_cmd->add_option("--lambda", lambda_text, "lambda grid min:max:count");
  s_cmd->add_option("--spacing", spacing, "linear or log")->check(CLI::IsMember({"linear", "log"}));
  add_output(s_cmd, s_out, "csv");

  std::vector<std::string> rev(argv.rbegin(), argv.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  try {
    if (*c_cmd) {
      const auto rows = detail::constant_table(c_n, c_p, c_q, c_l);
      std::ostringstream os;
      if (c_format == "json") {
        nlohmann::json j;
        j["n"] = c_n;
        j["p"] = c_p;
        j["q"] = c_q;
        j["l"] = detail::optional_json(c_l);
        for (const auto& r : rows) j["constants"][r.name] = r.value ? nlohmann::json(*r.value) : nlohmann::json(r.note);
        os << j.dump(2) << "\n";
      } else if (c_format == "csv") {
        os << "name,value,note\n";
        for (const auto& r : rows) {
          os << r.name << ',' << (r.value ? hypls::detail::g17(*r.value) : "") << ','
             << hypls::detail::csv_quote(r.note) << '\n';
        }
      } else {
        for (const auto& r : rows) {
          os << std::left << std::setw(22) << r.name << ' '
             << (r.value ? hypls::detail::g17(*r.value) : "n/a (" + r.note + ")") << '\n';
        }
      }
      if (c_output.empty()) out << os.str();
      else detail::write_file(c_output, os.str());
      return kExitPass;
    }

    if (*v_cmd) {
      bc.seed = seed;
      bc.rel_tol = rel_tol;
      bc.threads = threads;
      const auto reports = run_battery(suite, bc);
      auto doc = detail::document_header(v_out, "verify");
      doc["config"] = {{"suite", suite},
                       {"n", detail::optional_json(bc.n)},
                       {"p", detail::optional_json(bc.p)},
                       {"q", detail::optional_json(bc.q)},
                       {"l", detail::optional_json(bc.l)},
                       {"lambda", detail::optional_json(bc.lambda)},
                       {"seed", seed},
                       {"rel_tol", rel_tol}};
      const bool ok = all_pass(reports);
      std::size_t failed = 0;
      for (const auto& r : reports) failed += !r.pass;
      doc["all_pass"] = ok;
      doc["count"] = reports.size();
      doc["failed"] = failed;
      doc["reports"] = to_json(reports);
      std::ostringstream csv;
      write_csv(csv, reports);
      detail::emit(v_out, doc, csv.str(), out);
      for (const auto& r : reports) {
        if (!r.pass) err << "FAIL " << r.name << " " << r.params.dump() << " margin=" << hypls::detail::g17(r.margin) << "\n";
      }
      err << "suite " << suite << ": " << reports.size() << " reports, " << failed << " failed\n";
      return ok ? kExitPass : kExitFail;
    }

    if (*s_cmd) {
      const Dimension n(s_n);
      SweepResult sw;
      nlohmann::json cfg = {{"kind", kind}, {"n", s_n}, {"q", s_q}, {"spacing", spacing}};
      if (kind == "poincare-sharpness") {
        if (lambda_text) throw ConfigError("--lambda does not apply to poincare-sharpness");
        const auto g = parse_grid(lnra_text.value_or("5:40:8"), spacing == "log");
        const LorentzIndex idx(s_p, s_q);
        sw = sharpness_sweep_poincare(n, idx, s_a, g.points());
        cfg["p"] = s_p;
        cfg["a"] = s_a;
        cfg["lnRa"] = lnra_text.value_or("5:40:8");
      } else {
        if (lnra_text) throw ConfigError("--lnRa does not apply to mt-lambda");
        const auto g = parse_grid(lambda_text.value_or("0:0.3:4"), spacing == "log");
        sw = mt_lambda_sweep(family_mt(n, s_q, s_mt_a, s_T), n, s_q, g.points());
        cfg["mt_a"] = s_mt_a;
        cfg["T"] = s_T;
        cfg["lambda"] = lambda_text.value_or("0:0.3:4");
      }
      auto doc = detail::document_header(s_out, "sweep");
      doc["config"] = cfg;
      doc["sweep"] = to_json(sw);
      std::ostringstream csv;
      write_csv(csv, sw);
      detail::emit(s_out, doc, csv.str(), out);
      return kExitPass;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace hypls::cli
