#ifndef JSOB_TOOLS_CLI_HPP
#define JSOB_TOOLS_CLI_HPP

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jsob/jsob.hpp"

namespace jsob::cli {

inline int exit_code_for(error_code code) {
  switch (code) {
    case error_code::invalid_config:
    case error_code::domain: return 2;
    case error_code::non_convergence:
    case error_code::non_finite:
    case error_code::overflow: return 3;
    case error_code::degree_cap: return 4;
  }
  return 2;
}

namespace detail {

using jsob::detail::fail;
using jsob::detail::require;

/// Raw string values of every option of the active subcommand, after the
/// config file has filled in whatever the command line left out.
class settings {
 public:
  std::map<std::string, std::string> values;  // key: flag name without dashes, e.g. "n-max"

  bool has(const std::string& key) const { return values.count(key) && !values.at(key).empty(); }

  std::string text(const std::string& key, const std::string& fallback = "") const {
    return has(key) ? values.at(key) : fallback;
  }

  double real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const std::string& s = values.at(key);
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    require(res.ec == std::errc{} && res.ptr == s.data() + s.size(), error_code::invalid_config,
            "--" + key + ": not a number '" + s + "'");
    return v;
  }

  int integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const std::string& s = values.at(key);
    int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    require(res.ec == std::errc{} && res.ptr == s.data() + s.size(), error_code::invalid_config,
            "--" + key + ": not an integer '" + s + "'");
    return v;
  }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    std::string s = text(key);
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      double v = 0;
      const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
      require(!item.empty() && res.ec == std::errc{} && res.ptr == item.data() + item.size(),
              error_code::invalid_config, "--" + key + ": not a number '" + item + "'");
      out.push_back(v);
    }
    return out;
  }
};

inline std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r"));
  s.erase(s.find_last_not_of(" \t\r") + 1);
  return s;
}

/// Flat "key = value" file; '#' starts a comment. Keys use underscores.
inline std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), error_code::invalid_config, "cannot open config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, error_code::invalid_config,
            path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

inline sobolev_config sobolev_from(const settings& s) {
  sobolev_config cfg;
  cfg.alpha = s.real("alpha", 0.0);
  cfg.beta = s.real("beta", 0.0);
  cfg.ell = s.integer("ell", 1);
  cfg.p = s.real("p", 2.0);
  if (s.has("omega"))
    cfg.omega = s.reals("omega");
  else
    cfg.omega.assign(static_cast<std::size_t>(std::max(cfg.ell, 0)), 0.0);
  cfg.validate();
  return cfg;
}

inline bool wants_svg(const settings& s) {
  const std::string f = s.text("format", "csv");
  require(f == "csv" || f == "svg", error_code::invalid_config, "--format must be csv or svg (got '" + f + "')");
  return f == "svg";
}

inline void csv_only(const settings& s, const char* command) {
  require(!wants_svg(s), error_code::invalid_config, std::string(command) + ": only --format csv is supported");
}

inline void cmd_basis(const settings& s, std::ostream& out) {
  csv_only(s, "basis");
  const auto cfg = sobolev_from(s);
  const int n_max = s.integer("n-max", 10);
  const auto q = sobolev_basis_set<long double>(cfg, n_max);
  out << "n,coefficients\n";
  for (std::size_t n = 0; n < q.size(); ++n) out << n << ",\"" << to_string(q[n]) << "\"\n";
}

inline void cmd_gram(const settings& s, std::ostream& out) {
  csv_only(s, "gram");
  const auto cfg = sobolev_from(s);
  const int n_max = s.integer("n-max", 10);
  const auto q = sobolev_basis_set<long double>(cfg, n_max);
  long double off = 0, diag = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i; j < q.size(); ++j) {
      const long double g = sobolev_inner_product<long double>(cfg, q[i], q[j]);
      if (i == j)
        diag = std::max(diag, std::fabs(g - 1));
      else
        off = std::max(off, std::fabs(g));
    }
  }
  out << "max_offdiag,max_diag_deviation\n"
      << format_decimal(static_cast<double>(off)) << ',' << format_decimal(static_cast<double>(diag)) << '\n';
}

inline void cmd_expand(const settings& s, std::ostream& out) {
  const bool svg_out = wants_svg(s);
  const auto cfg = sobolev_from(s);
  const int n_max = s.integer("n-max", 10);
  const double tol = s.real("tol", 1e-10);
  require(tol >= 1e-14 && tol < 1, error_code::invalid_config, "--tol must lie in [1e-14, 1)");
  const auto f = make_test_function<long double>(s.text("function", "exp"));
  const auto report = expand<long double>(cfg, f, n_max, static_cast<long double>(tol));
  if (!svg_out) {
    write_csv(out, report);
    return;
  }
  std::vector<double> xs, ys;
  for (std::size_t n = 0; n < report.errors.size(); ++n) {
    xs.push_back(static_cast<double>(n));
    ys.push_back(static_cast<double>(report.errors[n]));
  }
  svg::line_plot(out, xs, ys, "Sobolev error for " + report.function_name, "n", "error", true);
}

inline grid_axis axis_from(const settings& s, const std::string& lo_key, const std::string& lo_default,
                           const std::string& hi_key, const std::string& step_key, const std::string& step_default) {
  grid_axis a;
  a.lo = parse_grid_value(s.text(lo_key, lo_default), ("--" + lo_key).c_str());
  a.hi = s.has(hi_key) ? parse_grid_value(s.text(hi_key), ("--" + hi_key).c_str()) : a.lo;
  a.step = parse_grid_value(s.text(step_key, step_default), ("--" + step_key).c_str());
  return a;
}

inline void cmd_region(const settings& s, std::ostream& out) {
  const bool svg_out = wants_svg(s);
  const std::string mode = s.text("mode", "delta");
  if (mode == "verdict") {
    require(!svg_out, error_code::invalid_config, "region --mode verdict: only --format csv is supported");
    const auto alpha = axis_from(s, "alpha", "0", "alpha-max", "alpha-step", "0.25");
    const auto beta = axis_from(s, "beta", "0", "beta-max", "beta-step", "0.25");
    const auto p = axis_from(s, s.has("p-min") ? "p-min" : "p", "2", "p-max", "p-step", "0.25");
    write_verdict_csv(out, verdict_sweep(alpha, beta, p));
    return;
  }
  require(mode == "delta", error_code::invalid_config, "--mode must be delta or verdict (got '" + mode + "')");
  grid_axis gamma{parse_grid_value(s.text("gamma-min", "-1"), "--gamma-min"),
                  parse_grid_value(s.text("gamma-max", "6"), "--gamma-max"),
                  parse_grid_value(s.text("gamma-step", "0.05"), "--gamma-step")};
  grid_axis p{parse_grid_value(s.text("p-min", "1"), "--p-min"), parse_grid_value(s.text("p-max", "4.5"), "--p-max"),
              parse_grid_value(s.text("p-step", "0.05"), "--p-step")};
  const auto rows = delta_grid(gamma, p);
  if (!svg_out) {
    write_delta_csv(out, rows);
    return;
  }
  const auto gs = gamma.points();
  const auto ps = p.points();
  std::vector<double> xs, ys;
  for (const auto& g : gs) xs.push_back(g.to_double());
  for (const auto& q : ps) ys.push_back(q.to_double());
  std::vector<std::vector<int>> cells(gs.size(), std::vector<int>(ps.size(), 0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    cells[i / ps.size()][i % ps.size()] = rows[i].in_delta0 ? 2 : (rows[i].in_delta ? 1 : 0);
  svg::heatmap(out, xs, ys, cells, {"#f4f4f4", "#9ecae1", "#3182bd"}, "Convergence region (light: Delta, dark: Delta0)",
               "gamma", "p");
}

inline void cmd_complete(const settings& s, std::ostream& out) {
  csv_only(s, "complete");
  const auto cfg = sobolev_from(s);
  const auto r = completeness_verdict(cfg);
  std::string indices;
  for (const int k : r.violating_indices) indices += (indices.empty() ? "" : ";") + std::to_string(k);
  out << "complete,violating_indices,complete_for_all_nodes\n"
      << int(r.complete) << ',' << indices << ',' << int(complete_for_all_nodes(cfg.alpha, cfg.beta, cfg.p, cfg.ell))
      << '\n';
}

inline void cmd_counterexample(const settings& s, std::ostream& out) {
  const bool svg_out = wants_svg(s);
  const double alpha = s.real("alpha", 3.0);
  const double beta = s.real("beta", 0.0);
  const double p = s.real("p", 2.0);
  const int ell = s.integer("ell", 3);
  const int m = s.integer("m", 2);
  const int steps = s.integer("steps", 20);
  const double tol = s.real("tol", 1e-10);
  require(tol >= 1e-14 && tol < 1, error_code::invalid_config, "--tol must lie in [1e-14, 1)");
  const auto rows = incompleteness_demo(alpha, beta, p, ell, m, steps, static_cast<long double>(tol));
  if (!svg_out) {
    write_demo_csv(out, rows);
    return;
  }
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    xs.push_back(r.j);
    ys.push_back(static_cast<double>(r.value));
  }
  svg::line_plot(out, xs, ys, "Iterated integral of phi_m at x = 1 - 2^-j", "j", "value", false);
}

}  // namespace detail

/// Runs one command line (without the program name). Output goes to `out`
/// or to --out; errors are one line "error_code=<name> message=<text>" on `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jacobi-Sobolev expansions, regions and completeness checks", "jsob"};
  app.require_subcommand(1);

  const std::vector<std::string> common = {"alpha", "beta", "ell", "omega", "p", "n-max",
                                           "function", "out", "format", "config", "tol"};
  const std::map<std::string, std::vector<std::string>> extra = {
      {"region",
       {"mode", "gamma-min", "gamma-max", "gamma-step", "p-min", "p-max", "p-step", "alpha-max", "alpha-step",
        "beta-max", "beta-step"}},
      {"counterexample", {"m", "steps"}},
  };
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"basis", "coefficients of the orthonormal basis q_0..q_N"},
      {"gram", "deviation of the Sobolev Gram matrix of q_0..q_N from the identity"},
      {"expand", "Fourier-Sobolev coefficients and error curve of a registered function"},
      {"region", "convergence region grid (Delta, Delta0) or verdict sweep"},
      {"complete", "completeness verdict for the node vector"},
      {"counterexample", "divergence witness for a non-admissible node at x = 1"},
  };

  std::map<std::string, std::map<std::string, std::string>> storage;
  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    std::vector<std::string> keys = common;
    if (extra.count(name)) keys.insert(keys.end(), extra.at(name).begin(), extra.at(name).end());
    for (const auto& key : keys) {
      options[name][key] = sub->add_option("--" + key, storage[name][key])
                               ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error_code=invalid_config message=" << e.what() << '\n';
    return 2;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    detail::settings s;
    s.values = storage[name];
    if (s.has("config")) {
      for (const auto& [key, value] : detail::read_config(s.text("config"))) {
        jsob::detail::require(options[name].count(key) > 0 && key != "config", error_code::invalid_config,
                              "config file: unknown key '" + key + "' for " + name);
        if (options[name][key]->count() == 0) s.values[key] = value;
      }
    }

    std::ostringstream buffer;
    if (name == "basis") detail::cmd_basis(s, buffer);
    if (name == "gram") detail::cmd_gram(s, buffer);
    if (name == "expand") detail::cmd_expand(s, buffer);
    if (name == "region") detail::cmd_region(s, buffer);
    if (name == "complete") detail::cmd_complete(s, buffer);
    if (name == "counterexample") detail::cmd_counterexample(s, buffer);

    if (s.has("out")) {
      std::ofstream file(s.text("out"), std::ios::binary);
      jsob::detail::require(static_cast<bool>(file), error_code::invalid_config,
                            "cannot open output file '" + s.text("out") + "'");
      file << buffer.str();
    } else {
      out << buffer.str();
    }
    return 0;
  } catch (const jsob::error& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error_code=" << to_string(e.code()) << " message=" << msg << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace jsob::cli

#endif  // JSOB_TOOLS_CLI_HPP
