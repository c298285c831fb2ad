#pragma once

// Command-line front end. `run` is separate from main() so tests can drive
// it with captured streams.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tren/tren.hpp"

namespace tren::cli {

enum ExitCode : int { ok = 0, invalid_input = 1, numerical_failure = 2, validation_failed = 3 };

struct RunConfig {
  std::string command;
  std::string potential_file;
  int d = 3;
  double hbar = 1.0;
  std::optional<double> phi_override;
  int n_max = 3;
  int l_max = 3;
  int n = 0;
  int l = 0;
  std::optional<double> lambda;
  std::optional<double> Z;
  double tol = 1e-6;
  std::string output_path;
  std::string format = "csv";
  // validate / threshold extras
  std::string family;
  double a = 1.0;
  std::string transform = "r2";
  bool oracle = false;
  bool exact_t = false;
  int samples = 801;
};

namespace detail {

inline bool needs_potential(const std::string& cmd) {
  return cmd == "well" || cmd == "action" || cmd == "phi" || cmd == "spectrum" || cmd == "threshold";
}

inline RadialPotential load(const RunConfig& cfg) {
  auto p = load_potential(cfg.potential_file);
  if (cfg.Z) p = with_coupling(p, *cfg.Z);
  return p;
}

inline Settings settings_of(const RunConfig& cfg) {
  Settings s;
  s.hbar = cfg.hbar;
  s.validate();
  return s;
}

inline LogTransform transform_of(const std::string& name) {
  if (name == "r2") return LogTransform::squared_radius;
  if (name == "r1") return LogTransform::linear_radius;
  throw InvalidInput("--transform must be r2 or r1");
}

inline std::vector<QuantumNumbers> state_grid(const RunConfig& cfg) {
  std::vector<QuantumNumbers> states;
  for (int n = 0; n <= cfg.n_max; ++n)
    for (int l = 0; l <= cfg.l_max; ++l) states.emplace_back(n, l, cfg.d);
  return states;
}

inline Cell opt_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

inline Table threshold_table(const ThresholdRun& run) {
  Table t;
  t.header = {"n", "l", "d", "T", "T_ren", "Z_ren", "Z_unren", "Z_exact", "rel_err_ren", "rel_err_unren"};
  for (const auto& r : run.rows) {
    t.rows.push_back({static_cast<long>(r.state.n), static_cast<long>(r.state.l), static_cast<long>(r.state.d),
                      r.T, r.T_ren, r.Z_pred_ren, r.Z_pred_unren, opt_cell(r.Z_exact), opt_cell(r.rel_err_ren),
                      opt_cell(r.rel_err_unren)});
  }
  return t;
}

inline std::string t_source_comment(const ThresholdRun& run, bool fitted) {
  if (run.exact_t) return "t_source=exact";
  return "t_source=linear phi=" + format_number(run.phi) + (fitted ? " (fitted)" : " (flag)");
}

inline Table cmd_well(const RunConfig& cfg, const Settings& s) {
  const auto w = to_log_well(load(cfg), s);
  const auto fw = formal_well(w);
  if (cfg.samples < 2) throw InvalidInput("--samples must be >= 2");
  Table t;
  t.header = {"rho", "W", "V"};
  const double step = (w.rho_max - w.rho_min) / (cfg.samples - 1);
  for (int i = 0; i < cfg.samples; ++i) {
    const double rho = i + 1 == cfg.samples ? w.rho_max : w.rho_min + i * step;
    t.rows.push_back({rho, w.W(rho), fw.V(rho)});
  }
  return t;
}

inline Table cmd_action(const RunConfig& cfg, const Settings& s) {
  const auto w = to_log_well(load(cfg), s);
  const auto p = action_profile(w, s);
  Table t;
  t.header = {"lambda", "I", "t"};
  if (cfg.lambda) {
    const double I = action(w, *cfg.lambda, s);
    t.rows.push_back({*cfg.lambda, I, p.Phi_m - I});
    return t;
  }
  for (std::size_t i = 0; i < p.lambda_grid.size(); ++i) t.rows.push_back({p.lambda_grid[i], p.I_values[i], p.t_at(i)});
  return t;
}

inline Table cmd_phi(const RunConfig& cfg, const Settings& s) {
  const auto w = to_log_well(load(cfg), s);
  Table t;
  t.header = {"phi"};
  t.rows.push_back({fit_phi(action_profile(w, s))});
  return t;
}

inline Table cmd_tren(const RunConfig& cfg, const Settings& s) {
  double phi = 1.75;
  std::string source = "default";
  if (cfg.phi_override) {
    phi = *cfg.phi_override;
    source = "flag";
  } else if (!cfg.potential_file.empty()) {
    phi = fit_phi(action_profile(to_log_well(load(cfg), s), s));
    source = "fitted";
  }
  const QuantumNumbers q(cfg.n, cfg.l, cfg.d);
  const auto e = effective_numbers(q, LinearT{phi});
  Table t;
  t.comments.push_back("phi_source=" + source);
  t.header = {"n", "l", "d", "nu", "lambda", "phi", "T", "T_ren"};
  t.rows.push_back({static_cast<long>(q.n), static_cast<long>(q.l), static_cast<long>(q.d), e.nu, e.lambda, phi,
                    e.T, e.T_ren});
  return t;
}

inline Table cmd_spectrum(const RunConfig& cfg, const Settings& s) {
  const auto w = to_log_well(load(cfg), s);
  const double phi_m = action(w, 0.0, s);
  Table t;
  t.comments.push_back("Phi_m=" + format_number(phi_m));
  t.header = {"n", "lambda", "epsilon"};
  for (int n = 0; ground_state_threshold(n) <= phi_m; ++n) {
    const double lam = solve_spectrum(w, n, s);
    t.rows.push_back({static_cast<long>(n), lam, 0.5 * (w.V_m - lam * lam)});
  }
  return t;
}

inline Table cmd_threshold(const RunConfig& cfg, const Settings& s) {
  const auto family = CouplingFamily::from_potential(load(cfg), s);
  ThresholdOptions opt;
  opt.phi = cfg.phi_override;
  opt.exact_t = cfg.exact_t;
  opt.with_oracle = cfg.oracle;
  const auto run = threshold_report(family, state_grid(cfg), opt, s);
  auto t = threshold_table(run);
  t.comments.push_back(t_source_comment(run, !cfg.phi_override));
  return t;
}

inline Table cmd_ordering(const RunConfig& cfg, const Settings& s) {
  double phi = 1.75;
  std::string source = "default";
  if (!cfg.potential_file.empty()) {
    phi = fit_phi(action_profile(to_log_well(load(cfg), s), s));
    source = "fitted";
  }
  if (cfg.phi_override) {
    phi = *cfg.phi_override;
    source = "flag";
  }
  Table t;
  t.comments.push_back("phi=" + format_number(phi) + " source=" + source);
  t.header = {"n", "l", "nu", "lambda", "T", "T_ren"};
  for (const auto& r : ordering_table(cfg.n_max, cfg.l_max, cfg.d, phi))
    t.rows.push_back({static_cast<long>(r.n), static_cast<long>(r.l), r.nu, r.lambda, r.T, r.T_ren});
  return t;
}

struct ValidationOutcome {
  Table table;
  bool passed = false;
};

inline ValidationOutcome cmd_validate(const RunConfig& cfg, const Settings& s) {
  RadialPotential p = Lenz{cfg.a, 1.0};
  if (!cfg.potential_file.empty()) {
    p = load(cfg);
  } else if (cfg.family == "tietz") {
    p = Tietz{1.0};
  } else if (cfg.family != "lenz") {
    throw InvalidInput("--family must be lenz or tietz (or pass --potential)");
  }
  if (cfg.Z) p = with_coupling(p, *cfg.Z);
  const auto transform = transform_of(cfg.transform);
  const auto exact = CouplingFamily::from_potential(p, s);
  const auto predicted = CouplingFamily::from_potential(p, s, transform);

  ThresholdOptions opt;
  opt.phi = cfg.phi_override;
  opt.exact_t = cfg.exact_t;
  opt.with_oracle = true;
  opt.oracle_family = exact;
  const auto run = threshold_report(predicted, state_grid(cfg), opt, s);

  double max_err = 0.0;
  for (const auto& r : run.rows) max_err = std::max(max_err, *r.rel_err_ren);

  ValidationOutcome out;
  out.table = threshold_table(run);
  auto& c = out.table.comments;
  c.push_back("family=" + family_name(p) + " transform=" + cfg.transform + " " + t_source_comment(run, !cfg.phi_override));
  if (const auto* l = std::get_if<Lenz>(&p)) {
    const auto closed = lenz_exact_threshold(l->a, QuantumNumbers(0, 0, cfg.d));
    c.push_back("lenz closed form n=0 l=0: Z_corrected=" + format_number(closed.Z_corrected) +
                " Z_as_printed=" + format_number(closed.Z_as_printed) + " (as_printed not used in validation)");
  }
  c.push_back("max_rel_err_ren=" + format_number(max_err) + " tol=" + format_number(cfg.tol));
  out.passed = max_err <= cfg.tol;
  c.push_back(std::string("status=") + (out.passed ? "pass" : "FAIL"));
  return out;
}

inline void emit(const RunConfig& cfg, const Table& t, std::ostream& out) {
  std::ostringstream buf;
  if (cfg.format == "json")
    write_json(buf, t);
  else
    write_csv(buf, t);
  if (cfg.output_path.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) throw InvalidInput("cannot open output file '" + cfg.output_path + "'");
    f << buf.str();
  }
}

}  // namespace detail

/// Executes a parsed configuration. Maps failures to exit codes:
/// 1 invalid input, 2 numerical non-convergence, 3 validation failure.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (detail::needs_potential(cfg.command) && cfg.potential_file.empty())
      throw InvalidInput(cfg.command + ": --potential is required");
    if (!(cfg.tol > 0)) throw InvalidInput("--tol must be > 0");
    if (cfg.n_max < 0 || cfg.l_max < 0) throw InvalidInput("--n-max and --l-max must be >= 0");
    if (cfg.format != "csv" && cfg.format != "json") throw InvalidInput("--format must be csv or json");
    const auto s = detail::settings_of(cfg);
    Table t;
    int code = ok;
    if (cfg.command == "well") {
      t = detail::cmd_well(cfg, s);
    } else if (cfg.command == "action") {
      t = detail::cmd_action(cfg, s);
    } else if (cfg.command == "phi") {
      t = detail::cmd_phi(cfg, s);
    } else if (cfg.command == "tren") {
      t = detail::cmd_tren(cfg, s);
    } else if (cfg.command == "spectrum") {
      t = detail::cmd_spectrum(cfg, s);
    } else if (cfg.command == "threshold") {
      t = detail::cmd_threshold(cfg, s);
    } else if (cfg.command == "ordering") {
      t = detail::cmd_ordering(cfg, s);
    } else if (cfg.command == "validate") {
      auto v = detail::cmd_validate(cfg, s);
      t = std::move(v.table);
      if (!v.passed) code = validation_failed;
    } else {
      throw InvalidInput("unknown command '" + cfg.command + "'");
    }
    detail::emit(cfg, t, out);
    return code;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return numerical_failure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return invalid_input;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return invalid_input;
  }
}

/// Parses argv-style arguments (without the program name) and runs.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renormalized effective quantum number for central potentials"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<double> phi, lambda, Z;

  auto common = [&](CLI::App* sub, bool potential) {
    if (potential) sub->add_option("--potential,-p", cfg.potential_file, "Potential JSON file");
    sub->add_option("--d", cfg.d, "Space dimension")->capture_default_str();
    sub->add_option("--hbar", cfg.hbar, "Reduced Planck constant")->capture_default_str();
    sub->add_option("--output,-o", cfg.output_path, "Write output to file instead of stdout");
    sub->add_option("--format", cfg.format, "csv or json")->capture_default_str();
    sub->add_option("--Z", Z, "Override the coupling");
  };
  auto states = [&](CLI::App* sub) {
    sub->add_option("--n-max", cfg.n_max, "Largest radial quantum number")->capture_default_str();
    sub->add_option("--l-max", cfg.l_max, "Largest orbital quantum number")->capture_default_str();
  };

  auto* well = app.add_subcommand("well", "Sample W(rho) and V(rho)");
  common(well, true);
  well->add_option("--samples", cfg.samples, "Number of rho samples")->capture_default_str();

  auto* act = app.add_subcommand("action", "Action profile I(lambda), t(lambda)");
  common(act, true);
  act->add_option("--lambda", lambda, "Single lambda instead of the profile grid");

  auto* phi_cmd = app.add_subcommand("phi", "Least-squares slope of t(lambda)");
  common(phi_cmd, true);

  auto* tren_cmd = app.add_subcommand("tren", "T and T_ren for one state");
  common(tren_cmd, true);
  tren_cmd->add_option("--n", cfg.n, "Radial quantum number")->capture_default_str();
  tren_cmd->add_option("--l", cfg.l, "Orbital quantum number")->capture_default_str();
  tren_cmd->add_option("--phi", phi, "Slope of t(lambda)");

  auto* spec = app.add_subcommand("spectrum", "Levels from the resummed quantization condition");
  common(spec, true);

  auto* thr = app.add_subcommand("threshold", "Critical couplings for (n, l) states");
  common(thr, true);
  states(thr);
  thr->add_option("--phi", phi, "Slope of t(lambda); fitted when omitted");
  thr->add_flag("--exact-t", cfg.exact_t, "Use the sampled t(lambda) instead of phi*lambda");
  thr->add_flag("--oracle", cfg.oracle, "Also run the node-counting oracle");

  auto* ord = app.add_subcommand("ordering", "Level ordering table");
  common(ord, true);
  states(ord);
  ord->add_option("--phi", phi, "Slope of t(lambda) (default 7/4)");

  auto* val = app.add_subcommand("validate", "Compare predicted thresholds with the exact oracle");
  common(val, true);
  states(val);
  val->add_option("--family", cfg.family, "lenz or tietz")->capture_default_str();
  val->add_option("--a", cfg.a, "Lenz exponent")->capture_default_str();
  val->add_option("--tol", cfg.tol, "Maximum relative error")->capture_default_str();
  val->add_option("--phi", phi, "Slope of t(lambda); fitted when omitted");
  val->add_option("--transform", cfg.transform, "r2 (default) or r1 (diagnostic)")->capture_default_str();
  val->add_flag("--exact-t", cfg.exact_t, "Use the sampled t(lambda) instead of phi*lambda");
  cfg.family = "lenz";

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return invalid_input;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  cfg.phi_override = phi;
  cfg.lambda = lambda;
  cfg.Z = Z;
  return run(cfg, out, err);
}

}  // namespace tren::cli
