#include "heatctl/commands.hpp"

#include "heatctl/io.hpp"
#include "heatctl/lemmas.hpp"
#include "heatctl/oracle.hpp"
#include "heatctl/targets.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <set>

namespace heatctl::cli {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> kCommands{"solve", "impulse", "sampled", "converge", "lemmas", "oracle"};
const std::set<std::string> kTargets{"default", "zero", "random", "phi1"};

void check_subdivision(const RunConfig& c, int n, int min_n, std::vector<std::string>& errors) {
  if (n < min_n) {
    errors.push_back("n = " + std::to_string(n) + " must be >= " + std::to_string(min_n));
  } else if (c.timesteps >= 1 && c.timesteps % n != 0) {
    errors.push_back("n = " + std::to_string(n) + " does not divide timesteps = " + std::to_string(c.timesteps));
  } else if (c.timesteps >= 1 && c.timesteps / n < kMinCellsPerHold) {
    errors.push_back("n = " + std::to_string(n) + " leaves fewer than " + std::to_string(kMinCellsPerHold) +
                     " time steps per sampling interval");
  }
}

nlohmann::ordered_json config_json(const RunConfig& c) {
  return {{"command", c.command},
          {"domain_length", c.length},
          {"control_a", c.control_a},
          {"control_b", c.control_b},
          {"horizon", c.horizon},
          {"timesteps", c.timesteps},
          {"modes", c.modes},
          {"target", c.target},
          {"target_scale", c.target_scale},
          {"seed", c.seed},
          {"cg_tol", c.cg_tol},
          {"cg_max_iter", c.cg_max_iter}};
}

int fail_validation(const std::vector<std::string>& errors, std::ostream& log) {
  log << "configuration error:";
  for (const auto& e : errors) log << "\n  - " << e;
  log << '\n';
  return kConfigError;
}

// Runs a command body, mapping solver exceptions to exit code 3.
template <class F>
int guarded(const RunConfig& config, std::ostream& log, F&& body) {
  const auto errors = validate(config);
  if (!errors.empty()) {
    return fail_validation(errors, log);
  }
  try {
    return body();
  } catch (const NonConvergenceError& e) {
    log << "solver failure: " << e.what() << " (iterations " << e.iterations() << ", residual " << e.residual()
        << ")\n";
    return kSolverFailure;
  } catch (const std::exception& e) {
    log << "failure: " << e.what() << '\n';
    return kSolverFailure;
  }
}

fs::path prepare_out(const RunConfig& c) {
  fs::path dir(c.out);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> errors;
  if (!kCommands.count(c.command)) {
    errors.push_back("unknown command '" + c.command + "'");
  }
  if (!(c.length > 0.0) || !std::isfinite(c.length)) errors.push_back("domain length must be positive");
  if (!(0.0 <= c.control_a && c.control_a < c.control_b && c.control_b <= c.length)) {
    errors.push_back("control interval must satisfy 0 <= a < b <= L");
  }
  if (!(c.horizon > 0.0) || !std::isfinite(c.horizon)) errors.push_back("horizon must be positive");
  if (c.timesteps < 1) errors.push_back("timesteps must be >= 1");
  if (c.modes < 1) errors.push_back("modes must be >= 1");
  if (!kTargets.count(c.target)) {
    errors.push_back("target must be one of default, zero, random, phi1 (got '" + c.target + "')");
  }
  if (!std::isfinite(c.target_scale)) errors.push_back("target scale must be finite");
  if (!(c.cg_tol > 0.0)) errors.push_back("cg tolerance must be positive");
  if (c.cg_max_iter < 1) errors.push_back("cg iteration limit must be >= 1");
  if (c.out.empty()) errors.push_back("output directory must not be empty");

  if (c.command == "impulse") {
    check_subdivision(c, c.n, 2, errors);
  } else if (c.command == "sampled") {
    check_subdivision(c, c.n, 1, errors);
  } else if (c.command == "converge") {
    TimeGrid g;
    g.steps = std::max(c.timesteps, 1);
    for (const auto& e : check_n_list(c.n_list, g)) errors.push_back(e);
  } else if (c.command == "lemmas") {
    const double half = 0.5 * (c.control_b - c.control_a);
    if (c.eps_list.size() < 3) errors.push_back("eps list needs at least 3 values");
    for (double e : c.eps_list) {
      if (!(e > 0.0 && e < half)) {
        errors.push_back("eps = " + io::format_double(e) + " must lie in (0, (b - a) / 2)");
      }
    }
    if (c.lemma_modes < 1) errors.push_back("lemma modes must be >= 1");
    if (c.intuitive_modes < kMinIntuitiveModes) {
      errors.push_back("intuitive modes must be >= " + std::to_string(kMinIntuitiveModes));
    }
  } else if (c.command == "oracle") {
    check_subdivision(c, c.n, 2, errors);
    const long long ocp = static_cast<long long>(c.modes) * c.timesteps;
    if (ocp > kMaxOracleUnknowns) {
      errors.push_back("OCP oracle needs modes * timesteps <= " + std::to_string(kMaxOracleUnknowns) + ", got " +
                       std::to_string(ocp));
    }
    const long long holds = static_cast<long long>(c.modes) * c.n;
    if (holds > kMaxOracleUnknowns) {
      errors.push_back("SOCP oracle needs modes * n <= " + std::to_string(kMaxOracleUnknowns));
    }
    if (!(c.oracle_max_deviation > 0.0)) errors.push_back("oracle deviation bound must be positive");
  }
  return errors;
}

OCPConfig make_ocp_config(const RunConfig& c) {
  OCPConfig cfg;
  cfg.domain = Domain1D(c.length, c.control_a, c.control_b);
  cfg.grid = TimeGrid(c.horizon, c.timesteps);
  cfg.modes = c.modes;
  cfg.cg_tol = c.cg_tol;
  cfg.cg_max_iter = c.cg_max_iter;
  if (c.target == "default") {
    cfg.target = default_target(c.modes, cfg.grid);
  } else if (c.target == "phi1") {
    cfg.target = constant_mode_target(c.modes, cfg.grid, 1);
  } else if (c.target == "random") {
    cfg.target = random_target(c.modes, cfg.grid, c.seed);
  } else {
    cfg.target = SourceTrajectory::zero(c.modes, c.timesteps);
  }
  cfg.target.cells *= c.target_scale;
  return cfg;
}

int cmd_solve(const RunConfig& config, std::ostream& log) {
  return guarded(config, log, [&] {
    const ControlProblem problem(make_ocp_config(config));
    const OCPSolution s = solve_ocp(problem);
    const fs::path dir = prepare_out(config);
    io::write_cells_csv(dir / "control.csv", s.control, problem.grid());
    io::write_nodes_csv(dir / "state.csv", s.state, problem.grid());
    io::write_nodes_csv(dir / "adjoint.csv", s.adjoint, problem.grid());
    nlohmann::ordered_json j;
    j["config"] = config_json(config);
    j["cost"] = s.cost;
    j["half_target_norm_squared"] = 0.5 * problem.target_norm() * problem.target_norm();
    j["iterations"] = s.iterations;
    j["residual"] = s.residual;
    io::write_json(dir / "solve.json", j);
    if (!config.quiet) {
      log << "J = " << io::format_double(s.cost) << " after " << s.iterations << " CG iterations\n";
    }
    return static_cast<int>(kOk);
  });
}

int cmd_impulse(const RunConfig& config, std::ostream& log) {
  return guarded(config, log, [&] {
    const ControlProblem problem(make_ocp_config(config));
    const ImpulseSolution s = solve_iocp(problem, config.n);
    const fs::path dir = prepare_out(config);
    io::write_impulses_csv(dir / "impulses.csv", s.impulses, problem.grid());
    io::write_broken_csv(dir / "state.csv", s.state, problem.grid());
    io::write_nodes_csv(dir / "adjoint.csv", s.adjoint, problem.grid());
    nlohmann::ordered_json j;
    j["config"] = config_json(config);
    j["n"] = config.n;
    j["cost"] = s.cost;
    j["iterations"] = s.iterations;
    j["residual"] = s.residual;
    io::write_json(dir / "impulse.json", j);
    if (!config.quiet) {
      log << "J_n = " << io::format_double(s.cost) << " (n = " << config.n << ", " << s.iterations
          << " CG iterations)\n";
    }
    return static_cast<int>(kOk);
  });
}

int cmd_sampled(const RunConfig& config, std::ostream& log) {
  return guarded(config, log, [&] {
    const ControlProblem problem(make_ocp_config(config));
    const SampledSolution s = solve_socp(problem, config.n);
    const fs::path dir = prepare_out(config);
    io::write_holds_csv(dir / "holds.csv", s.holds, problem.grid());
    io::write_nodes_csv(dir / "state.csv", s.state, problem.grid());
    io::write_nodes_csv(dir / "adjoint.csv", s.adjoint, problem.grid());
    nlohmann::ordered_json j;
    j["config"] = config_json(config);
    j["n"] = config.n;
    j["cost"] = s.cost;
    j["iterations"] = s.iterations;
    j["residual"] = s.residual;
    io::write_json(dir / "sampled.json", j);
    if (!config.quiet) {
      log << "J(y_n, f_n) = " << io::format_double(s.cost) << " (n = " << config.n << ", " << s.iterations
          << " CG iterations)\n";
    }
    return static_cast<int>(kOk);
  });
}

int cmd_converge(const RunConfig& config, std::ostream& log) {
  return guarded(config, log, [&] {
    const ControlProblem problem(make_ocp_config(config));
    const ConvergenceReport report = run_convergence_study(problem, config.n_list);
    const fs::path dir = prepare_out(config);
    io::write_records_csv(dir / "records.csv", report);
    io::write_fits_csv(dir / "fits.csv", report);
    nlohmann::ordered_json j = io::report_json(report);
    j["run"] = config_json(config);
    io::write_json(dir / "report.json", j);
    if (!config.quiet) {
      for (const auto& f : report.fits) {
        log << to_string(f.tag) << ' ' << f.metric << ": slope "
            << (f.degenerate ? std::string("degenerate") : io::format_double(f.slope)) << " (need >= "
            << f.min_slope << ") " << (f.degenerate ? "skip" : f.pass ? "ok" : "FAIL");
        if (f.excluded > 0 && !f.degenerate) log << " [" << f.excluded << " zero errors excluded]";
        log << '\n';
      }
      if (!report.sampled_cost_above_baseline) log << "sampled cost fell below the continuous optimum\n";
    }
    return static_cast<int>(report.passed ? kOk : kAcceptanceFailure);
  });
}

int cmd_lemmas(const RunConfig& config, std::ostream& log) {
  return guarded(config, log, [&] {
    const Domain1D domain(config.length, config.control_a, config.control_b);
    std::vector<std::pair<std::string, SlopeCheck>> checks;

    Compare3Config c3;
    c3.domain = domain;
    c3.modes = config.lemma_modes;
    c3.t2 = config.horizon;
    for (auto& c : experiment_compare3(c3)) checks.emplace_back("compare3", std::move(c));

    IntuitiveConfig in;
    in.domain = domain;
    in.modes = config.intuitive_modes;
    checks.emplace_back("intuitive", experiment_intuitive(in));

    MollifierConfig mo;
    mo.domain = domain;
    mo.eps_list = config.eps_list;
    for (auto& c : experiment_mollifier(mo)) checks.emplace_back("mollifier", std::move(c));

    const fs::path dir = prepare_out(config);
    io::write_slope_checks_csv(dir / "lemma_slopes.csv", checks);
    io::write_slope_points_csv(dir / "lemma_points.csv", checks);
    bool all = true;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [name, c] : checks) {
      all = all && c.pass;
      arr.push_back({{"experiment", name},
                     {"label", c.label},
                     {"slope", c.slope},
                     {"bound", c.bound},
                     {"kind", c.upper ? "max" : "min"},
                     {"degenerate", c.degenerate},
                     {"pass", c.pass}});
      if (!config.quiet) {
        log << name << ' ' << c.label << ": slope " << io::format_double(c.slope) << (c.upper ? " <= " : " >= ")
            << c.bound << ' ' << (c.pass ? "ok" : "FAIL") << '\n';
      }
    }
    nlohmann::ordered_json j;
    j["config"] = config_json(config);
    j["checks"] = std::move(arr);
    j["passed"] = all;
    io::write_json(dir / "lemmas.json", j);
    return static_cast<int>(all ? kOk : kAcceptanceFailure);
  });
}

int cmd_oracle(const RunConfig& config, std::ostream& log) {
  return guarded(config, log, [&] {
    const ControlProblem problem(make_ocp_config(config));
    const std::vector<OracleComparison> results{oracle_ocp(problem), oracle_iocp(problem, config.n),
                                                oracle_socp(problem, config.n)};
    double worst = 0.0;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      worst = std::max(worst, r.relative_deviation);
      arr.push_back(io::oracle_json(r));
      if (!config.quiet) {
        log << r.solver << ": " << r.unknowns << " unknowns, relative deviation "
            << io::format_double(r.relative_deviation) << '\n';
      }
    }
    const bool ok = worst <= config.oracle_max_deviation;
    const fs::path dir = prepare_out(config);
    nlohmann::ordered_json j;
    j["config"] = config_json(config);
    j["n"] = config.n;
    j["comparisons"] = std::move(arr);
    j["max_relative_deviation"] = worst;
    j["bound"] = config.oracle_max_deviation;
    j["passed"] = ok;
    io::write_json(dir / "oracle.json", j);
    return static_cast<int>(ok ? kOk : kAcceptanceFailure);
  });
}

int execute(const RunConfig& config, std::ostream& log) {
  if (config.command == "solve") return cmd_solve(config, log);
  if (config.command == "impulse") return cmd_impulse(config, log);
  if (config.command == "sampled") return cmd_sampled(config, log);
  if (config.command == "converge") return cmd_converge(config, log);
  if (config.command == "lemmas") return cmd_lemmas(config, log);
  if (config.command == "oracle") return cmd_oracle(config, log);
  return fail_validation(validate(config), log);
}

int run(int argc, char** argv) {
  RunConfig config;
  CLI::App app{"Periodic heat-equation optimal control: continuous, impulse and sampled-data solvers"};
  app.set_config("--config", "", "INI or TOML file with option values (command line wins)");
  app.require_subcommand(1);

  app.add_option("--out", config.out, "Output directory")->capture_default_str();
  app.add_option("--seed", config.seed, "Seed for --target random")->capture_default_str();
  app.add_option("--n-list", config.n_list, "Subdivisions for converge")->delimiter(',')->capture_default_str();
  app.add_option("--modes", config.modes, "Spectral truncation K")->capture_default_str();
  app.add_option("--timesteps", config.timesteps, "Fine time steps N_t")->capture_default_str();
  app.add_flag("--quiet", config.quiet, "Suppress progress output");
  app.add_option("--length", config.length, "Domain length L")->capture_default_str();
  app.add_option("--control-a", config.control_a, "Left end of the control region")->capture_default_str();
  app.add_option("--control-b", config.control_b, "Right end of the control region")->capture_default_str();
  app.add_option("--horizon", config.horizon, "Period T")->capture_default_str();
  app.add_option("--target", config.target, "default | zero | random | phi1")->capture_default_str();
  app.add_option("--target-scale", config.target_scale, "Multiplier applied to the target")->capture_default_str();
  app.add_option("--cg-tol", config.cg_tol, "Relative CG tolerance")->capture_default_str();
  app.add_option("--cg-max-iter", config.cg_max_iter, "CG iteration limit")->capture_default_str();
  app.add_option("--n", config.n, "Subdivision for impulse, sampled and oracle")->capture_default_str();
  app.add_option("--eps-list", config.eps_list, "Mollifier widths for lemmas")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--lemma-modes", config.lemma_modes, "Modes for the compare experiment")->capture_default_str();
  app.add_option("--intuitive-modes", config.intuitive_modes, "Modes for the short-time experiment")
      ->capture_default_str();
  app.add_option("--oracle-max-deviation", config.oracle_max_deviation, "Acceptance bound for oracle")
      ->capture_default_str();

  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"solve", "Solve the continuous problem"},
           {"impulse", "Solve the impulse problem with --n intervals"},
           {"sampled", "Solve the sampled-data problem with --n intervals"},
           {"converge", "Convergence study over --n-list"},
           {"lemmas", "Auxiliary estimate experiments"},
           {"oracle", "Dense KKT comparison for all three solvers"}}) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }
  config.command = app.get_subcommands().front()->get_name();
  return execute(config, std::cerr);
}

}  // namespace heatctl::cli
