#pragma once

// Command implementations behind the heatctl executable. Each command
// validates the whole RunConfig first and writes nothing if it is invalid.

#include "heatctl/analysis.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace heatctl::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kSolverFailure = 3, kAcceptanceFailure = 4 };

struct RunConfig {
  std::string command;

  double length = 1.0;
  double control_a = 0.3;
  double control_b = 0.8;
  double horizon = 1.0;
  int timesteps = 512;
  int modes = 32;

  std::string target = "default";  // default | zero | random | phi1
  double target_scale = 1.0;
  std::uint64_t seed = 0;

  double cg_tol = 1e-10;
  int cg_max_iter = 500;

  int n = 4;  // impulse, sampled and oracle commands
  std::vector<int> n_list{4, 8, 16, 32, 64};
  std::vector<double> eps_list{0.1, 0.05, 0.025, 0.0125, 0.00625};
  int lemma_modes = 256;
  int intuitive_modes = 1024;
  double oracle_max_deviation = 1e-8;

  std::string out = "heatctl-out";
  bool quiet = false;
};

/// Every violated constraint for the selected command (empty when valid).
std::vector<std::string> validate(const RunConfig& config);

/// Builds the solver configuration; call only on a validated RunConfig.
OCPConfig make_ocp_config(const RunConfig& config);

int cmd_solve(const RunConfig& config, std::ostream& log);
int cmd_impulse(const RunConfig& config, std::ostream& log);
int cmd_sampled(const RunConfig& config, std::ostream& log);
int cmd_converge(const RunConfig& config, std::ostream& log);
int cmd_lemmas(const RunConfig& config, std::ostream& log);
int cmd_oracle(const RunConfig& config, std::ostream& log);

/// Dispatches on config.command after validation.
int execute(const RunConfig& config, std::ostream& log);

/// Parses the command line (and an optional --config file) and runs.
int run(int argc, char** argv);

}  // namespace heatctl::cli
