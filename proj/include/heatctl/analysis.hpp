#pragma once

// Error metrics between the continuous optimum and its impulse / sampled-data
// approximations, log-log order fits, and the convergence study.

#include "heatctl/impulse.hpp"
#include "heatctl/sampled.hpp"

#include <string>
#include <vector>

namespace heatctl {

/// ||d||_{L^p(0,T;L^2)} by composite trapezoid of ||d(t)||^p per piece; for
/// p = infinity the max over all nodes, both one-sided values at jumps.
double lp_time_norm(const BrokenTrajectory& diff, const TimeGrid& grid, double p);
double lp_time_norm(const Trajectory& diff, const TimeGrid& grid, double p);

struct OrderFit {
  double slope = 0.0;
  double intercept = 0.0;
  int used = 0;
  int excluded = 0;  // points dropped because their error was zero
};

class FitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Least-squares slope of log(error) against log(h). Zero errors are dropped
/// (counted in `excluded`); fewer than three remaining points throw FitError.
OrderFit fit_order(const std::vector<std::pair<double, double>>& points);

enum class ProblemTag { impulse, sampled };
std::string to_string(ProblemTag tag);

struct ErrorRecord {
  ProblemTag tag = ProblemTag::impulse;
  int n = 0;
  double h = 0.0;
  double control_error = 0.0;  // ||u* - u_n*||_{L^2(0,T;L^2)}
  double state_error_l2 = 0.0;
  double state_error_l4 = 0.0;
  double state_error_linf = 0.0;
  double cost = 0.0;      // J_n (impulse) or J(ybar_n, f_n) (sampled)
  double cost_gap = 0.0;         // |cost - J(y*, u*)|
  double cost_difference = 0.0;  // cost - J(y*, u*), signed
  int iterations = 0;
  double residual = 0.0;
};

inline const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names{"control_l2", "state_l2", "state_l4", "state_linf", "cost_gap"};
  return names;
}

double metric_value(const ErrorRecord& r, const std::string& metric);

/// Theoretical order of a metric (lower bound on the observed slope is
/// rate - 0.05 for impulse metrics and 0.9 for sampled ones).
double theoretical_rate(ProblemTag tag, const std::string& metric);
double minimum_slope(ProblemTag tag, const std::string& metric);

struct MetricFit {
  ProblemTag tag = ProblemTag::impulse;
  std::string metric;
  double slope = 0.0;
  double prefactor = 0.0;  // exp(intercept)
  double rate = 0.0;
  double min_slope = 0.0;
  int excluded = 0;
  bool degenerate = false;
  bool pass = false;
};

struct ConvergenceReport {
  std::vector<int> n_list;
  int modes = 0;
  int steps = 0;
  double horizon = 0.0;
  Domain1D domain;
  double target_norm = 0.0;
  double baseline_cost = 0.0;
  int baseline_iterations = 0;
  double baseline_residual = 0.0;
  std::vector<ErrorRecord> records;  // impulse records then sampled, each sorted by n
  std::vector<MetricFit> fits;
  bool sampled_cost_above_baseline = true;
  bool degenerate = false;
  bool passed = false;
};

/// Solves the continuous problem on the fine grid, then the impulse and
/// sampled problems for every n, and fits convergence orders.
ConvergenceReport run_convergence_study(const ControlProblem& problem, std::vector<int> n_list);

/// Validation of an n list against a grid (sorted, distinct, n >= 2,
/// n | N_t, N_t / n >= 8, at least 4 values). Returns all violations.
std::vector<std::string> check_n_list(const std::vector<int>& n_list, const TimeGrid& grid);

}  // namespace heatctl
