#include "heatctl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace heatctl {

double lp_time_norm(const BrokenTrajectory& diff, const TimeGrid& grid, double p) {
  if (!(p >= 1.0)) {
    throw DomainError("lp_time_norm requires p >= 1");
  }
  if (diff.pieces.empty() || diff.cells_per_piece() * diff.subdivision() != grid.steps) {
    throw DimensionError("lp_time_norm: trajectory does not match grid");
  }
  if (std::isinf(p)) {
    double best = 0.0;
    for (const auto& piece : diff.pieces) {
      best = std::max(best, piece.colwise().norm().maxCoeff());
    }
    return best;
  }
  double s = 0.0;
  for (const auto& piece : diff.pieces) {
    const Eigen::RowVectorXd norms = piece.colwise().norm();
    const Eigen::Index last = norms.size() - 1;
    for (Eigen::Index m = 0; m <= last; ++m) {
      const double w = (m == 0 || m == last) ? 0.5 : 1.0;
      s += w * std::pow(norms[m], p);
    }
  }
  return std::pow(s * grid.dt(), 1.0 / p);
}

double lp_time_norm(const Trajectory& diff, const TimeGrid& grid, double p) {
  if (diff.steps() != grid.steps) {
    throw DimensionError("lp_time_norm: trajectory does not match grid");
  }
  BrokenTrajectory single;
  single.pieces.push_back(diff.nodes);
  return lp_time_norm(single, grid, p);
}

OrderFit fit_order(const std::vector<std::pair<double, double>>& points) {
  OrderFit fit;
  std::vector<std::pair<double, double>> logs;
  for (const auto& [h, e] : points) {
    if (!(h > 0.0)) {
      throw FitError("fit_order: step sizes must be positive");
    }
    if (e == 0.0) {
      ++fit.excluded;
      continue;
    }
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw FitError("fit_order: errors must be finite and nonnegative");
    }
    logs.emplace_back(std::log(h), std::log(e));
  }
  fit.used = static_cast<int>(logs.size());
  if (fit.used < 3) {
    throw FitError("fit_order: need at least 3 nonzero errors, have " + std::to_string(fit.used));
  }
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= fit.used;
  my /= fit.used;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) {
    throw FitError("fit_order: step sizes must not all coincide");
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

std::string to_string(ProblemTag tag) { return tag == ProblemTag::impulse ? "impulse" : "sampled"; }

double metric_value(const ErrorRecord& r, const std::string& metric) {
  if (metric == "control_l2") return r.control_error;
  if (metric == "state_l2") return r.state_error_l2;
  if (metric == "state_l4") return r.state_error_l4;
  if (metric == "state_linf") return r.state_error_linf;
  if (metric == "cost_gap") return r.cost_gap;
  throw std::invalid_argument("unknown metric " + metric);
}

double theoretical_rate(ProblemTag tag, const std::string& metric) {
  if (tag == ProblemTag::sampled) {
    return 1.0;
  }
  if (metric == "control_l2" || metric == "state_l2" || metric == "cost_gap") return 0.5;
  if (metric == "state_l4") return 0.25;
  if (metric == "state_linf") return 0.25;  // one space dimension
  throw std::invalid_argument("unknown metric " + metric);
}

double minimum_slope(ProblemTag tag, const std::string& metric) {
  return tag == ProblemTag::sampled ? 0.9 : theoretical_rate(tag, metric) - 0.05;
}

std::vector<std::string> check_n_list(const std::vector<int>& n_list, const TimeGrid& grid) {
  std::vector<std::string> errors;
  if (n_list.size() < 4) {
    errors.push_back("n list needs at least 4 distinct values");
  }
  if (std::set<int>(n_list.begin(), n_list.end()).size() != n_list.size()) {
    errors.push_back("n list has duplicates");
  }
  for (int n : n_list) {
    if (n < 2) {
      errors.push_back("n = " + std::to_string(n) + " is below 2");
    } else if (grid.steps % n != 0) {
      errors.push_back("n = " + std::to_string(n) + " does not divide N_t = " + std::to_string(grid.steps));
    } else if (grid.steps / n < kMinCellsPerHold) {
      errors.push_back("n = " + std::to_string(n) + " leaves fewer than " + std::to_string(kMinCellsPerHold) +
                       " cells per interval");
    }
  }
  return errors;
}

namespace {

ErrorRecord impulse_record(const ControlProblem& problem, const OCPSolution& base, int n) {
  const auto& grid = problem.grid();
  const Subdivision sub = grid.subdivide(n);
  const ImpulseSolution s = solve_iocp(problem, n);
  ErrorRecord r;
  r.tag = ProblemTag::impulse;
  r.n = n;
  r.h = sub.h;
  r.control_error =
      time_l2_norm(SourceTrajectory(base.control.cells - embed_impulse_control(s.impulses, grid).cells), grid);
  const BrokenTrajectory diff = BrokenTrajectory::split(base.state, sub) - s.state;
  r.state_error_l2 = lp_time_norm(diff, grid, 2.0);
  r.state_error_l4 = lp_time_norm(diff, grid, 4.0);
  r.state_error_linf = lp_time_norm(diff, grid, kInfinity);
  r.cost = s.cost;
  r.cost_difference = s.cost - base.cost;
  r.cost_gap = std::abs(r.cost_difference);
  r.iterations = s.iterations;
  r.residual = s.residual;
  return r;
}

ErrorRecord sampled_record(const ControlProblem& problem, const OCPSolution& base, int n) {
  const auto& grid = problem.grid();
  const Subdivision sub = grid.subdivide(n);
  const SampledSolution s = solve_socp(problem, n);
  ErrorRecord r;
  r.tag = ProblemTag::sampled;
  r.n = n;
  r.h = sub.h;
  r.control_error =
      time_l2_norm(SourceTrajectory(base.control.cells - hold_control(s.holds, grid).cells), grid);
  const Trajectory diff{base.state.nodes - s.state.nodes};
  r.state_error_l2 = lp_time_norm(diff, grid, 2.0);
  r.state_error_l4 = lp_time_norm(diff, grid, 4.0);
  r.state_error_linf = lp_time_norm(diff, grid, kInfinity);
  r.cost = s.cost;
  r.cost_difference = s.cost - base.cost;
  r.cost_gap = std::abs(r.cost_difference);
  r.iterations = s.iterations;
  r.residual = s.residual;
  return r;
}

}  // namespace

ConvergenceReport run_convergence_study(const ControlProblem& problem, std::vector<int> n_list) {
  std::sort(n_list.begin(), n_list.end());
  const auto errors = check_n_list(n_list, problem.grid());
  if (!errors.empty()) {
    std::string msg = "invalid n list:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw DomainError(msg);
  }

  ConvergenceReport report;
  report.n_list = n_list;
  report.modes = problem.basis().modes();
  report.steps = problem.grid().steps;
  report.horizon = problem.grid().horizon;
  report.domain = problem.config().domain;
  report.target_norm = problem.target_norm();

  const OCPSolution base = solve_ocp(problem);
  report.baseline_cost = base.cost;
  report.baseline_iterations = base.iterations;
  report.baseline_residual = base.residual;

  const int count = static_cast<int>(n_list.size());
  report.records.resize(2 * count);
  std::vector<std::string> failures(2 * count);
  // Independent solves; results land in fixed slots so the report does not
  // depend on scheduling.
#pragma omp parallel for schedule(dynamic)
  for (int job = 0; job < 2 * count; ++job) {
    const int n = n_list[job % count];
    try {
      report.records[job] = job < count ? impulse_record(problem, base, n) : sampled_record(problem, base, n);
    } catch (const std::exception& e) {
      failures[job] = (job < count ? "impulse" : "sampled") + std::string(" n = ") + std::to_string(n) + ": " +
                      e.what();
    }
  }
  for (int job = 0; job < 2 * count; ++job) {
    if (!failures[job].empty()) {
      throw NonConvergenceError("convergence study aborted at " + failures[job], 0, 0.0);
    }
  }

  bool all_pass = true;
  bool any_fit = false;
  for (ProblemTag tag : {ProblemTag::impulse, ProblemTag::sampled}) {
    for (const auto& metric : metric_names()) {
      MetricFit f;
      f.tag = tag;
      f.metric = metric;
      f.rate = theoretical_rate(tag, metric);
      f.min_slope = minimum_slope(tag, metric);
      std::vector<std::pair<double, double>> points;
      for (const auto& r : report.records) {
        if (r.tag == tag) points.emplace_back(r.h, metric_value(r, metric));
      }
      try {
        const OrderFit fit = fit_order(points);
        f.slope = fit.slope;
        f.prefactor = std::exp(fit.intercept);
        f.excluded = fit.excluded;
        f.pass = f.slope >= f.min_slope;
        any_fit = true;
      } catch (const FitError&) {
        f.degenerate = true;
        f.excluded = static_cast<int>(points.size());
      }
      if (!f.degenerate && !f.pass) all_pass = false;
      report.fits.push_back(f);
    }
  }
  for (const auto& r : report.records) {
    if (r.tag == ProblemTag::sampled && r.cost_difference < 0.0) {
      report.sampled_cost_above_baseline = false;
    }
  }
  report.degenerate = !any_fit;
  report.passed = all_pass && report.sampled_cost_above_baseline;
  return report;
}

}  // namespace heatctl
