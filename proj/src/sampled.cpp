#include "heatctl/sampled.hpp"

namespace heatctl {

namespace {

Subdivision checked_subdivision(const ControlProblem& problem, int n) {
  const Subdivision sub = problem.grid().subdivide(n);
  if (sub.cells_per_interval < kMinCellsPerHold) {
    throw DomainError("sampled problem needs N_t / n >= " + std::to_string(kMinCellsPerHold) + ", got " +
                      std::to_string(sub.cells_per_interval));
  }
  return sub;
}

void require_holds(const HoldSequence& v, const ControlProblem& problem) {
  if (v.modes() != problem.basis().modes()) {
    throw DimensionError("hold sequence has the wrong number of modes");
  }
}

// Interval averages (1/h) int_{I_i} of a piecewise-constant cell function.
Eigen::MatrixXd interval_averages(const Eigen::MatrixXd& cells, const Subdivision& sub) {
  Eigen::MatrixXd out(cells.rows(), sub.n);
  for (int i = 0; i < sub.n; ++i) {
    out.col(i) = cells.middleCols(sub.node(i), sub.cells_per_interval).rowwise().mean();
  }
  return out;
}

Eigen::MatrixXd coupled(const ControlProblem& problem, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd out;
  kernels::apply_columns(problem.coupling().entries, x, out);
  return out;
}

}  // namespace

SourceTrajectory hold_control(const HoldSequence& holds, const TimeGrid& grid) {
  const Subdivision sub = grid.subdivide(holds.subdivision());
  SourceTrajectory out(Eigen::MatrixXd(holds.modes(), grid.steps));
  for (int i = 0; i < sub.n; ++i) {
    out.cells.middleCols(sub.node(i), sub.cells_per_interval) =
        holds.holds.col(i).replicate(1, sub.cells_per_interval);
  }
  return out;
}

HoldSequence reduced_apply_sampled(const HoldSequence& holds, const ControlProblem& problem) {
  require_holds(holds, problem);
  const Subdivision sub = checked_subdivision(problem, holds.subdivision());
  const auto& basis = problem.basis();
  const auto& grid = problem.grid();
  const SourceTrajectory source(coupled(problem, hold_control(holds, grid).cells));
  const PeriodicSolution y = solve_periodic_with_means(basis, source, grid);
  const PeriodicSolution p = solve_periodic_adjoint_with_means(basis, y.means, grid);
  return HoldSequence(holds.holds - coupled(problem, interval_averages(p.means.cells, sub)));
}

HoldSequence reduced_rhs_sampled(const ControlProblem& problem, int n) {
  const Subdivision sub = checked_subdivision(problem, n);
  const PeriodicSolution p = solve_periodic_adjoint_with_means(
      problem.basis(), SourceTrajectory(-problem.target().cells), problem.grid());
  return HoldSequence(coupled(problem, interval_averages(p.means.cells, sub)));
}

SampledSolution evaluate_holds(const HoldSequence& holds, const ControlProblem& problem) {
  require_holds(holds, problem);
  const Subdivision sub = checked_subdivision(problem, holds.subdivision());
  const auto& basis = problem.basis();
  const auto& grid = problem.grid();
  const SourceTrajectory control = hold_control(holds, grid);
  const PeriodicSolution y = solve_periodic_with_means(basis, SourceTrajectory(coupled(problem, control.cells)), grid);
  const PeriodicSolution p =
      solve_periodic_adjoint_with_means(basis, SourceTrajectory(y.means.cells - problem.target().cells), grid);
  SampledSolution s;
  s.holds = holds;
  s.state = y.nodes;
  s.adjoint = p.nodes;
  const Eigen::MatrixXd r = holds.holds - coupled(problem, interval_averages(p.means.cells, sub));
  s.residual = r.colwise().norm().maxCoeff();
  s.cost = cost(s.state, control, problem.target(), grid);
  return s;
}

SampledSolution solve_socp(const ControlProblem& problem, int n, double tol, const HoldSequence* initial_guess) {
  const Subdivision sub = checked_subdivision(problem, n);
  const double threshold = tol > 0.0 ? tol * (1.0 + problem.target_norm()) : problem.threshold();
  Block x = Block::Zero(problem.basis().modes(), n);
  if (initial_guess != nullptr) {
    require_holds(*initial_guess, problem);
    if (initial_guess->subdivision() != n) {
      throw DimensionError("initial hold guess has the wrong subdivision");
    }
    x = initial_guess->holds;
  }
  const BlockOperator apply = [&problem](const Block& v) {
    return reduced_apply_sampled(HoldSequence(v), problem).holds;
  };
  const BlockNorm norm = [](const Block& r) { return r.norm(); };
  const CgResult cg = conjugate_gradient(apply, reduced_rhs_sampled(problem, n).holds, x, sub.h, norm, threshold,
                                         problem.config().cg_max_iter);
  if (!cg.converged) {
    throw NonConvergenceError("solve_socp: conjugate gradients did not converge for n = " + std::to_string(n),
                              cg.iterations, cg.residual);
  }
  SampledSolution s = evaluate_holds(HoldSequence(std::move(x)), problem);
  s.iterations = cg.iterations;
  return s;
}

}  // namespace heatctl
