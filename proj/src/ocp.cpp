#include "heatctl/ocp.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace heatctl {

void OCPConfig::validate() const {
  std::vector<std::string> errors;
  if (!(domain.length > 0.0)) errors.push_back("domain length must be positive");
  if (!(0.0 <= domain.a && domain.a < domain.b && domain.b <= domain.length)) {
    errors.push_back("control interval must satisfy 0 <= a < b <= L");
  }
  if (!(grid.horizon > 0.0)) errors.push_back("time horizon must be positive");
  if (grid.steps < 1) errors.push_back("time grid needs at least one step");
  if (modes < 1) errors.push_back("truncation order must be >= 1");
  if (!(cg_tol > 0.0)) errors.push_back("cg_tol must be positive");
  if (cg_max_iter < 1) errors.push_back("cg_max_iter must be >= 1");
  if (target.modes() != modes || target.steps() != grid.steps) {
    std::ostringstream os;
    os << "target must be " << modes << " x " << grid.steps << ", got " << target.modes() << " x "
       << target.steps();
    errors.push_back(os.str());
  } else if (!target.cells.allFinite()) {
    errors.push_back("target has non-finite entries");
  }
  if (!errors.empty()) {
    std::string msg = "invalid OCP configuration:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw DomainError(msg);
  }
}

namespace {

OCPConfig validated(OCPConfig c) {
  c.validate();
  return c;
}

}  // namespace

ControlProblem::ControlProblem(OCPConfig config)
    : config_(validated(std::move(config))),
      basis_(config_.domain, config_.modes),
      coupling_(coupling_matrix(config_.domain, config_.modes)),
      target_norm_(time_l2_norm(config_.target, config_.grid)) {}

ControlProblem ControlProblem::with_target(SourceTrajectory target) const {
  OCPConfig c = config_;
  c.target = std::move(target);
  return ControlProblem(std::move(c));
}

double cost(const Trajectory& y, const SourceTrajectory& u, const SourceTrajectory& y_d, const TimeGrid& grid) {
  if (y.steps() != grid.steps || u.steps() != grid.steps || y_d.steps() != grid.steps ||
      y.modes() != y_d.modes() || u.modes() != y_d.modes()) {
    throw DimensionError("cost: shape mismatch");
  }
  double tracking = 0.0;
  for (int m = 0; m < grid.steps; ++m) {
    tracking += 0.5 * ((y.nodes.col(m) - y_d.cells.col(m)).squaredNorm() +
                       (y.nodes.col(m + 1) - y_d.cells.col(m)).squaredNorm());
  }
  return 0.5 * grid.dt() * (tracking + u.cells.squaredNorm());
}

namespace {

void require_control(const SourceTrajectory& u, const ControlProblem& problem) {
  if (u.modes() != problem.basis().modes() || u.steps() != problem.grid().steps) {
    throw DimensionError("control shape does not match the problem");
  }
}

SourceTrajectory apply_coupling(const ControlProblem& problem, const Eigen::MatrixXd& cells) {
  SourceTrajectory out;
  kernels::apply_columns(problem.coupling().entries, cells, out.cells);
  return out;
}

}  // namespace

SourceTrajectory reduced_apply(const SourceTrajectory& u, const ControlProblem& problem) {
  require_control(u, problem);
  const auto& basis = problem.basis();
  const auto& grid = problem.grid();
  const PeriodicSolution y = solve_periodic_with_means(basis, apply_coupling(problem, u.cells), grid);
  const PeriodicSolution p = solve_periodic_adjoint_with_means(basis, y.means, grid);
  SourceTrajectory out = apply_coupling(problem, p.means.cells);
  out.cells = u.cells - out.cells;
  return out;
}

SourceTrajectory reduced_rhs(const ControlProblem& problem) {
  const SourceTrajectory rhs(-problem.target().cells);
  const PeriodicSolution p = solve_periodic_adjoint_with_means(problem.basis(), rhs, problem.grid());
  return apply_coupling(problem, p.means.cells);
}

double reduced_objective(const SourceTrajectory& u, const ControlProblem& problem) {
  require_control(u, problem);
  const PeriodicSolution y =
      solve_periodic_with_means(problem.basis(), apply_coupling(problem, u.cells), problem.grid());
  const double dt = problem.grid().dt();
  return 0.5 * dt * ((y.means.cells - problem.target().cells).squaredNorm() + u.cells.squaredNorm());
}

OCPSolution evaluate_control(const SourceTrajectory& u, const ControlProblem& problem) {
  require_control(u, problem);
  const auto& basis = problem.basis();
  const auto& grid = problem.grid();
  OCPSolution s;
  s.control = u;
  const PeriodicSolution y = solve_periodic_with_means(basis, apply_coupling(problem, u.cells), grid);
  const SourceTrajectory misfit(y.means.cells - problem.target().cells);
  const PeriodicSolution p = solve_periodic_adjoint_with_means(basis, misfit, grid);
  s.state = y.nodes;
  s.adjoint = p.nodes;
  const SourceTrajectory law = apply_coupling(problem, p.means.cells);
  s.residual = time_l2_norm(SourceTrajectory(u.cells - law.cells), grid);
  s.cost = cost(s.state, u, problem.target(), grid);
  return s;
}

OCPSolution solve_ocp(const ControlProblem& problem, const SourceTrajectory* initial_guess,
                      const IterateObserver& observer) {
  const int modes = problem.basis().modes();
  const auto& grid = problem.grid();
  Block x = Block::Zero(modes, grid.steps);
  if (initial_guess != nullptr) {
    require_control(*initial_guess, problem);
    x = initial_guess->cells;
  }
  const double dt = grid.dt();
  const BlockOperator apply = [&problem](const Block& v) {
    return reduced_apply(SourceTrajectory(v), problem).cells;
  };
  const BlockNorm norm = [dt](const Block& r) { return std::sqrt(dt * r.squaredNorm()); };
  const CgResult cg = conjugate_gradient(apply, reduced_rhs(problem).cells, x, dt, norm, problem.threshold(),
                                         problem.config().cg_max_iter, observer);
  if (!cg.converged) {
    throw NonConvergenceError("solve_ocp: conjugate gradients did not converge", cg.iterations, cg.residual);
  }
  OCPSolution s = evaluate_control(SourceTrajectory(std::move(x)), problem);
  s.iterations = cg.iterations;
  return s;
}

OCPSolution solve_ocp(const OCPConfig& config) { return solve_ocp(ControlProblem(config)); }

}  // namespace heatctl
