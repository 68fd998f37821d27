#include "heatctl/impulse.hpp"

#include <cmath>

namespace heatctl {

namespace {

Subdivision checked_subdivision(const ControlProblem& problem, int n) {
  if (n < 2) {
    throw DomainError("impulse problem needs n >= 2");
  }
  return problem.grid().subdivide(n);
}

void require_impulses(const ImpulseSequence& u, const ControlProblem& problem) {
  if (u.modes() != problem.basis().modes()) {
    throw DimensionError("impulse sequence has the wrong number of modes");
  }
  checked_subdivision(problem, u.subdivision());
}

// h * chi_omega p(tau_i) for i = 1..n-1.
Eigen::MatrixXd sampled_law(const ControlProblem& problem, const Trajectory& p, const Subdivision& sub) {
  Eigen::MatrixXd at_tau(problem.basis().modes(), sub.n - 1);
  for (int i = 1; i < sub.n; ++i) {
    at_tau.col(i - 1) = p.nodes.col(sub.node(i));
  }
  Eigen::MatrixXd out;
  kernels::apply_columns(problem.coupling().entries, at_tau, out);
  return sub.h * out;
}

}  // namespace

double impulse_cost(const BrokenTrajectory& y, const ImpulseSequence& impulses, const SourceTrajectory& y_d,
                    const TimeGrid& grid) {
  const int n = impulses.subdivision();
  const Subdivision sub = grid.subdivide(n);
  if (y.subdivision() != n || y.cells_per_piece() != sub.cells_per_interval || y_d.steps() != grid.steps ||
      y.modes() != y_d.modes() || impulses.modes() != y_d.modes()) {
    throw DimensionError("impulse_cost: trajectory, impulses and target are not aligned");
  }
  double tracking = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto& piece = y.pieces[i];
    for (int c = 0; c < sub.cells_per_interval; ++c) {
      const auto target = y_d.cells.col(sub.node(i) + c);
      tracking += 0.5 * ((piece.col(c) - target).squaredNorm() + (piece.col(c + 1) - target).squaredNorm());
    }
  }
  return 0.5 * (grid.dt() * tracking + impulses.impulses.squaredNorm() / sub.h);
}

ImpulseSequence reduced_apply_impulse(const ImpulseSequence& impulses, const ControlProblem& problem) {
  require_impulses(impulses, problem);
  const Subdivision sub = checked_subdivision(problem, impulses.subdivision());
  const auto& basis = problem.basis();
  const auto& grid = problem.grid();
  const BrokenTrajectory y = solve_impulse_periodic(basis, impulses, problem.coupling(), grid);
  const Trajectory p = solve_periodic_adjoint(basis, broken_cell_means(basis, y, grid), grid);
  return ImpulseSequence(impulses.impulses - sampled_law(problem, p, sub));
}

ImpulseSequence reduced_rhs_impulse(const ControlProblem& problem, int n) {
  const Subdivision sub = checked_subdivision(problem, n);
  const Trajectory p =
      solve_periodic_adjoint(problem.basis(), SourceTrajectory(-problem.target().cells), problem.grid());
  return ImpulseSequence(sampled_law(problem, p, sub));
}

double reduced_objective_impulse(const ImpulseSequence& impulses, const ControlProblem& problem) {
  require_impulses(impulses, problem);
  const Subdivision sub = checked_subdivision(problem, impulses.subdivision());
  const auto& grid = problem.grid();
  const BrokenTrajectory y = solve_impulse_periodic(problem.basis(), impulses, problem.coupling(), grid);
  const SourceTrajectory means = broken_cell_means(problem.basis(), y, grid);
  return 0.5 * (grid.dt() * (means.cells - problem.target().cells).squaredNorm() +
                impulses.impulses.squaredNorm() / sub.h);
}

ImpulseSolution evaluate_impulses(const ImpulseSequence& impulses, const ControlProblem& problem) {
  require_impulses(impulses, problem);
  const Subdivision sub = checked_subdivision(problem, impulses.subdivision());
  const auto& basis = problem.basis();
  const auto& grid = problem.grid();
  ImpulseSolution s;
  s.impulses = impulses;
  s.state = solve_impulse_periodic(basis, impulses, problem.coupling(), grid);
  const SourceTrajectory misfit(broken_cell_means(basis, s.state, grid).cells - problem.target().cells);
  s.adjoint = solve_periodic_adjoint(basis, misfit, grid);
  const Eigen::MatrixXd r = impulses.impulses - sampled_law(problem, s.adjoint, sub);
  s.residual = r.colwise().norm().maxCoeff();
  s.cost = impulse_cost(s.state, impulses, problem.target(), grid);
  return s;
}

ImpulseSolution solve_iocp(const ControlProblem& problem, int n, double tol,
                           const ImpulseSequence* initial_guess) {
  const Subdivision sub = checked_subdivision(problem, n);
  const double threshold = tol > 0.0 ? tol * (1.0 + problem.target_norm()) : problem.threshold();
  Block x = Block::Zero(problem.basis().modes(), n - 1);
  if (initial_guess != nullptr) {
    require_impulses(*initial_guess, problem);
    if (initial_guess->subdivision() != n) {
      throw DimensionError("initial impulse guess has the wrong subdivision");
    }
    x = initial_guess->impulses;
  }
  const BlockOperator apply = [&problem](const Block& v) {
    return reduced_apply_impulse(ImpulseSequence(v), problem).impulses;
  };
  // max_i ||r_i|| <= Euclidean norm of the whole block.
  const BlockNorm norm = [](const Block& r) { return r.norm(); };
  const CgResult cg = conjugate_gradient(apply, reduced_rhs_impulse(problem, n).impulses, x, 1.0 / sub.h, norm,
                                         threshold, problem.config().cg_max_iter);
  if (!cg.converged) {
    throw NonConvergenceError("solve_iocp: conjugate gradients did not converge for n = " + std::to_string(n),
                              cg.iterations, cg.residual);
  }
  ImpulseSolution s = evaluate_impulses(ImpulseSequence(std::move(x)), problem);
  s.iterations = cg.iterations;
  return s;
}

SourceTrajectory embed_impulse_control(const ImpulseSequence& impulses, const TimeGrid& grid) {
  const int n = impulses.subdivision();
  if (n < 2) {
    throw DomainError("impulse embedding needs n >= 2");
  }
  const Subdivision sub = grid.subdivide(n);
  SourceTrajectory out = SourceTrajectory::zero(impulses.modes(), grid.steps);
  for (int i = 2; i <= n; ++i) {
    const Eigen::VectorXd value = impulses.impulses.col(i - 2) / sub.h;
    for (int c = 0; c < sub.cells_per_interval; ++c) {
      out.cells.col(sub.node(i - 1) + c) = value;
    }
  }
  return out;
}

}  // namespace heatctl
