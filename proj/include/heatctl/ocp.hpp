#pragma once

// The continuous problem: minimize 1/2 int ||y - y_d||^2 + 1/2 int ||u||^2
// subject to the periodic controlled heat equation, solved by conjugate
// gradients on the reduced optimality map u -> u - chi_omega p(u).
//
// Controls are piecewise constant on the N_t cells of the time grid. States
// enter the adjoint through their exact cell means and the adjoint enters the
// control law through its exact cell means, which makes the discrete reduced
// map exactly self-adjoint in the L^2(0,T;L^2) inner product.

#include "heatctl/cg.hpp"
#include "heatctl/heat.hpp"

namespace heatctl {

struct OCPConfig {
  Domain1D domain{1.0, 0.3, 0.8};
  TimeGrid grid{1.0, 512};
  int modes = 64;
  SourceTrajectory target;
  double cg_tol = 1e-10;
  int cg_max_iter = 500;

  /// Throws DomainError listing every violated constraint.
  void validate() const;
};

/// Validated configuration plus the derived basis and coupling matrix.
class ControlProblem {
 public:
  explicit ControlProblem(OCPConfig config);

  const OCPConfig& config() const { return config_; }
  const Basis& basis() const { return basis_; }
  const CouplingMatrix& coupling() const { return coupling_; }
  const TimeGrid& grid() const { return config_.grid; }
  const SourceTrajectory& target() const { return config_.target; }
  /// ||y_d||_{L^2(0,T;L^2)}.
  double target_norm() const { return target_norm_; }
  /// Convergence threshold tol * (1 + ||y_d||).
  double threshold() const { return config_.cg_tol * (1.0 + target_norm_); }

  /// Same problem with another target.
  ControlProblem with_target(SourceTrajectory target) const;

 private:
  OCPConfig config_;
  Basis basis_;
  CouplingMatrix coupling_;
  double target_norm_;
};

struct OCPSolution {
  SourceTrajectory control;
  Trajectory state;
  Trajectory adjoint;
  double cost = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

/// J(y, u) = 1/2 int ||y - y_d||^2 + 1/2 int ||u||^2; composite trapezoid for
/// the state term (y_d constant per cell), exact cell sums for the control.
double cost(const Trajectory& y, const SourceTrajectory& u, const SourceTrajectory& y_d, const TimeGrid& grid);

/// A(u) = u - chi_omega p_hom(u), with p_hom driven by y(u) and y_d = 0.
SourceTrajectory reduced_apply(const SourceTrajectory& u, const ControlProblem& problem);
/// b = chi_omega p_inhom, with p_inhom driven by -y_d at zero control.
SourceTrajectory reduced_rhs(const ControlProblem& problem);
/// Discrete objective whose gradient is A(u) - b (states by exact cell means).
double reduced_objective(const SourceTrajectory& u, const ControlProblem& problem);

/// State, adjoint and PMP residual generated by a given control.
OCPSolution evaluate_control(const SourceTrajectory& u, const ControlProblem& problem);

OCPSolution solve_ocp(const ControlProblem& problem, const SourceTrajectory* initial_guess = nullptr,
                      const IterateObserver& observer = {});
OCPSolution solve_ocp(const OCPConfig& config);

}  // namespace heatctl
