#pragma once

// Impulse approximation: n - 1 instantaneous jumps chi_omega u_{i-1,n} at
// tau_{i-1}, cost 1/2 (int ||y_n - y_d||^2 + 1/h_n sum ||u_{i-1,n}||^2).
// The impulse space carries the inner product (1/h_n) sum <., .>.

#include "heatctl/ocp.hpp"

namespace heatctl {

struct ImpulseSolution {
  ImpulseSequence impulses;
  BrokenTrajectory state;
  Trajectory adjoint;
  double cost = 0.0;
  int iterations = 0;
  double residual = 0.0;  // max_i ||u_{i-1,n} - h_n chi_omega p_n(tau_{i-1})||
};

double impulse_cost(const BrokenTrajectory& y, const ImpulseSequence& impulses, const SourceTrajectory& y_d,
                    const TimeGrid& grid);

/// A_n(U)_i = u_{i-1,n} - h_n chi_omega p_hom(tau_{i-1}).
ImpulseSequence reduced_apply_impulse(const ImpulseSequence& impulses, const ControlProblem& problem);
ImpulseSequence reduced_rhs_impulse(const ControlProblem& problem, int n);
double reduced_objective_impulse(const ImpulseSequence& impulses, const ControlProblem& problem);

ImpulseSolution evaluate_impulses(const ImpulseSequence& impulses, const ControlProblem& problem);

/// tol <= 0 selects the problem's cg_tol.
ImpulseSolution solve_iocp(const ControlProblem& problem, int n, double tol = 0.0,
                           const ImpulseSequence* initial_guess = nullptr);

/// u_n(t) = u_{i-1,n} / h_n on (tau_{i-1}, tau_i], zero on (0, tau_1].
SourceTrajectory embed_impulse_control(const ImpulseSequence& impulses, const TimeGrid& grid);

}  // namespace heatctl
