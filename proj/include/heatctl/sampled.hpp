#pragma once

// Sampled-data (zero-order hold) approximation: controls constant on each
// (tau_{i-1}, tau_i], cost J(y_n, f_n) with int ||f_n||^2 = h_n sum ||v_i||^2.
// The hold space carries the inner product h_n sum <., .>.

#include "heatctl/ocp.hpp"

namespace heatctl {

/// v_{1,n}, ..., v_{n,n}; column i-1 holds v_{i,n}.
struct HoldSequence {
  Eigen::MatrixXd holds;

  HoldSequence() = default;
  explicit HoldSequence(Eigen::MatrixXd v) : holds(std::move(v)) {}
  static HoldSequence zero(int modes, int n) { return HoldSequence(Eigen::MatrixXd::Zero(modes, n)); }

  int modes() const { return static_cast<int>(holds.rows()); }
  int subdivision() const { return static_cast<int>(holds.cols()); }
};

struct SampledSolution {
  HoldSequence holds;
  Trajectory state;
  Trajectory adjoint;
  double cost = 0.0;
  int iterations = 0;
  double residual = 0.0;  // max_i ||v_i - (1/h_n) chi_omega int_{I_i} p||
};

/// Minimum number of fine cells per sampling interval.
inline constexpr int kMinCellsPerHold = 8;

/// f_n(t) = v_{i,n} on (tau_{i-1}, tau_i].
SourceTrajectory hold_control(const HoldSequence& holds, const TimeGrid& grid);

/// A(V)_i = v_i - (1/h_n) chi_omega int_{tau_{i-1}}^{tau_i} p_hom dt.
HoldSequence reduced_apply_sampled(const HoldSequence& holds, const ControlProblem& problem);
HoldSequence reduced_rhs_sampled(const ControlProblem& problem, int n);

SampledSolution evaluate_holds(const HoldSequence& holds, const ControlProblem& problem);

/// tol <= 0 selects the problem's cg_tol.
SampledSolution solve_socp(const ControlProblem& problem, int n, double tol = 0.0,
                           const HoldSequence* initial_guess = nullptr);

}  // namespace heatctl
