#pragma once

// Dense KKT oracle: assembles each reduced optimality map column by column
// from unit probes, solves the dense system by LU, and compares against the
// conjugate-gradient solution. Only meant for small instances.

#include "heatctl/impulse.hpp"
#include "heatctl/sampled.hpp"

#include <string>

namespace heatctl {

class OracleSizeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unknown-count limit for any dense oracle.
inline constexpr int kMaxOracleUnknowns = 512;

struct OracleComparison {
  std::string solver;
  int unknowns = 0;
  double relative_deviation = 0.0;  // ||x_cg - x_dense|| / ||x_dense|| (absolute if x_dense = 0)
  double cg_residual = 0.0;
  Eigen::MatrixXd dense_solution;
  Eigen::MatrixXd cg_solution;
};

/// Column j of the result is apply(e_j), with e_j shaped rows x cols.
Eigen::MatrixXd dense_operator(const BlockOperator& apply, int rows, int cols);

/// Dense solution of the reduced system with the given probe operator and rhs.
Eigen::MatrixXd dense_solve(const BlockOperator& apply, const Block& rhs);

/// tol <= 0 uses the problem's cg_tol.
OracleComparison oracle_ocp(const ControlProblem& problem, double tol = 0.0);
OracleComparison oracle_iocp(const ControlProblem& problem, int n, double tol = 0.0);
OracleComparison oracle_socp(const ControlProblem& problem, int n, double tol = 0.0);

}  // namespace heatctl
