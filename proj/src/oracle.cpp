#include "heatctl/oracle.hpp"

namespace heatctl {

namespace {

void check_size(int unknowns, const char* solver) {
  if (unknowns > kMaxOracleUnknowns) {
    throw OracleSizeError(std::string(solver) + " oracle: " + std::to_string(unknowns) +
                          " unknowns exceeds the dense limit of " + std::to_string(kMaxOracleUnknowns));
  }
}

ControlProblem with_tolerance(const ControlProblem& problem, double tol) {
  OCPConfig c = problem.config();
  if (tol > 0.0) {
    c.cg_tol = tol;
  }
  return ControlProblem(std::move(c));
}

OracleComparison compare(std::string solver, const Eigen::MatrixXd& dense, const Eigen::MatrixXd& cg,
                         double residual) {
  OracleComparison out;
  out.solver = std::move(solver);
  out.unknowns = static_cast<int>(dense.size());
  const double scale = dense.norm();
  const double diff = (cg - dense).norm();
  out.relative_deviation = scale > 0.0 ? diff / scale : diff;
  out.cg_residual = residual;
  out.dense_solution = dense;
  out.cg_solution = cg;
  return out;
}

}  // namespace

Eigen::MatrixXd dense_operator(const BlockOperator& apply, int rows, int cols) {
  const int size = rows * cols;
  Eigen::MatrixXd a(size, size);
  Block probe = Block::Zero(rows, cols);
  for (int j = 0; j < size; ++j) {
    probe(j % rows, j / rows) = 1.0;
    const Block column = apply(probe);
    a.col(j) = Eigen::Map<const Eigen::VectorXd>(column.data(), size);
    probe(j % rows, j / rows) = 0.0;
  }
  return a;
}

Eigen::MatrixXd dense_solve(const BlockOperator& apply, const Block& rhs) {
  const int rows = static_cast<int>(rhs.rows());
  const int cols = static_cast<int>(rhs.cols());
  const Eigen::MatrixXd a = dense_operator(apply, rows, cols);
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), rhs.size());
  const Eigen::VectorXd x = a.partialPivLu().solve(b);
  return Eigen::Map<const Eigen::MatrixXd>(x.data(), rows, cols);
}

OracleComparison oracle_ocp(const ControlProblem& problem, double tol) {
  const int rows = problem.basis().modes();
  const int cols = problem.grid().steps;
  check_size(rows * cols, "OCP");
  const ControlProblem p = with_tolerance(problem, tol);
  const BlockOperator apply = [&p](const Block& v) { return reduced_apply(SourceTrajectory(v), p).cells; };
  const Eigen::MatrixXd dense = dense_solve(apply, reduced_rhs(p).cells);
  const OCPSolution cg = solve_ocp(p);
  return compare("ocp", dense, cg.control.cells, cg.residual);
}

OracleComparison oracle_iocp(const ControlProblem& problem, int n, double tol) {
  const int rows = problem.basis().modes();
  check_size(rows * (n - 1), "IOCP");
  const ControlProblem p = with_tolerance(problem, tol);
  const BlockOperator apply = [&p](const Block& v) {
    return reduced_apply_impulse(ImpulseSequence(v), p).impulses;
  };
  const Eigen::MatrixXd dense = dense_solve(apply, reduced_rhs_impulse(p, n).impulses);
  const ImpulseSolution cg = solve_iocp(p, n);
  return compare("iocp", dense, cg.impulses.impulses, cg.residual);
}

OracleComparison oracle_socp(const ControlProblem& problem, int n, double tol) {
  const int rows = problem.basis().modes();
  check_size(rows * n, "SOCP");
  const ControlProblem p = with_tolerance(problem, tol);
  const BlockOperator apply = [&p](const Block& v) { return reduced_apply_sampled(HoldSequence(v), p).holds; };
  const Eigen::MatrixXd dense = dense_solve(apply, reduced_rhs_sampled(p, n).holds);
  const SampledSolution cg = solve_socp(p, n);
  return compare("socp", dense, cg.holds.holds, cg.residual);
}

}  // namespace heatctl
