#include "heatctl/heat.hpp"

#include <cmath>
#include <string>

namespace heatctl {

namespace {

void require_modes(const Basis& basis, Eigen::Index rows, const char* what) {
  if (rows != basis.modes()) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(basis.modes()) + " modes, got " +
                         std::to_string(rows));
  }
}

void require_source(const Basis& basis, const SourceTrajectory& s, const TimeGrid& grid, const char* what) {
  require_modes(basis, s.cells.rows(), what);
  if (s.steps() != grid.steps) {
    throw DimensionError(std::string(what) + ": source has " + std::to_string(s.steps()) + " cells, grid has " +
                         std::to_string(grid.steps));
  }
}

// 1 / (1 - exp(-lambda T)) per mode.
Eigen::VectorXd periodic_resolvent(const Basis& basis, double horizon) {
  Eigen::VectorXd r(basis.modes());
  for (int k = 0; k < basis.modes(); ++k) {
    const double x = basis.eigenvalues()[k] * horizon;
    r[k] = x > 700.0 ? 1.0 : 1.0 / -std::expm1(-x);
  }
  return r;
}

Eigen::MatrixXd reversed_columns(const Eigen::MatrixXd& m) { return m.rowwise().reverse(); }

}  // namespace

TimeGrid::TimeGrid(double horizon_, int steps_) : horizon(horizon_), steps(steps_) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("time horizon must be positive and finite");
  }
  if (steps < 1) {
    throw DomainError("time grid needs at least one step");
  }
}

Subdivision TimeGrid::subdivide(int n) const {
  if (n < 1) {
    throw DomainError("subdivision count must be >= 1");
  }
  if (steps % n != 0) {
    throw DomainError("subdivision n = " + std::to_string(n) + " does not divide N_t = " + std::to_string(steps));
  }
  return Subdivision{n, steps / n, horizon / n};
}

double time_inner(const SourceTrajectory& a, const SourceTrajectory& b, const TimeGrid& grid) {
  if (a.cells.rows() != b.cells.rows() || a.cells.cols() != b.cells.cols()) {
    throw DimensionError("time_inner: shape mismatch");
  }
  return grid.dt() * a.cells.cwiseProduct(b.cells).sum();
}

double time_l2_norm(const SourceTrajectory& f, const TimeGrid& grid) {
  return std::sqrt(grid.dt() * f.cells.squaredNorm());
}

Trajectory BrokenTrajectory::left_continuous() const {
  const int per = cells_per_piece();
  const int n = subdivision();
  Trajectory out{Eigen::MatrixXd(modes(), n * per + 1)};
  out.nodes.col(0) = pieces.front().col(0);
  for (int i = 0; i < n; ++i) {
    out.nodes.middleCols(i * per + 1, per) = pieces[i].rightCols(per);
  }
  return out;
}

BrokenTrajectory BrokenTrajectory::split(const Trajectory& y, const Subdivision& sub) {
  if (y.steps() != sub.n * sub.cells_per_interval) {
    throw DimensionError("split: trajectory does not match subdivision");
  }
  BrokenTrajectory out;
  out.pieces.reserve(sub.n);
  for (int i = 0; i < sub.n; ++i) {
    out.pieces.push_back(y.nodes.middleCols(sub.node(i), sub.cells_per_interval + 1));
  }
  return out;
}

BrokenTrajectory operator-(const BrokenTrajectory& a, const BrokenTrajectory& b) {
  if (a.subdivision() != b.subdivision() || a.cells_per_piece() != b.cells_per_piece() || a.modes() != b.modes()) {
    throw DimensionError("broken trajectory difference: grid mismatch");
  }
  BrokenTrajectory out;
  out.pieces.reserve(a.pieces.size());
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    out.pieces.push_back(a.pieces[i] - b.pieces[i]);
  }
  return out;
}

SpectralField propagate_free(const Basis& basis, const SpectralField& y0, double t) {
  if (t < 0.0) {
    throw DomainError("propagate_free: negative time");
  }
  require_modes(basis, y0.coeffs.size(), "propagate_free");
  if (t == 0.0) {
    return y0;
  }
  const auto f = kernels::step_factors(basis.eigenvalues(), t);
  return SpectralField(f.decay.cwiseProduct(y0.coeffs));
}

SpectralField step_with_source(const Basis& basis, const SpectralField& y, const SpectralField& f_cell,
                               double dt) {
  if (!(dt > 0.0)) {
    throw DomainError("step_with_source: dt must be positive");
  }
  require_modes(basis, y.coeffs.size(), "step_with_source");
  require_modes(basis, f_cell.coeffs.size(), "step_with_source");
  const auto f = kernels::step_factors(basis.eigenvalues(), dt);
  return SpectralField(f.decay.cwiseProduct(y.coeffs) + f.gain.cwiseProduct(f_cell.coeffs));
}

Trajectory solve_forward(const Basis& basis, const SpectralField& y0, const SourceTrajectory& source,
                         const TimeGrid& grid) {
  require_modes(basis, y0.coeffs.size(), "solve_forward");
  require_source(basis, source, grid, "solve_forward");
  const auto f = kernels::step_factors(basis.eigenvalues(), grid.dt());
  Trajectory y;
  kernels::forward_sweep(f, y0.coeffs, source.cells, y.nodes);
  return y;
}

PeriodicSolution solve_periodic_with_means(const Basis& basis, const SourceTrajectory& source,
                                           const TimeGrid& grid) {
  require_source(basis, source, grid, "solve_periodic");
  const auto f = kernels::step_factors(basis.eigenvalues(), grid.dt());
  PeriodicSolution out;
  // Phi = int_0^T e^{(T-t)Laplace} f(t) dt, then y0 = (I - e^{T Laplace})^{-1} Phi.
  kernels::forward_sweep(f, Eigen::VectorXd::Zero(basis.modes()), source.cells, out.nodes.nodes);
  const Eigen::VectorXd y0 =
      out.nodes.nodes.col(grid.steps).cwiseProduct(periodic_resolvent(basis, grid.horizon));
  kernels::forward_sweep(f, y0, source.cells, out.nodes.nodes);
  kernels::cell_means(f, out.nodes.nodes, source.cells, out.means.cells);
  return out;
}

Trajectory solve_periodic(const Basis& basis, const SourceTrajectory& source, const TimeGrid& grid) {
  return solve_periodic_with_means(basis, source, grid).nodes;
}

PeriodicSolution solve_periodic_adjoint_with_means(const Basis& basis, const SourceTrajectory& rhs,
                                                   const TimeGrid& grid) {
  require_source(basis, rhs, grid, "solve_periodic_adjoint");
  // q(s) = p(T - s) solves dq/ds - Laplace q = -r(T - s).
  const SourceTrajectory reversed(-reversed_columns(rhs.cells));
  PeriodicSolution q = solve_periodic_with_means(basis, reversed, grid);
  q.nodes.nodes = reversed_columns(q.nodes.nodes);
  q.means.cells = reversed_columns(q.means.cells);
  return q;
}

Trajectory solve_periodic_adjoint(const Basis& basis, const SourceTrajectory& rhs, const TimeGrid& grid) {
  return solve_periodic_adjoint_with_means(basis, rhs, grid).nodes;
}

SourceTrajectory cell_means(const Basis& basis, const Trajectory& y, const SourceTrajectory& source,
                            const TimeGrid& grid) {
  require_source(basis, source, grid, "cell_means");
  if (y.steps() != grid.steps) {
    throw DimensionError("cell_means: trajectory does not match grid");
  }
  const auto f = kernels::step_factors(basis.eigenvalues(), grid.dt());
  SourceTrajectory out;
  kernels::cell_means(f, y.nodes, source.cells, out.cells);
  return out;
}

BrokenTrajectory solve_impulse_periodic(const Basis& basis, const ImpulseSequence& impulses,
                                        const CouplingMatrix& coupling, const TimeGrid& grid) {
  const int n = impulses.subdivision();
  if (n < 2) {
    throw DomainError("impulse system needs n >= 2");
  }
  require_modes(basis, impulses.impulses.rows(), "solve_impulse_periodic");
  require_modes(basis, coupling.entries.rows(), "solve_impulse_periodic");
  const Subdivision sub = grid.subdivide(n);

  Eigen::MatrixXd jumps;
  kernels::apply_columns(coupling.entries, impulses.impulses, jumps);

  // y_{1,n}(0) = (I - e^{T Laplace})^{-1} sum_j e^{(T - tau_{j-1}) Laplace} chi_omega u_{j-1,n}.
  const auto f = kernels::step_factors(basis.eigenvalues(), grid.dt());
  Eigen::VectorXd accumulated = Eigen::VectorXd::Zero(basis.modes());
  for (int j = 1; j < n; ++j) {
    const auto decay = kernels::step_factors(basis.eigenvalues(), grid.horizon - j * sub.h).decay;
    accumulated += decay.cwiseProduct(jumps.col(j - 1));
  }
  Eigen::VectorXd start = accumulated.cwiseProduct(periodic_resolvent(basis, grid.horizon));

  BrokenTrajectory y;
  y.pieces.resize(n);
  for (int i = 0; i < n; ++i) {
    kernels::free_sweep(f, start, sub.cells_per_interval, y.pieces[i]);
    if (i + 1 < n) {
      start = y.pieces[i].col(sub.cells_per_interval) + jumps.col(i);
    }
  }
  return y;
}

SourceTrajectory broken_cell_means(const Basis& basis, const BrokenTrajectory& y, const TimeGrid& grid) {
  require_modes(basis, y.modes(), "broken_cell_means");
  const int per = y.cells_per_piece();
  if (per * y.subdivision() != grid.steps) {
    throw DimensionError("broken_cell_means: trajectory does not match grid");
  }
  const auto f = kernels::step_factors(basis.eigenvalues(), grid.dt());
  const Eigen::MatrixXd no_source = Eigen::MatrixXd::Zero(basis.modes(), per);
  SourceTrajectory out(Eigen::MatrixXd(basis.modes(), grid.steps));
  Eigen::MatrixXd piece_means;
  for (int i = 0; i < y.subdivision(); ++i) {
    kernels::cell_means(f, y.pieces[i], no_source, piece_means);
    out.cells.middleCols(i * per, per) = piece_means;
  }
  return out;
}

double periodicity_residual(const Trajectory& y) {
  const Eigen::VectorXd first = y.nodes.col(0);
  const Eigen::VectorXd last = y.nodes.col(y.steps());
  return (last - first).norm() / std::max(1.0, first.norm());
}

double periodicity_residual(const BrokenTrajectory& y) {
  const Eigen::VectorXd first = y.pieces.front().col(0);
  const Eigen::VectorXd last = y.pieces.back().col(y.cells_per_piece());
  return (last - first).norm() / std::max(1.0, first.norm());
}

}  // namespace heatctl
