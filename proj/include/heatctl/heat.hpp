#pragma once

// Exact modal propagation of the Dirichlet heat semigroup on a uniform time
// grid: free decay, piecewise-constant sources, periodic forward and adjoint
// solves, and the periodic impulse system.

#include "heatctl/kernels.hpp"
#include "heatctl/spectral.hpp"

#include <vector>

namespace heatctl {

/// Uniform splitting of a grid into n sampling intervals (tau_i = i T / n).
struct Subdivision {
  int n = 1;
  int cells_per_interval = 1;
  double h = 1.0;

  int node(int i) const { return i * cells_per_interval; }
};

struct TimeGrid {
  double horizon = 1.0;
  int steps = 1;

  TimeGrid() = default;
  TimeGrid(double horizon, int steps);

  double dt() const { return horizon / steps; }
  double time(int m) const { return horizon * static_cast<double>(m) / steps; }
  /// Throws DomainError unless n >= 1 divides steps.
  Subdivision subdivide(int n) const;
};

/// Snapshots at the N_t + 1 grid nodes (one column per node).
struct Trajectory {
  Eigen::MatrixXd nodes;

  int modes() const { return static_cast<int>(nodes.rows()); }
  int steps() const { return static_cast<int>(nodes.cols()) - 1; }
  SpectralField at(int m) const { return SpectralField(nodes.col(m)); }
};

/// Values on the N_t cells (t_m, t_{m+1}], constant on each cell.
struct SourceTrajectory {
  Eigen::MatrixXd cells;

  SourceTrajectory() = default;
  explicit SourceTrajectory(Eigen::MatrixXd c) : cells(std::move(c)) {}
  static SourceTrajectory zero(int modes, int steps) {
    return SourceTrajectory(Eigen::MatrixXd::Zero(modes, steps));
  }

  int modes() const { return static_cast<int>(cells.rows()); }
  int steps() const { return static_cast<int>(cells.cols()); }
};

/// int_0^T <a, b> dt for piecewise-constant a, b.
double time_inner(const SourceTrajectory& a, const SourceTrajectory& b, const TimeGrid& grid);
/// ||f||_{L^2(0,T;L^2)}.
double time_l2_norm(const SourceTrajectory& f, const TimeGrid& grid);

/// u_{1,n}, ..., u_{n-1,n}; column j-1 holds u_{j,n}, applied at tau_j.
struct ImpulseSequence {
  Eigen::MatrixXd impulses;

  ImpulseSequence() = default;
  explicit ImpulseSequence(Eigen::MatrixXd u) : impulses(std::move(u)) {}
  static ImpulseSequence zero(int modes, int n) {
    return ImpulseSequence(Eigen::MatrixXd::Zero(modes, n - 1));
  }

  int modes() const { return static_cast<int>(impulses.rows()); }
  int subdivision() const { return static_cast<int>(impulses.cols()) + 1; }
};

/// Pieces y_{i,n} on [tau_{i-1}, tau_i], each sampled at its own grid nodes.
/// At an interior tau the left piece holds the pre-jump value and the right
/// piece the post-jump value.
struct BrokenTrajectory {
  std::vector<Eigen::MatrixXd> pieces;

  int modes() const { return pieces.empty() ? 0 : static_cast<int>(pieces.front().rows()); }
  int subdivision() const { return static_cast<int>(pieces.size()); }
  int cells_per_piece() const { return pieces.empty() ? 0 : static_cast<int>(pieces.front().cols()) - 1; }

  /// y_n(t) = y_{i,n}(t) on (tau_{i-1}, tau_i], y_n(0) = y_{1,n}(0).
  Trajectory left_continuous() const;
  /// Split a continuous trajectory at the nodes of a subdivision.
  static BrokenTrajectory split(const Trajectory& y, const Subdivision& sub);
};

BrokenTrajectory operator-(const BrokenTrajectory& a, const BrokenTrajectory& b);

/// Output of a periodic solve together with the exact cell means of the
/// solution (the piecewise-constant projection used by the reduced maps).
struct PeriodicSolution {
  Trajectory nodes;
  SourceTrajectory means;
};

SpectralField propagate_free(const Basis& basis, const SpectralField& y0, double t);

/// Exact modal variation of constants over one cell with constant source.
SpectralField step_with_source(const Basis& basis, const SpectralField& y, const SpectralField& f_cell,
                               double dt);

Trajectory solve_forward(const Basis& basis, const SpectralField& y0, const SourceTrajectory& source,
                         const TimeGrid& grid);

/// dy/dt - Laplace y = f, y(0) = y(T).
Trajectory solve_periodic(const Basis& basis, const SourceTrajectory& source, const TimeGrid& grid);
PeriodicSolution solve_periodic_with_means(const Basis& basis, const SourceTrajectory& source,
                                           const TimeGrid& grid);

/// dp/dt + Laplace p = r, p(0) = p(T).
Trajectory solve_periodic_adjoint(const Basis& basis, const SourceTrajectory& rhs, const TimeGrid& grid);
PeriodicSolution solve_periodic_adjoint_with_means(const Basis& basis, const SourceTrajectory& rhs,
                                                   const TimeGrid& grid);

/// Exact cell means of a forward trajectory driven by `source`.
SourceTrajectory cell_means(const Basis& basis, const Trajectory& y, const SourceTrajectory& source,
                            const TimeGrid& grid);

/// Periodic impulse system: free decay on each (tau_{i-1}, tau_i) with jumps
/// chi_omega u_{i-1,n} at tau_{i-1}, i = 2..n, and y_{1,n}(0) = y_{n,n}(T).
BrokenTrajectory solve_impulse_periodic(const Basis& basis, const ImpulseSequence& impulses,
                                        const CouplingMatrix& coupling, const TimeGrid& grid);

/// Exact cell means of a source-free broken trajectory.
SourceTrajectory broken_cell_means(const Basis& basis, const BrokenTrajectory& y, const TimeGrid& grid);

/// ||y(T) - y(0)|| / max(1, ||y(0)||).
double periodicity_residual(const Trajectory& y);
double periodicity_residual(const BrokenTrajectory& y);

}  // namespace heatctl
