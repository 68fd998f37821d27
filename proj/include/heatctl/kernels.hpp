#pragma once

// Data-parallel inner loops of the heat solver.
//
// Every kernel exists twice: `kernels::reference` is the plain serial loop
// kept for testing, `kernels::` is the OpenMP version used by the library.
// Both run the same per-element arithmetic, and no kernel reduces across the
// parallel index, so their outputs agree bitwise for any thread count.
//
// Layout: K x N matrices, one column per time node or cell, one row per mode.

#include <Eigen/Dense>

namespace heatctl::kernels {

/// Per-mode exact one-step factors for a step of length dt.
struct StepFactors {
  Eigen::VectorXd decay;        // exp(-lambda dt)
  Eigen::VectorXd gain;         // (1 - exp(-lambda dt)) / lambda
  Eigen::VectorXd mean_weight;  // (1 - exp(-lambda dt)) / (lambda dt)
  Eigen::VectorXd mean_source;  // (1 - mean_weight) / lambda
};

StepFactors step_factors(const Eigen::VectorXd& eigenvalues, double dt);

/// out(:,0) = y0; out(:,m+1) = decay .* out(:,m) + gain .* source(:,m).
void forward_sweep(const StepFactors& f, const Eigen::VectorXd& y0, const Eigen::MatrixXd& source,
                   Eigen::MatrixXd& out);
/// Source-free sweep over `steps` cells.
void free_sweep(const StepFactors& f, const Eigen::VectorXd& y0, int steps, Eigen::MatrixXd& out);
/// Exact cell means of a sweep: mean_weight .* nodes(:,m) + mean_source .* source(:,m).
void cell_means(const StepFactors& f, const Eigen::MatrixXd& nodes, const Eigen::MatrixXd& source,
                Eigen::MatrixXd& out);
/// out(:,m) = matrix * x(:,m), column by column.
void apply_columns(const Eigen::MatrixXd& matrix, const Eigen::MatrixXd& x, Eigen::MatrixXd& out);

namespace reference {

void forward_sweep(const StepFactors& f, const Eigen::VectorXd& y0, const Eigen::MatrixXd& source,
                   Eigen::MatrixXd& out);
void free_sweep(const StepFactors& f, const Eigen::VectorXd& y0, int steps, Eigen::MatrixXd& out);
void cell_means(const StepFactors& f, const Eigen::MatrixXd& nodes, const Eigen::MatrixXd& source,
                Eigen::MatrixXd& out);
void apply_columns(const Eigen::MatrixXd& matrix, const Eigen::MatrixXd& x, Eigen::MatrixXd& out);

}  // namespace reference

}  // namespace heatctl::kernels
