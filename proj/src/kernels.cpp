#include "heatctl/kernels.hpp"

#include <cmath>

namespace heatctl::kernels {

namespace {

// Above this exponent exp(-x) is flushed to zero.
constexpr double kExpCutoff = 700.0;

inline void sweep_row(const StepFactors& f, const Eigen::VectorXd& y0, const Eigen::MatrixXd& source,
                      Eigen::MatrixXd& out, Eigen::Index k) {
  const double d = f.decay[k];
  const double g = f.gain[k];
  double y = y0[k];
  out(k, 0) = y;
  for (Eigen::Index m = 0; m < source.cols(); ++m) {
    y = d * y + g * source(k, m);
    out(k, m + 1) = y;
  }
}

inline void free_row(const StepFactors& f, const Eigen::VectorXd& y0, int steps, Eigen::MatrixXd& out,
                     Eigen::Index k) {
  const double d = f.decay[k];
  double y = y0[k];
  out(k, 0) = y;
  for (int m = 0; m < steps; ++m) {
    y = d * y;
    out(k, m + 1) = y;
  }
}

inline void means_row(const StepFactors& f, const Eigen::MatrixXd& nodes, const Eigen::MatrixXd& source,
                      Eigen::MatrixXd& out, Eigen::Index k) {
  const double w = f.mean_weight[k];
  const double s = f.mean_source[k];
  for (Eigen::Index m = 0; m < out.cols(); ++m) {
    out(k, m) = w * nodes(k, m) + s * source(k, m);
  }
}

inline void column_product(const Eigen::MatrixXd& a, const Eigen::MatrixXd& x, Eigen::MatrixXd& out,
                           Eigen::Index m) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index inner = a.cols();
  for (Eigen::Index j = 0; j < rows; ++j) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < inner; ++k) {
      s += a(j, k) * x(k, m);
    }
    out(j, m) = s;
  }
}

}  // namespace

StepFactors step_factors(const Eigen::VectorXd& eigenvalues, double dt) {
  const Eigen::Index modes = eigenvalues.size();
  StepFactors f;
  f.decay.resize(modes);
  f.gain.resize(modes);
  f.mean_weight.resize(modes);
  f.mean_source.resize(modes);
  for (Eigen::Index k = 0; k < modes; ++k) {
    const double lam = eigenvalues[k];
    const double x = lam * dt;
    const double one_minus = x > kExpCutoff ? 1.0 : -std::expm1(-x);
    f.decay[k] = x > kExpCutoff ? 0.0 : std::exp(-x);
    f.gain[k] = one_minus / lam;
    f.mean_weight[k] = one_minus / x;
    f.mean_source[k] = (1.0 - f.mean_weight[k]) / lam;
  }
  return f;
}

void forward_sweep(const StepFactors& f, const Eigen::VectorXd& y0, const Eigen::MatrixXd& source,
                   Eigen::MatrixXd& out) {
  out.resize(y0.size(), source.cols() + 1);
  const Eigen::Index modes = y0.size();
#pragma omp parallel for schedule(static)
  for (Eigen::Index k = 0; k < modes; ++k) {
    sweep_row(f, y0, source, out, k);
  }
}

void free_sweep(const StepFactors& f, const Eigen::VectorXd& y0, int steps, Eigen::MatrixXd& out) {
  out.resize(y0.size(), steps + 1);
  const Eigen::Index modes = y0.size();
#pragma omp parallel for schedule(static)
  for (Eigen::Index k = 0; k < modes; ++k) {
    free_row(f, y0, steps, out, k);
  }
}

void cell_means(const StepFactors& f, const Eigen::MatrixXd& nodes, const Eigen::MatrixXd& source,
                Eigen::MatrixXd& out) {
  out.resize(source.rows(), source.cols());
  const Eigen::Index modes = source.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index k = 0; k < modes; ++k) {
    means_row(f, nodes, source, out, k);
  }
}

void apply_columns(const Eigen::MatrixXd& matrix, const Eigen::MatrixXd& x, Eigen::MatrixXd& out) {
  out.resize(matrix.rows(), x.cols());
  const Eigen::Index cols = x.cols();
#pragma omp parallel for schedule(static)
  for (Eigen::Index m = 0; m < cols; ++m) {
    column_product(matrix, x, out, m);
  }
}

namespace reference {

void forward_sweep(const StepFactors& f, const Eigen::VectorXd& y0, const Eigen::MatrixXd& source,
                   Eigen::MatrixXd& out) {
  out.resize(y0.size(), source.cols() + 1);
  for (Eigen::Index k = 0; k < y0.size(); ++k) {
    sweep_row(f, y0, source, out, k);
  }
}

void free_sweep(const StepFactors& f, const Eigen::VectorXd& y0, int steps, Eigen::MatrixXd& out) {
  out.resize(y0.size(), steps + 1);
  for (Eigen::Index k = 0; k < y0.size(); ++k) {
    free_row(f, y0, steps, out, k);
  }
}

void cell_means(const StepFactors& f, const Eigen::MatrixXd& nodes, const Eigen::MatrixXd& source,
                Eigen::MatrixXd& out) {
  out.resize(source.rows(), source.cols());
  for (Eigen::Index k = 0; k < source.rows(); ++k) {
    means_row(f, nodes, source, out, k);
  }
}

void apply_columns(const Eigen::MatrixXd& matrix, const Eigen::MatrixXd& x, Eigen::MatrixXd& out) {
  out.resize(matrix.rows(), x.cols());
  for (Eigen::Index m = 0; m < x.cols(); ++m) {
    column_product(matrix, x, out, m);
  }
}

}  // namespace reference

}  // namespace heatctl::kernels
