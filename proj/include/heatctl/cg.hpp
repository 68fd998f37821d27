#pragma once

// Matrix-free conjugate gradients on coefficient blocks with a weighted
// Euclidean inner product <a, b> = weight * sum(a .* b).

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace heatctl {

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what + " (iterations " + std::to_string(iterations) + ", residual " +
                           std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

struct CgResult {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

using Block = Eigen::MatrixXd;
using BlockOperator = std::function<Block(const Block&)>;
using BlockNorm = std::function<double(const Block&)>;
using IterateObserver = std::function<void(const Block&)>;

/// Solves A x = b for self-adjoint positive definite A, starting from x.
/// Stops once stop_norm(b - A x) <= threshold, where the residual is
/// recomputed from scratch before accepting convergence.
inline CgResult conjugate_gradient(const BlockOperator& apply, const Block& b, Block& x, double weight,
                                   const BlockNorm& stop_norm, double threshold, int max_iter,
                                   const IterateObserver& observer = {}) {
  auto inner = [weight](const Block& u, const Block& v) { return weight * u.cwiseProduct(v).sum(); };
  CgResult result;
  if (observer) {
    observer(x);
  }
  while (true) {
    Block r = b - apply(x);
    result.residual = stop_norm(r);
    if (result.residual <= threshold) {
      result.converged = true;
      return result;
    }
    if (result.iterations >= max_iter) {
      return result;
    }
    Block p = r;
    double rr = inner(r, r);
    while (result.iterations < max_iter) {
      ++result.iterations;
      const Block q = apply(p);
      const double pq = inner(p, q);
      if (!(pq > 0.0)) {
        throw std::runtime_error("conjugate_gradient: operator is not positive definite");
      }
      const double alpha = rr / pq;
      x += alpha * p;
      r -= alpha * q;
      if (observer) {
        observer(x);
      }
      if (stop_norm(r) <= threshold) {
        break;
      }
      const double rr_next = inner(r, r);
      p = r + (rr_next / rr) * p;
      rr = rr_next;
    }
  }
}

}  // namespace heatctl
