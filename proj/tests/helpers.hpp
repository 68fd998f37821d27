#pragma once

#include "heatctl/ocp.hpp"
#include "heatctl/targets.hpp"

#include <random>

namespace testing {

inline Eigen::MatrixXd random_block(int rows, int cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = dist(rng);
  }
  return m;
}

inline heatctl::OCPConfig small_config(int modes = 6, int steps = 64) {
  heatctl::OCPConfig c;
  c.domain = heatctl::Domain1D(1.0, 0.3, 0.8);
  c.grid = heatctl::TimeGrid(1.0, steps);
  c.modes = modes;
  c.target = heatctl::default_target(modes, c.grid);
  return c;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace testing
