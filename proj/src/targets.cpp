#include "heatctl/targets.hpp"

#include <cmath>
#include <random>

namespace heatctl {

SourceTrajectory default_target(int modes, const TimeGrid& grid) {
  if (modes < 1) {
    throw DomainError("target needs at least one mode");
  }
  SourceTrajectory yd = SourceTrajectory::zero(modes, grid.steps);
  const double w = 2.0 * kPi / grid.horizon;
  const double scale = 1.0 / (w * grid.dt());
  for (int m = 0; m < grid.steps; ++m) {
    const double t0 = grid.time(m);
    const double t1 = grid.time(m + 1);
    const double mean_cos = scale * (std::sin(w * t1) - std::sin(w * t0));
    const double mean_sin = -scale * (std::cos(w * t1) - std::cos(w * t0));
    yd.cells(0, m) = 1.0 + mean_cos;
    if (modes >= 2) {
      yd.cells(1, m) = 0.3 * mean_sin;
    }
  }
  return yd;
}

SourceTrajectory constant_mode_target(int modes, const TimeGrid& grid, int k) {
  if (k < 1 || k > modes) {
    throw DomainError("constant target mode out of range");
  }
  SourceTrajectory yd = SourceTrajectory::zero(modes, grid.steps);
  yd.cells.row(k - 1).setOnes();
  return yd;
}

SourceTrajectory random_target(int modes, const TimeGrid& grid, std::uint64_t seed) {
  if (modes < 1) {
    throw DomainError("target needs at least one mode");
  }
  std::mt19937_64 rng(seed);
  SourceTrajectory yd = SourceTrajectory::zero(modes, grid.steps);
  for (int m = 0; m < grid.steps; ++m) {
    for (int k = 0; k < modes; ++k) {
      const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      yd.cells(k, m) = 2.0 * unit - 1.0;
    }
  }
  return yd;
}

}  // namespace heatctl
