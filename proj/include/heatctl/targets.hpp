#pragma once

// Target trajectories y_d, stored as exact cell averages on a time grid.

#include "heatctl/heat.hpp"

#include <cstdint>

namespace heatctl {

/// phi_1 (1 + cos(2 pi t / T)) + 0.3 phi_2 sin(2 pi t / T); the phi_2 term is
/// dropped when modes == 1.
SourceTrajectory default_target(int modes, const TimeGrid& grid);

/// phi_1 for all t.
SourceTrajectory constant_mode_target(int modes, const TimeGrid& grid, int k = 1);

/// Independent uniform(-1, 1) coefficients for every (cell, mode), drawn in
/// cell-major order from std::mt19937_64(seed). Each draw x maps to
/// 2 * ((x >> 11) * 2^-53) - 1, which does not depend on the standard library.
SourceTrajectory random_target(int modes, const TimeGrid& grid, std::uint64_t seed);

}  // namespace heatctl
