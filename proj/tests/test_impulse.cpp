#include "doctest.h"

#include "helpers.hpp"

#include "heatctl/analysis.hpp"
#include "heatctl/oracle.hpp"

#include <cmath>

using namespace heatctl;

namespace {

double impulse_inner(const ImpulseSequence& a, const ImpulseSequence& b, double h) {
  return (a.impulses.array() * b.impulses.array()).sum() / h;
}

}  // namespace

TEST_CASE("impulse cost of a single unit impulse without target") {
  OCPConfig c = testing::small_config(5, 64);
  c.target = SourceTrajectory::zero(5, 64);
  const ControlProblem problem(c);
  ImpulseSequence u = ImpulseSequence::zero(5, 2);
  u.impulses(0, 0) = 1.0;
  const auto y = solve_impulse_periodic(problem.basis(), u, problem.coupling(), problem.grid());
  const double state = std::pow(lp_time_norm(y, problem.grid(), 2.0), 2);
  const double j = impulse_cost(y, u, problem.target(), problem.grid());
  CHECK(j == doctest::Approx(0.5 * (state + 2.0 / problem.grid().horizon)).epsilon(1e-14));
}

TEST_CASE("embedded impulse control") {
  const TimeGrid grid(1.0, 64);
  ImpulseSequence u = ImpulseSequence::zero(3, 2);
  u.impulses(0, 0) = 1.0;
  const auto e = embed_impulse_control(u, grid);
  CHECK(std::pow(time_l2_norm(e, grid), 2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(e.cells.leftCols(32).norm() == 0.0);
  CHECK(e.cells(0, 40) == doctest::Approx(2.0));
}

TEST_CASE("impulse reduced map is symmetric and coercive") {
  const ControlProblem problem(testing::small_config());
  const int n = 8;
  const double h = problem.grid().horizon / n;
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const ImpulseSequence u(testing::random_block(6, n - 1, rng));
    const ImpulseSequence v(testing::random_block(6, n - 1, rng));
    const double uav = impulse_inner(reduced_apply_impulse(u, problem), v, h);
    const double vau = impulse_inner(u, reduced_apply_impulse(v, problem), h);
    CHECK(std::abs(uav - vau) <= 1e-12 * (1.0 + std::abs(uav)));
    CHECK(impulse_inner(reduced_apply_impulse(u, problem), u, h) >= impulse_inner(u, u, h));
  }
}

TEST_CASE("gradient of the impulse objective") {
  const ControlProblem problem(testing::small_config());
  const int n = 4;
  const double h = 0.25;
  std::mt19937_64 rng(4);
  const ImpulseSequence u(testing::random_block(6, n - 1, rng));
  const ImpulseSequence v(testing::random_block(6, n - 1, rng));
  const ImpulseSequence grad(reduced_apply_impulse(u, problem).impulses -
                             reduced_rhs_impulse(problem, n).impulses);
  const double eps = 1e-5;
  const double fd = (reduced_objective_impulse(ImpulseSequence(u.impulses + eps * v.impulses), problem) -
                     reduced_objective_impulse(ImpulseSequence(u.impulses - eps * v.impulses), problem)) /
                    (2.0 * eps);
  CHECK(fd == doctest::Approx(impulse_inner(grad, v, h)).epsilon(1e-7));
}

TEST_CASE("impulse solver") {
  const ControlProblem problem(testing::small_config(4, 64));
  const auto cmp = oracle_iocp(problem, 4);
  CHECK(cmp.unknowns == 12);
  CHECK(cmp.relative_deviation <= 1e-8);

  const ImpulseSolution s = solve_iocp(problem, 8);
  CHECK(periodicity_residual(s.state) <= 1e-10);
  CHECK(s.cost > 0.0);
  CHECK(s.cost < 0.5 * problem.target_norm() * problem.target_norm());
  // u_{i-1} = h chi_omega p(tau_{i-1}) at the optimum
  CHECK(s.residual <= 1e-8);

  const ImpulseSolution s2 = solve_iocp(problem.with_target(SourceTrajectory(-3.0 * problem.target().cells)), 8);
  CHECK((s2.impulses.impulses + 3.0 * s.impulses.impulses).norm() <= 1e-8 * s2.impulses.impulses.norm());

  std::mt19937_64 rng(8);
  const ImpulseSequence guess(testing::random_block(4, 7, rng));
  const ImpulseSolution s3 = solve_iocp(problem, 8, 0.0, &guess);
  CHECK((s3.impulses.impulses - s.impulses.impulses).norm() <= 1e-8 * s.impulses.impulses.norm());

  OCPConfig zero = problem.config();
  zero.target = SourceTrajectory::zero(4, 64);
  const ImpulseSolution sz = solve_iocp(ControlProblem(zero), 4);
  CHECK(sz.impulses.impulses.norm() == 0.0);
  CHECK(sz.cost == 0.0);

  CHECK_THROWS_AS(solve_iocp(problem, 1), DomainError);
  CHECK_THROWS_AS(solve_iocp(problem, 5), DomainError);
}
