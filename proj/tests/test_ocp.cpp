#include "doctest.h"

#include "helpers.hpp"

#include "heatctl/oracle.hpp"

#include <cmath>

using namespace heatctl;

TEST_CASE("single mode closed form") {
  OCPConfig c;
  c.domain = Domain1D(1.0, 0.0, 1.0);
  c.grid = TimeGrid(1.0, 64);
  c.modes = 1;
  c.target = constant_mode_target(1, c.grid);
  const OCPSolution s = solve_ocp(c);
  const double pi4 = std::pow(kPi, 4);
  const double state = 1.0 / (1.0 + pi4);
  const double control = kPi * kPi / (1.0 + pi4);
  CHECK(state == doctest::Approx(0.0101617).epsilon(1e-5));
  CHECK(control == doctest::Approx(0.100292).epsilon(1e-5));
  CHECK((s.state.nodes.array() - state).abs().maxCoeff() <= 1e-6);
  CHECK((s.control.cells.array() - control).abs().maxCoeff() <= 1e-6);
  CHECK(s.adjoint.nodes(0, 0) == doctest::Approx(control).epsilon(1e-6));
}

TEST_CASE("reduced map is symmetric and coercive") {
  const ControlProblem problem(testing::small_config());
  const auto& grid = problem.grid();
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const SourceTrajectory u(testing::random_block(6, 64, rng));
    const SourceTrajectory v(testing::random_block(6, 64, rng));
    const double uav = time_inner(reduced_apply(u, problem), v, grid);
    const double vau = time_inner(u, reduced_apply(v, problem), grid);
    CHECK(std::abs(uav - vau) <= 1e-12 * (1.0 + std::abs(uav)));
    CHECK(time_inner(reduced_apply(u, problem), u, grid) >= time_inner(u, u, grid));
  }
}

TEST_CASE("gradient of the reduced objective") {
  const ControlProblem problem(testing::small_config());
  std::mt19937_64 rng(2);
  const SourceTrajectory u(testing::random_block(6, 64, rng));
  const SourceTrajectory v(testing::random_block(6, 64, rng));
  const SourceTrajectory grad(reduced_apply(u, problem).cells - reduced_rhs(problem).cells);
  const double eps = 1e-5;
  const double fd = (reduced_objective(SourceTrajectory(u.cells + eps * v.cells), problem) -
                     reduced_objective(SourceTrajectory(u.cells - eps * v.cells), problem)) /
                    (2.0 * eps);
  CHECK(fd == doctest::Approx(time_inner(grad, v, problem.grid())).epsilon(1e-7));
}

TEST_CASE("conjugate gradients against the dense oracle") {
  const ControlProblem problem(testing::small_config(4, 64));
  const auto cmp = oracle_ocp(problem);
  CHECK(cmp.unknowns == 256);
  CHECK(cmp.relative_deviation <= 1e-8);
  CHECK_THROWS_AS(oracle_ocp(ControlProblem(testing::small_config(9, 64))), OracleSizeError);
}

TEST_CASE("solution properties") {
  const ControlProblem problem(testing::small_config(8, 128));
  const OCPSolution s = solve_ocp(problem);
  CHECK(s.residual <= problem.threshold());
  CHECK(periodicity_residual(s.state) <= 1e-10);
  CHECK(periodicity_residual(s.adjoint) <= 1e-10);
  const double upper = 0.5 * problem.target_norm() * problem.target_norm();
  CHECK(s.cost > 0.0);
  CHECK(s.cost < upper);
  // J(0) equals the upper end of the sandwich
  const OCPSolution zero = evaluate_control(SourceTrajectory::zero(8, 128), problem);
  CHECK(zero.cost == doctest::Approx(upper).epsilon(1e-12));

  SUBCASE("linear in the target") {
    const ControlProblem doubled = problem.with_target(SourceTrajectory(2.0 * problem.target().cells));
    const OCPSolution s2 = solve_ocp(doubled);
    CHECK((s2.control.cells - 2.0 * s.control.cells).norm() <= 1e-8 * s2.control.cells.norm());
    CHECK(s2.cost == doctest::Approx(4.0 * s.cost).epsilon(1e-8));
  }

  SUBCASE("independent of the initial guess") {
    std::mt19937_64 rng(1);
    const SourceTrajectory guess(testing::random_block(8, 128, rng));
    const OCPSolution other = solve_ocp(problem, &guess);
    CHECK((other.control.cells - s.control.cells).norm() <= 1e-8 * s.control.cells.norm());
  }

  SUBCASE("CG decreases the objective") {
    std::vector<double> values;
    solve_ocp(problem, nullptr,
              [&](const Block& u) { values.push_back(reduced_objective(SourceTrajectory(u), problem)); });
    REQUIRE(values.size() >= 2);
    for (std::size_t i = 1; i < values.size(); ++i) {
      CHECK(values[i] <= values[i - 1] + 1e-14 * std::abs(values[i - 1]));
    }
  }
}

TEST_CASE("zero target") {
  OCPConfig c = testing::small_config();
  c.target = SourceTrajectory::zero(6, 64);
  const OCPSolution s = solve_ocp(c);
  CHECK(s.control.cells.norm() == 0.0);
  CHECK(s.cost == 0.0);
  CHECK(s.iterations == 0);
}

TEST_CASE("configuration errors are aggregated") {
  OCPConfig c = testing::small_config();
  c.modes = 0;
  c.cg_tol = -1.0;
  try {
    c.validate();
    FAIL("expected a DomainError");
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("truncation order") != std::string::npos);
    CHECK(msg.find("cg_tol") != std::string::npos);
    CHECK(msg.find("target") != std::string::npos);
  }
}

TEST_CASE("iteration limit raises NonConvergenceError") {
  OCPConfig c = testing::small_config();
  c.cg_max_iter = 1;
  c.cg_tol = 1e-14;
  CHECK_THROWS_AS(solve_ocp(c), NonConvergenceError);
}
