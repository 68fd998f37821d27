#include "doctest.h"

#include "heatctl/spectral.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

using namespace heatctl;

TEST_CASE("eigenvalues follow (k pi / L)^2") {
  CHECK(eigenvalue(1, Domain1D(1.0, 0.0, 1.0)) == doctest::Approx(kPi * kPi).epsilon(1e-15));
  CHECK(eigenvalue(2, Domain1D(2.0, 0.0, 2.0)) == doctest::Approx(kPi * kPi).epsilon(1e-15));
  CHECK(eigenvalue(3, Domain1D(1.0, 0.2, 0.4)) == doctest::Approx(9.0 * kPi * kPi).epsilon(1e-15));
  CHECK_THROWS_AS(eigenvalue(0, Domain1D()), DomainError);

  const Basis basis(Domain1D(1.0, 0.3, 0.8), 10);
  for (int k = 2; k <= 10; ++k) CHECK(basis.lambda(k) > basis.lambda(k - 1));
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(Domain1D(1.0, 0.8, 0.3), DomainError);
  CHECK_THROWS_AS(Domain1D(1.0, -0.1, 0.5), DomainError);
  CHECK_THROWS_AS(Domain1D(1.0, 0.2, 1.5), DomainError);
  CHECK_THROWS_AS(Domain1D(0.0, 0.0, 0.0), DomainError);
  CHECK(Domain1D(2.0, 0.0, 2.0).full_control());
  CHECK_FALSE(Domain1D(1.0, 0.3, 0.8).full_control());
}

TEST_CASE("coupling matrix") {
  SUBCASE("full control is the identity") {
    const auto m = coupling_matrix(Domain1D(1.0, 0.0, 1.0), 8);
    CHECK((m.entries - Eigen::MatrixXd::Identity(8, 8)).norm() == 0.0);
  }
  SUBCASE("half interval off-diagonal entry") {
    const auto m = coupling_matrix(Domain1D(1.0, 0.0, 0.5), 2);
    CHECK(m.entries(0, 1) == doctest::Approx(4.0 / (3.0 * kPi)).epsilon(1e-13));
    CHECK(m.entries(0, 0) == doctest::Approx(0.5).epsilon(1e-13));
  }
  SUBCASE("matches quadrature, symmetric, spectrum in [0, 1]") {
    const Domain1D d(1.3, 0.25, 0.9);
    const int modes = 12;
    const auto m = coupling_matrix(d, modes);
    const double s = std::sqrt(2.0 / d.length);
    for (int j = 1; j <= modes; ++j) {
      for (int k = 1; k <= modes; ++k) {
        auto f = [&](double x) { return s * std::sin(j * kPi * x / d.length) * s * std::sin(k * kPi * x / d.length); };
        double q = 0.0;
        const int panels = 16;
        for (int i = 0; i < panels; ++i) {
          const double l = d.a + (d.b - d.a) * i / panels;
          const double r = d.a + (d.b - d.a) * (i + 1) / panels;
          q += boost::math::quadrature::gauss<double, 20>::integrate(f, l, r);
        }
        CHECK(m.entries(j - 1, k - 1) == doctest::Approx(q).epsilon(1e-12).scale(1.0));
        CHECK(m.entries(j - 1, k - 1) == m.entries(k - 1, j - 1));
      }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.entries);
    CHECK(es.eigenvalues().minCoeff() >= -1e-14);
    CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-14);
  }
}

TEST_CASE("apply_indicator") {
  const auto m = coupling_matrix(Domain1D(1.0, 0.3, 0.8), 5);
  CHECK_THROWS_AS(apply_indicator(m, SpectralField::zero(4)), DimensionError);
  const auto g = apply_indicator(m, SpectralField::unit(5, 1));
  CHECK(g.norm() <= 1.0);
  CHECK(g.coeffs[0] == doctest::Approx(m.entries(0, 0)));
}

TEST_CASE("point evaluation is consistent with the coefficient norm") {
  const Domain1D d(2.0, 0.0, 2.0);
  Eigen::VectorXd c(4);
  c << 0.5, -1.0, 0.25, 2.0;
  const SpectralField f(c);
  const int points = 4001;
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(points, 0.0, d.length);
  const Eigen::VectorXd v = f.evaluate(d, x);
  CHECK(v[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(lp_norm_sampled(v, d.length, 2.0) == doctest::Approx(f.norm()).epsilon(1e-9));
}

TEST_CASE("lp_norm_sampled") {
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(11);
  CHECK(lp_norm_sampled(ones, 2.0, 2.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(lp_norm_sampled(ones, 2.0, 1.0) == doctest::Approx(2.0));
  Eigen::VectorXd v = Eigen::VectorXd::Zero(11);
  v[3] = -3.0;
  CHECK(lp_norm_sampled(v, 1.0, kInfinity) == 3.0);
  CHECK_THROWS_AS(lp_norm_sampled(ones, 1.0, 0.5), DomainError);
}

TEST_CASE("mollified indicator") {
  double mass = 0.0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) mass += bump(-1.0 + (i + 0.5) * 2.0 / n) * 2.0 / n;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(bump_cdf(-1.0) == 0.0);
  CHECK(bump_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(bump_cdf(1.0) == doctest::Approx(1.0).epsilon(1e-12));

  const Domain1D d(1.0, 0.3, 0.8);
  const auto m = mollify_indicator(d, 0.05, 2001);
  // boundary nodes: x = 0.3 is node 600, x = 0.8 is node 1600
  CHECK(m.values[600] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(m.values[1600] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(m.sharp[600] == 0.5);
  CHECK(m.values[1100] == doctest::Approx(1.0));
  CHECK(m.values[100] == 0.0);

  const auto half = mollify_indicator(d, 0.025, 2001);
  const double l1 = lp_norm_sampled(m.values - m.sharp, 1.0, 1.0);
  const double l1_half = lp_norm_sampled(half.values - half.sharp, 1.0, 1.0);
  CHECK(l1_half / l1 == doctest::Approx(0.5).epsilon(0.02));

  CHECK_THROWS_AS(mollify_indicator(d, 0.25, 2001), DomainError);
  CHECK_THROWS_AS(mollify_indicator(d, 0.0, 2001), DomainError);
  CHECK_THROWS_AS(mollify_indicator(d, 0.1, 8), DomainError);
}
