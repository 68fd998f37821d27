#include "doctest.h"

#include "heatctl/kernels.hpp"
#include "heatctl/spectral.hpp"

using namespace heatctl;

TEST_CASE("OpenMP kernels agree bitwise with the serial reference") {
  const Basis basis(Domain1D(1.0, 0.3, 0.8), 37);
  const auto f = kernels::step_factors(basis.eigenvalues(), 1.0 / 300);
  const auto coupling = coupling_matrix(basis.domain(), 37);
  std::srand(11);
  const Eigen::MatrixXd source = Eigen::MatrixXd::Random(37, 300);
  const Eigen::VectorXd y0 = Eigen::VectorXd::Random(37);

  Eigen::MatrixXd a, b;
  kernels::reference::forward_sweep(f, y0, source, a);
  kernels::forward_sweep(f, y0, source, b);
  CHECK(a == b);
  CHECK(a.cols() == 301);

  Eigen::MatrixXd fa, fb;
  kernels::reference::free_sweep(f, y0, 50, fa);
  kernels::free_sweep(f, y0, 50, fb);
  CHECK(fa == fb);

  Eigen::MatrixXd ma, mb;
  kernels::reference::cell_means(f, a, source, ma);
  kernels::cell_means(f, b, source, mb);
  CHECK(ma == mb);

  Eigen::MatrixXd ca, cb;
  kernels::reference::apply_columns(coupling.entries, source, ca);
  kernels::apply_columns(coupling.entries, source, cb);
  CHECK(ca == cb);
}

TEST_CASE("step factors are stable for stiff modes") {
  Eigen::VectorXd lam(3);
  lam << 1e-8, 10.0, 1e9;
  const auto f = kernels::step_factors(lam, 0.01);
  CHECK(f.gain[0] == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(f.mean_weight[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(f.decay[2] == 0.0);
  CHECK(f.gain[2] == doctest::Approx(1e-9));
  CHECK(std::isfinite(f.mean_source[2]));
  CHECK(f.mean_weight[1] == doctest::Approx(-std::expm1(-0.1) / 0.1));
}
