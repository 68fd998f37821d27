// Times the serial reference kernels against the OpenMP ones on a
// convergence-study sized problem and checks that the outputs agree.

#include "heatctl/kernels.hpp"
#include "heatctl/spectral.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

namespace {

double seconds(const std::function<void()>& body, int repeats) {
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) body();
  const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
  return d.count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
  const int modes = argc > 1 ? std::atoi(argv[1]) : 256;
  const int steps = argc > 2 ? std::atoi(argv[2]) : 4096;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 20;

  const heatctl::Basis basis(heatctl::Domain1D(1.0, 0.3, 0.8), modes);
  const auto factors = heatctl::kernels::step_factors(basis.eigenvalues(), 1.0 / steps);
  const auto coupling = heatctl::coupling_matrix(basis.domain(), modes);
  const Eigen::MatrixXd source = Eigen::MatrixXd::Random(modes, steps);
  const Eigen::VectorXd y0 = Eigen::VectorXd::Random(modes);

  Eigen::MatrixXd a, b, ma, mb, ca, cb;
  namespace k = heatctl::kernels;
  std::printf("modes %d, steps %d, threads %d\n", modes, steps, omp_get_max_threads());
  std::printf("%-14s %12s %12s %8s %s\n", "kernel", "serial [s]", "openmp [s]", "speedup", "equal");

  auto report = [](const char* name, double ts, double tp, bool equal) {
    std::printf("%-14s %12.3e %12.3e %8.2f %s\n", name, ts, tp, ts / tp, equal ? "yes" : "NO");
  };

  double ts = seconds([&] { k::reference::forward_sweep(factors, y0, source, a); }, repeats);
  double tp = seconds([&] { k::forward_sweep(factors, y0, source, b); }, repeats);
  report("forward_sweep", ts, tp, a == b);

  ts = seconds([&] { k::reference::cell_means(factors, a, source, ma); }, repeats);
  tp = seconds([&] { k::cell_means(factors, b, source, mb); }, repeats);
  report("cell_means", ts, tp, ma == mb);

  ts = seconds([&] { k::reference::apply_columns(coupling.entries, source, ca); }, repeats);
  tp = seconds([&] { k::apply_columns(coupling.entries, source, cb); }, repeats);
  report("apply_columns", ts, tp, ca == cb);
  return 0;
}
