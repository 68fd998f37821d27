#pragma once

// Numerical checks of three auxiliary estimates: averaged source versus
// instantaneous jump, the short-time displacement of a truncated initial
// datum, and the mollified indicator.

#include "heatctl/analysis.hpp"

#include <string>
#include <vector>

namespace heatctl {

struct SlopeCheck {
  std::string label;  // e.g. "p=2", "distance p=4"
  double p = 2.0;
  std::vector<double> steps;   // delta, s or eps
  std::vector<double> errors;
  double slope = 0.0;
  double bound = 0.0;      // required slope (lower bound unless `upper`)
  bool upper = false;      // gradient checks bound the slope from above
  bool degenerate = false; // zero errors or an excluded fit
  bool pass = false;
};

struct Compare3Config {
  Domain1D domain{1.0, 0.3, 0.8};
  int modes = 256;
  SpectralField u;  // empty means phi_1
  std::vector<double> deltas;  // empty means {2^-4, ..., 2^-10} T2
  std::vector<double> p_list{2.0, 4.0};
  double t1 = 0.0;
  double t2 = 1.0;
};

/// ||z - w||_{L^p(T1,T2;L^2)} for z driven by chi_omega u / delta on
/// (T1, T1 + delta) from rest and w the free solution from chi_omega u.
double compare3_distance(const Basis& basis, const CouplingMatrix& coupling, const SpectralField& u, double delta,
                         double p, double t1, double t2);
std::vector<SlopeCheck> experiment_compare3(const Compare3Config& config);

struct IntuitiveConfig {
  Domain1D domain{1.0, 0.3, 0.8};
  int modes = 1024;  // K_large, at least 256
  SpectralField z0;  // empty means phi_1
  std::vector<double> s_list;  // elapsed times s - T1; empty means 9 points from 1e-4 to 1e-2
};

inline constexpr int kMinIntuitiveModes = 256;

/// ||e^{s Laplace} chi_omega z0 - chi_omega z0||.
double intuitive_distance(const Basis& basis, const CouplingMatrix& coupling, const SpectralField& z0, double s);
SlopeCheck experiment_intuitive(const IntuitiveConfig& config);

struct MollifierConfig {
  Domain1D domain{1.0, 0.3, 0.8};
  std::vector<double> eps_list{0.1, 0.05, 0.025, 0.0125, 0.00625};
  std::vector<double> p_list{1.0, 2.0, 4.0};
};

/// Distance checks for every p, then gradient checks for every finite p.
std::vector<SlopeCheck> experiment_mollifier(const MollifierConfig& config);

}  // namespace heatctl
