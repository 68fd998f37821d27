#pragma once

// Dirichlet sine eigenbasis on (0, L), spectral fields, the coupling matrix
// realizing multiplication by the control-region indicator, and mollified
// indicators.

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace heatctl {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Spatial domain Omega = (0, length) with control region omega = (a, b).
struct Domain1D {
  double length = 1.0;
  double a = 0.0;
  double b = 1.0;

  Domain1D() = default;
  Domain1D(double length, double a, double b);

  /// omega == Omega.
  bool full_control() const { return a == 0.0 && b == length; }
};

/// Coefficients c_k of sum_k c_k phi_k, phi_k(x) = sqrt(2/L) sin(k pi x / L).
struct SpectralField {
  Eigen::VectorXd coeffs;

  SpectralField() = default;
  explicit SpectralField(Eigen::VectorXd c) : coeffs(std::move(c)) {}
  static SpectralField zero(int modes) { return SpectralField(Eigen::VectorXd::Zero(modes)); }
  static SpectralField unit(int modes, int k);

  int modes() const { return static_cast<int>(coeffs.size()); }
  // L2(Omega) norm; the basis is orthonormal.
  double norm() const { return coeffs.norm(); }
  double dot(const SpectralField& other) const { return coeffs.dot(other.coeffs); }

  /// Point values on the given abscissae.
  Eigen::VectorXd evaluate(const Domain1D& domain, const Eigen::VectorXd& x) const;
};

/// lambda_k = (k pi / L)^2, k >= 1.
double eigenvalue(int k, const Domain1D& domain);

/// The first `modes` Dirichlet eigenvalues of a domain.
class Basis {
 public:
  Basis(const Domain1D& domain, int modes);

  const Domain1D& domain() const { return domain_; }
  int modes() const { return modes_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  double lambda(int k) const { return eigenvalues_[k - 1]; }

 private:
  Domain1D domain_;
  int modes_;
  Eigen::VectorXd eigenvalues_;
};

/// M[j][k] = int_omega phi_j phi_k dx.
struct CouplingMatrix {
  Eigen::MatrixXd entries;
  int modes() const { return static_cast<int>(entries.rows()); }
};

CouplingMatrix coupling_matrix(const Domain1D& domain, int modes);

/// Projection of chi_omega f back onto the basis.
SpectralField apply_indicator(const CouplingMatrix& coupling, const SpectralField& f);

/// chi_omega^eps sampled on `grid_points` uniform nodes of [0, L].
struct MollifiedIndicator {
  double epsilon = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd values;
  Eigen::VectorXd gradient;  // d/dx chi_omega^eps at the same nodes
  Eigen::VectorXd sharp;     // chi_omega at the same nodes (boundary nodes get 1/2)
};

/// Normalized bump eta on (-1, 1) with integral 1.
double bump(double x);
/// int_{-1}^{t} eta, by composite Simpson (>= 200 panels).
double bump_cdf(double t);

MollifiedIndicator mollify_indicator(const Domain1D& domain, double epsilon, int grid_points);

/// Composite-trapezoid L^p norm of uniformly sampled values on an interval of
/// the given length; p = infinity gives the max of |values|.
double lp_norm_sampled(const Eigen::VectorXd& values, double interval_length, double p);

}  // namespace heatctl
