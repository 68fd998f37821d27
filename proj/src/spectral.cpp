#include "heatctl/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace heatctl {

Domain1D::Domain1D(double length_, double a_, double b_) : length(length_), a(a_), b(b_) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw DomainError("domain length must be positive and finite");
  }
  if (!(0.0 <= a && a < b && b <= length)) {
    throw DomainError("control interval must satisfy 0 <= a < b <= L");
  }
}

SpectralField SpectralField::unit(int modes, int k) {
  if (k < 1 || k > modes) {
    throw DomainError("unit field index out of range");
  }
  SpectralField f = zero(modes);
  f.coeffs[k - 1] = 1.0;
  return f;
}

Eigen::VectorXd SpectralField::evaluate(const Domain1D& domain, const Eigen::VectorXd& x) const {
  const double scale = std::sqrt(2.0 / domain.length);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double s = 0.0;
    for (int k = 1; k <= modes(); ++k) {
      s += coeffs[k - 1] * std::sin(k * kPi * x[i] / domain.length);
    }
    out[i] = scale * s;
  }
  return out;
}

double eigenvalue(int k, const Domain1D& domain) {
  if (k < 1) {
    throw DomainError("eigenvalue index must be >= 1, got " + std::to_string(k));
  }
  const double w = k * kPi / domain.length;
  return w * w;
}

Basis::Basis(const Domain1D& domain, int modes) : domain_(domain), modes_(modes) {
  if (modes < 1) {
    throw DomainError("truncation order must be >= 1");
  }
  eigenvalues_.resize(modes);
  for (int k = 1; k <= modes; ++k) {
    eigenvalues_[k - 1] = eigenvalue(k, domain);
  }
}

namespace {

// Antiderivative of (2/L) sin(j pi x/L) sin(k pi x/L).
double product_antiderivative(int j, int k, double x, double length) {
  const double w = kPi / length;
  if (j == k) {
    return (x - std::sin(2.0 * k * w * x) / (2.0 * k * w)) / length;
  }
  const double d = static_cast<double>(j - k);
  const double s = static_cast<double>(j + k);
  return (std::sin(d * w * x) / (d * w) - std::sin(s * w * x) / (s * w)) / length;
}

}  // namespace

CouplingMatrix coupling_matrix(const Domain1D& domain, int modes) {
  if (modes < 1) {
    throw DomainError("truncation order must be >= 1");
  }
  CouplingMatrix m{Eigen::MatrixXd::Zero(modes, modes)};
  if (domain.full_control()) {
    m.entries.setIdentity();
    return m;
  }
  for (int j = 1; j <= modes; ++j) {
    for (int k = j; k <= modes; ++k) {
      const double v = product_antiderivative(j, k, domain.b, domain.length) -
                       product_antiderivative(j, k, domain.a, domain.length);
      m.entries(j - 1, k - 1) = v;
      m.entries(k - 1, j - 1) = v;
    }
  }
  return m;
}

SpectralField apply_indicator(const CouplingMatrix& coupling, const SpectralField& f) {
  if (coupling.modes() != f.modes()) {
    throw DimensionError("apply_indicator: coupling matrix has " + std::to_string(coupling.modes()) +
                         " modes, field has " + std::to_string(f.modes()));
  }
  return SpectralField(coupling.entries * f.coeffs);
}

namespace {

double raw_bump(double x) {
  if (std::abs(x) >= 1.0) {
    return 0.0;
  }
  return std::exp(1.0 / (x * x - 1.0));
}

template <typename F>
double simpson(F&& f, double lo, double hi, int panels) {
  if (panels % 2 != 0) {
    ++panels;
  }
  const double h = (hi - lo) / panels;
  double s = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) {
    s += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + i * h);
  }
  return s * h / 3.0;
}

constexpr int kCdfPanels = 400;

double bump_normalization() {
  static const double c = 1.0 / (2.0 * simpson(raw_bump, 0.0, 1.0, 20000));
  return c;
}

}  // namespace

double bump(double x) { return bump_normalization() * raw_bump(x); }

double bump_cdf(double t) {
  if (t <= -1.0) {
    return 0.0;
  }
  if (t >= 1.0) {
    return 1.0;
  }
  // eta is even: F(t) = 1/2 + sign(t) int_0^|t| eta.
  const double half = simpson(bump, 0.0, std::abs(t), kCdfPanels);
  return t >= 0.0 ? 0.5 + half : 0.5 - half;
}

MollifiedIndicator mollify_indicator(const Domain1D& domain, double epsilon, int grid_points) {
  if (!(epsilon > 0.0) || !(epsilon < 0.5 * (domain.b - domain.a))) {
    throw DomainError("mollifier epsilon must lie in (0, (b-a)/2)");
  }
  if (grid_points < 16) {
    throw DomainError("mollifier grid needs at least 16 points");
  }
  MollifiedIndicator out;
  out.epsilon = epsilon;
  out.x = Eigen::VectorXd::LinSpaced(grid_points, 0.0, domain.length);
  out.values.resize(grid_points);
  out.gradient.resize(grid_points);
  out.sharp.resize(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    const double x = out.x[i];
    const double ta = (x - domain.a) / epsilon;
    const double tb = (x - domain.b) / epsilon;
    out.values[i] = bump_cdf(ta) - bump_cdf(tb);
    out.gradient[i] = (bump(ta) - bump(tb)) / epsilon;
    if (x == domain.a || x == domain.b) {
      out.sharp[i] = 0.5;
    } else {
      out.sharp[i] = (x > domain.a && x < domain.b) ? 1.0 : 0.0;
    }
  }
  return out;
}

double lp_norm_sampled(const Eigen::VectorXd& values, double interval_length, double p) {
  if (!(p >= 1.0)) {
    throw DomainError("L^p norm requires p >= 1");
  }
  if (values.size() < 2) {
    throw DimensionError("L^p norm needs at least two samples");
  }
  if (std::isinf(p)) {
    return values.cwiseAbs().maxCoeff();
  }
  const double dx = interval_length / static_cast<double>(values.size() - 1);
  double s = 0.0;
  const Eigen::Index n = values.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    s += w * std::pow(std::abs(values[i]), p);
  }
  return std::pow(s * dx, 1.0 / p);
}

}  // namespace heatctl
