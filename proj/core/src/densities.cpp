#include "hbm/densities.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hbm/laplace.hpp"
#include "hbm/special_functions.hpp"

namespace hbm {

namespace {

constexpr double kNuTolerance = 1e-9;

void require_symmetric(const ModelParams& params) {
  params.validate();
  if (!params.symmetric()) {
    throw std::invalid_argument("density requires mu1 = 0 and rho = 0");
  }
}

void require_nu(const ModelParams& params, double nu) {
  require_symmetric(params);
  if (std::abs(derive_nu(params) - nu) > kNuTolerance) {
    throw std::invalid_argument("density family requires nu = " + std::to_string(nu));
  }
}

void require_positive_t(double t) {
  if (!(t > 0.0)) {
    throw std::invalid_argument("t must be positive");
  }
}

double hyperbolic_u(double x, const ModelParams& params) {
  return stable_asinh(params.sigma2 * x / params.sigma1);
}

// Phi(a) - Phi(b) for a > b without cancellation in the upper tail.
double normal_interval(double a, double b) {
  if (b > 0.0) {
    return normal_sf(b) - normal_sf(a);
  }
  return normal_cdf(a) - normal_cdf(b);
}

}  // namespace

std::string_view to_string(DensityFamily family) noexcept {
  switch (family) {
    case DensityFamily::Gaussian:
      return "gaussian";
    case DensityFamily::Nu0:
      return "nu0";
    case DensityFamily::Chameleon:
      return "chameleon";
    case DensityFamily::BimodalNuMinus2:
      return "bimodal";
    case DensityFamily::Student:
      return "student";
    case DensityFamily::PearsonIV:
      return "pearson4";
    case DensityFamily::TransformInverted:
      return "transform";
  }
  return "unknown";
}

DensityFamily parse_density_family(std::string_view name) {
  for (DensityFamily f : {DensityFamily::Gaussian, DensityFamily::Nu0, DensityFamily::Chameleon,
                          DensityFamily::BimodalNuMinus2, DensityFamily::Student,
                          DensityFamily::PearsonIV, DensityFamily::TransformInverted}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown density family: " + std::string(name));
}

double gaussian_density(double x, double t, const ModelParams& params) {
  require_positive_t(t);
  const double var = params.sigma1 * params.sigma1 * t;
  const double d = x - params.mu1 * t;
  return std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

double nu0_density(double x, double t, const ModelParams& params) {
  require_nu(params, 0.0);
  require_positive_t(t);
  const double u = hyperbolic_u(x, params);
  const double s2 = params.sigma2 * params.sigma2;
  const double r2 = params.sigma1 * params.sigma1 + s2 * x * x;
  return std::exp(-u * u / (2.0 * s2 * t)) / std::sqrt(2.0 * std::numbers::pi * t * r2);
}

double chameleon_density(double x, double t, const ModelParams& params) {
  require_nu(params, 2.0);
  require_positive_t(t);
  const double s1 = params.sigma1;
  const double s2 = params.sigma2;
  const double u = std::abs(hyperbolic_u(x, params));
  const double tau = s2 * s2 * t;
  const double r2 = s1 * s1 + s2 * s2 * x * x;
  const double first = s1 * std::exp(-u * u / (2.0 * tau) - 0.5 * tau) /
                       (std::sqrt(2.0 * std::numbers::pi * t) * r2);
  const double sq = std::sqrt(tau);
  const double second = s2 * s1 * s1 / (2.0 * r2 * std::sqrt(r2)) *
                        normal_interval((u + tau) / sq, (u - tau) / sq);
  return first + second;
}

double chameleon_density_u(double u, double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("tau must be positive");
  }
  const double a = std::abs(u);
  const double c = std::cosh(a);
  const double sq = std::sqrt(tau);
  const double first = std::exp(-a * a / (2.0 * tau) - 0.5 * tau) /
                       (std::sqrt(2.0 * std::numbers::pi * tau) * c);
  return first + normal_interval((a + tau) / sq, (a - tau) / sq) / (2.0 * c * c);
}

double bimodal_density_numinus2(double x, double t, const ModelParams& params) {
  require_nu(params, -2.0);
  require_positive_t(t);
  const double u = hyperbolic_u(x, params);
  const double tau = params.sigma2 * params.sigma2 * t;
  return std::exp(-0.5 * tau - u * u / (2.0 * tau)) /
         (params.sigma1 * std::sqrt(2.0 * std::numbers::pi * t));
}

double bimodal_density_u(double u, double tau) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("tau must be positive");
  }
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * tau);
  const double a = (u - tau) * (u - tau) / (2.0 * tau);
  const double b = (u + tau) * (u + tau) / (2.0 * tau);
  return 0.5 * norm * (std::exp(-a) + std::exp(-b));
}

double StudentEquilibrium::density(double x) const {
  return student_pdf(x / scale, nu) / scale;
}

double StudentEquilibrium::cdf(double x) const { return student_cdf(x / scale, nu); }

StudentEquilibrium student_equilibrium(const ModelParams& params) {
  require_symmetric(params);
  if (!(params.mu2 > 0.0)) {
    throw std::domain_error("no normalizable Student equilibrium");
  }
  StudentEquilibrium eq;
  eq.nu = derive_nu(params);
  eq.scale = params.sigma1 / std::sqrt(params.sigma2 * params.sigma2 + 2.0 * params.mu2);
  return eq;
}

PearsonIVParams pearson4_from_shape(double a, double lambda, double nu, double nu2) {
  if (!(a > 0.0)) {
    throw std::domain_error("Pearson IV scale must be positive");
  }
  if (!(nu > 0.0)) {
    throw std::domain_error("Pearson IV needs nu > 0 to be normalizable");
  }
  PearsonIVParams p4;
  p4.a = a;
  p4.lambda = lambda;
  p4.nu = nu;
  p4.m = 0.5 * (nu + 1.0);
  p4.nu2 = nu2;
  const double h = 0.5 * (nu + 1.0);
  const double ratio = gamma_abs_complex(h, 0.5 * nu2) / std::exp(log_gamma_real(h));
  p4.k = std::exp(log_gamma_real(h) - log_gamma_real(0.5 * nu)) /
         (a * std::sqrt(std::numbers::pi)) * ratio * ratio;
  return p4;
}

PearsonIVParams pearson4_params(const ModelParams& params) {
  params.validate();
  if (!(std::abs(params.rho) < 1.0)) {
    throw std::domain_error("Pearson IV degenerate for |rho| = 1");
  }
  if (!(params.sigma2 > 0.0)) {
    throw nu_undefined_error();
  }
  const double s1 = params.sigma1;
  const double s2 = params.sigma2;
  const double root = std::sqrt(1.0 - params.rho * params.rho);
  // Skew sign fixed by the stationary Fokker-Planck equation, so that the
  // mean is mu1 / mu2 when rho = 0.
  const double nu2 = -2.0 * (params.mu1 * s2 + params.rho * s1 * params.mu2) / (s1 * s2 * s2 * root);
  return pearson4_from_shape(s1 / s2 * root, -params.rho * s1 / s2, derive_nu(params), nu2);
}

double pearson4_density(double x, const PearsonIVParams& p4) {
  const double y = (x - p4.lambda) / p4.a;
  return p4.k * std::exp(-0.5 * (p4.nu + 1.0) * std::log1p(y * y) - p4.nu2 * std::atan(y));
}

double pearson4_expectation(const PearsonIVParams& p4, const RealFunction& g) {
  const double half_pi = 0.5 * std::numbers::pi;
  auto integrand = [&](double theta) {
    const double c = std::cos(theta);
    if (c <= 0.0) return 0.0;
    return p4.k * p4.a * std::pow(c, p4.nu - 1.0) * std::exp(-p4.nu2 * theta) *
           g(p4.lambda + p4.a * std::tan(theta));
  };
  return integrate(integrand, -half_pi, half_pi, 1e-13).value;
}

PearsonIVMoments pearson4_moments(const PearsonIVParams& p4) {
  PearsonIVMoments m;
  const double nu = p4.nu;
  const double v2 = p4.nu2 * p4.nu2;
  const double q = (nu - 1.0) * (nu - 1.0) + v2;
  if (nu > 1.0) {
    m.mean = p4.lambda - p4.a * p4.nu2 / (nu - 1.0);
  }
  if (nu > 2.0) {
    m.variance = p4.a * p4.a * q / ((nu - 1.0) * (nu - 1.0) * (nu - 2.0));
  }
  if (nu > 3.0) {
    m.skewness = -4.0 * p4.nu2 / (nu - 3.0) * std::sqrt((nu - 2.0) / q);
  }
  if (nu > 4.0) {
    m.excess_kurtosis = (6.0 * (nu - 3.0) * (nu - 1.0) * (nu - 1.0) + 6.0 * (5.0 * nu - 11.0) * v2) /
                        ((nu - 4.0) * (nu - 3.0) * q);
  }
  return m;
}

double DensityCurve::trapezoid_mass() const {
  double mass = 0.0;
  for (std::size_t i = 1; i < x_grid.size(); ++i) {
    mass += 0.5 * (f_values[i] + f_values[i - 1]) * (x_grid[i] - x_grid[i - 1]);
  }
  return mass;
}

double density(DensityFamily family, double x, double t, const ModelParams& params) {
  switch (family) {
    case DensityFamily::Gaussian:
      return gaussian_density(x, t, params);
    case DensityFamily::Nu0:
      return nu0_density(x, t, params);
    case DensityFamily::Chameleon:
      return chameleon_density(x, t, params);
    case DensityFamily::BimodalNuMinus2:
      return bimodal_density_numinus2(x, t, params);
    case DensityFamily::Student:
      return student_equilibrium(params).density(x);
    case DensityFamily::PearsonIV:
      return pearson4_density(x, pearson4_params(params));
    case DensityFamily::TransformInverted:
      return invert_transform(x, t, params);
  }
  throw std::logic_error("unknown density family");
}

DensityCurve tabulate(DensityFamily family, const std::vector<double>& x_grid, double t,
                      const ModelParams& params) {
  DensityCurve c;
  c.family = family;
  if (family != DensityFamily::Student && family != DensityFamily::PearsonIV) {
    c.t = t;
  }
  c.x_grid = x_grid;
  c.f_values.reserve(x_grid.size());
  for (double x : x_grid) {
    c.f_values.push_back(density(family, x, t, params));
  }
  return c;
}

double density_cdf(DensityFamily family, double x, double t, const ModelParams& params) {
  switch (family) {
    case DensityFamily::Gaussian:
      require_positive_t(t);
      return normal_cdf((x - params.mu1 * t) / (params.sigma1 * std::sqrt(t)));
    case DensityFamily::Nu0:
      require_nu(params, 0.0);
      require_positive_t(t);
      return normal_cdf(hyperbolic_u(x, params) / (params.sigma2 * std::sqrt(t)));
    case DensityFamily::BimodalNuMinus2: {
      require_nu(params, -2.0);
      require_positive_t(t);
      const double tau = params.sigma2 * params.sigma2 * t;
      const double u = hyperbolic_u(x, params);
      const double sq = std::sqrt(tau);
      return 0.5 * (normal_cdf((u - tau) / sq) + normal_cdf((u + tau) / sq));
    }
    case DensityFamily::Student:
      return student_equilibrium(params).cdf(x);
    case DensityFamily::Chameleon: {
      require_nu(params, 2.0);
      require_positive_t(t);
      const double tau = params.sigma2 * params.sigma2 * t;
      const double u = hyperbolic_u(x, params);
      const double sq = std::sqrt(tau);
      // by parts against d tanh(u); the remainder integrates to normal CDFs
      return normal_cdf((u + tau) / sq) / (1.0 + std::exp(-2.0 * u)) +
             normal_cdf((u - tau) / sq) / (1.0 + std::exp(2.0 * u));
    }
    case DensityFamily::PearsonIV: {
      const PearsonIVParams p4 = pearson4_params(params);
      const double theta = std::atan((x - p4.lambda) / p4.a);
      auto integrand = [&](double th) {
        return p4.k * p4.a * std::pow(std::cos(th), p4.nu - 1.0) * std::exp(-p4.nu2 * th);
      };
      return integrate(integrand, -0.5 * std::numbers::pi, theta, 1e-13).value;
    }
    case DensityFamily::TransformInverted: {
      require_symmetric(params);
      if (x == 0.0) return 0.5;
      const double half =
          integrate([&](double y) { return invert_transform(y, t, params); }, 0.0, std::abs(x), 1e-7, 8)
              .value;
      return x > 0.0 ? 0.5 + half : 0.5 - half;
    }
  }
  throw std::logic_error("unknown density family");
}

}  // namespace hbm
