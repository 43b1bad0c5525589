#pragma once

// Closed-form time-dependent densities (Gaussian, nu = 0, nu = 2 chameleon,
// nu = -2 bimodal), the Student and Pearson IV equilibria, and CDFs built
// on them.

#include <optional>
#include <string_view>
#include <vector>

#include "hbm/model.hpp"
#include "hbm/quadrature.hpp"

namespace hbm {

enum class DensityFamily { Gaussian, Nu0, Chameleon, BimodalNuMinus2, Student, PearsonIV, TransformInverted };

std::string_view to_string(DensityFamily family) noexcept;
/// Accepts the names produced by to_string; throws std::invalid_argument otherwise.
DensityFamily parse_density_family(std::string_view name);

/// Normal(mu1 t, sigma1^2 t); sigma2 is ignored.
double gaussian_density(double x, double t, const ModelParams& params);

/// exp(-asinh(sigma2 x / sigma1)^2 / (2 sigma2^2 t)) / sqrt(2 pi t (sigma1^2 + sigma2^2 x^2)).
double nu0_density(double x, double t, const ModelParams& params);

double chameleon_density(double x, double t, const ModelParams& params);

/// The chameleon density as a density in u = asinh(sigma2 x / sigma1); depends on tau only.
double chameleon_density_u(double u, double tau);

/// exp(-tau/2 - u^2 / (2 tau)) / (sigma1 sqrt(2 pi t)) with u = asinh(sigma2 x / sigma1).
double bimodal_density_numinus2(double x, double t, const ModelParams& params);

/// (N(u; tau, tau) + N(u; -tau, tau)) / 2.
double bimodal_density_u(double u, double tau);

struct StudentEquilibrium {
  double nu = 0.0;
  double scale = 0.0;  // sigma1 / sqrt(sigma2^2 + 2 mu2)
  double density(double x) const;
  double cdf(double x) const;
};

StudentEquilibrium student_equilibrium(const ModelParams& params);

struct PearsonIVParams {
  double a = 0.0;
  double lambda = 0.0;
  double m = 0.0;
  double nu = 0.0;
  double nu2 = 0.0;
  double k = 0.0;
};

PearsonIVParams pearson4_params(const ModelParams& params);
/// Builds the parameter block directly; k is computed from (a, nu, nu2).
PearsonIVParams pearson4_from_shape(double a, double lambda, double nu, double nu2);
double pearson4_density(double x, const PearsonIVParams& p4);

struct PearsonIVMoments {
  std::optional<double> mean;
  std::optional<double> variance;
  std::optional<double> skewness;
  std::optional<double> excess_kurtosis;
};

PearsonIVMoments pearson4_moments(const PearsonIVParams& p4);

/// int f(x) g(x) dx over the density, evaluated in theta = atan((x - lambda) / a)
/// where the measure is k a cos^{nu-1}(theta) exp(-nu2 theta) dtheta on (-pi/2, pi/2).
double pearson4_expectation(const PearsonIVParams& p4, const RealFunction& g);

struct DensityCurve {
  std::vector<double> x_grid;
  std::vector<double> f_values;
  std::optional<double> t;  // empty for equilibrium curves
  DensityFamily family = DensityFamily::Gaussian;

  double trapezoid_mass() const;
};

/// Density of the family at (x, t). Equilibrium families ignore t.
double density(DensityFamily family, double x, double t, const ModelParams& params);

DensityCurve tabulate(DensityFamily family, const std::vector<double>& x_grid, double t,
                      const ModelParams& params);

/// Closed forms for Gaussian, Nu0, Chameleon, BimodalNuMinus2 and Student;
/// adaptive quadrature for PearsonIV and TransformInverted.
double density_cdf(DensityFamily family, double x, double t, const ModelParams& params);

}  // namespace hbm
