#pragma once

// Raw moments e_n(t) = E[X_t^n] of the hybrid SDE, the closed-form variance
// for the symmetric case, and the variance explosion factor.

#include <vector>

#include "hbm/model.hpp"

namespace hbm {

inline constexpr int kMaxMomentOrder = 12;

struct MomentVector {
  int order = 0;
  std::vector<double> values;  // e_0 .. e_order, e_0 == 1
  double t = 0.0;
  ModelParams params;

  double mean() const { return values.at(1); }
  double variance() const { return values.at(2) - values.at(1) * values.at(1); }
};

/// Solves the linear moment hierarchy
///   de_n/dt = -(mu2 n - n(n-1) sigma2^2 / 2) e_n + n(n-1) sigma1^2 / 2 e_{n-2}
///             + (mu1 n + n(n-1) rho sigma1 sigma2) e_{n-1}
/// on each time in t_grid. The system is lower triangular, so it is solved in
/// one step per grid point with a matrix exponential. Moments that diverge
/// in finite precision come back as inf.
std::vector<MomentVector> moment_odes_solve(const ModelParams& params, int order,
                                            const std::vector<double>& t_grid, double x0 = 0.0);

/// e_1(t) = x0 exp(-mu2 t) + (mu1 / mu2)(1 - exp(-mu2 t)), with the mu2 -> 0 limit.
double mean_closed_form(const ModelParams& params, double t, double x0 = 0.0);

/// V(t) = sigma1^2 (1 - exp(-sigma2^2 (nu - 2) t)) / (sigma2^2 (nu - 2)) for
/// rho = mu1 = 0 and X_0 = 0; sigma1^2 t (1 - kappa t / 2) when
/// |kappa t| < 1e-8, kappa = sigma2^2 (nu - 2) = 2 mu2 - sigma2^2.
double variance_closed_form(const ModelParams& params, double t);

/// V(t) / (sigma1^2 t); 1 at t = 0. Non-symmetric parameters go through the
/// moment ODEs.
double variance_explosion_factor(const ModelParams& params, double t);

/// (e^{a} - 1) / a for a = alpha t, alpha = sigma2^2 (2 - nu).
double explosion_factor_from_exponent(double alpha_t);

/// k / sqrt(V_E): size of a k-sigma naive event in true standard deviations.
double sigma_event_equivalent(double k, double explosion_factor);
double sigma_event_equivalent(double k, const ModelParams& params, double t);

}  // namespace hbm
