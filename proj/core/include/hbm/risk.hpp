#pragma once

// Value-at-risk for the Gaussian and hyperbolic (nu = 0) pictures, tail
// probabilities of k-sigma events, and the variance-explosion table.

#include <optional>
#include <vector>

#include "hbm/model.hpp"

namespace hbm {

enum class VarModel { GaussianVar, HyperbolicVar };

struct VarRequest {
  double u0 = 0.01;
  double t = 1.0;
  ModelParams params;
  VarModel model = VarModel::GaussianVar;
};

struct VarResult {
  double signed_var = 0.0;
  double var = 0.0;  // |signed_var|
};

/// sigma1 sqrt(t) Q(u0).
double gaussian_var(const VarRequest& req);

/// (sigma1 / sigma2) sinh(sigma2 sqrt(t) Q(u0)); the nu = 0 quantile.
double hyperbolic_var(const VarRequest& req);

VarResult value_at_risk(const VarRequest& req);

/// Experimental: u0-quantile of the nu = -2 u-space mixture
/// (N(tau, tau) + N(-tau, tau)) / 2 mapped back to x. An interpretation of a
/// drift-corrected hyperbolic VaR, not an established method.
double momentum_mixture_var_experimental(const VarRequest& req);

enum class TailFamily { Gaussian, StudentNu };
enum class TailSide { OneSided, TwoSided };

/// Probability of an event of k standard deviations or more. The Student
/// family is rescaled to unit variance (nu > 2), so k is in units of its
/// true standard deviation. OneSided is P(X > k), TwoSided P(|X| > k).
double tail_probability(double k_sigma, TailFamily family, std::optional<double> nu = std::nullopt,
                        TailSide side = TailSide::OneSided);

/// log of tail_probability; finite for any k the double range allows.
double log_tail_probability(double k_sigma, TailFamily family,
                            std::optional<double> nu = std::nullopt,
                            TailSide side = TailSide::OneSided);

struct ExplosionRow {
  double t = 0.0;
  double variance = 0.0;
  double explosion_factor = 0.0;
  double k_equivalent = 0.0;  // sigma_event_equivalent(25)
};

std::vector<ExplosionRow> explosion_report(const ModelParams& params, const std::vector<double>& t_grid,
                                           double k = 25.0);

}  // namespace hbm
