#pragma once

// Monte Carlo for dX = (mu1 - mu2 X) dt + sigma1 dW1 + sigma2 X dW2 by four
// routes: Euler in X, Euler in the hyperbolic coordinate u = asinh(sigma2 X /
// sigma1), the stochastic integrating factor, and the conditionally Gaussian
// representation. All paths start at X_0 = 0.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "hbm/model.hpp"

namespace hbm {

enum class Scheme { Euler, HyperbolicEuler, IntegratingFactor, ConditionalGaussian };

std::string_view to_string(Scheme scheme) noexcept;

inline constexpr double kExplosionThreshold = 1e12;

struct PathEnsemble {
  std::vector<double> times;
  std::size_t n_paths = 0;
  std::vector<double> paths;  // row-major n_paths x times.size()
  Scheme scheme = Scheme::Euler;
  std::uint64_t seed = 0;
  ModelParams params;
  // Time at which |X| first exceeded kExplosionThreshold, or -1. An exploded
  // path keeps its last (finite) value at all later grid times.
  std::vector<double> explosion_time;

  std::size_t n_times() const { return times.size(); }
  double at(std::size_t path, std::size_t time_index) const {
    return paths[path * times.size() + time_index];
  }
  std::vector<double> column(std::size_t time_index) const;
  std::size_t exploded_count() const;
};

/// 1e-3 * min(1, 1 / sigma2^2).
double default_dt(const ModelParams& params);

/// Euler-Maruyama in X; W2 = rho W1 + sqrt(1 - rho^2) W_perp.
PathEnsemble simulate_euler(const ModelParams& params, const std::vector<double>& times,
                            std::size_t n_paths, double dt, std::uint64_t seed);

/// Euler on du = -(nu / 2) tanh(u) dtau + dW_tau, tau = sigma2^2 t, mapped
/// back through X = (sigma1 / sigma2) sinh(u). Requires mu1 = rho = 0.
PathEnsemble simulate_hyperbolic(const ModelParams& params, const std::vector<double>& times,
                                 std::size_t n_paths, double dt, std::uint64_t seed);

/// Samples of X_t from
///   X_t = int_0^t exp(sigma2 W2_u - (nu/2) sigma2^2 u) ((mu1 - rho sigma1 sigma2) du + sigma1 dW1_u)
/// in reversed time, one value per path.
std::vector<double> simulate_integrating_factor(const ModelParams& params, double t,
                                                std::size_t n_paths, std::size_t n_steps,
                                                std::uint64_t seed);

struct ConditionalGaussianState {
  double m = 0.0;
  double v = 0.0;
};

/// Trapezoid values of m = mu1 int E_u du and v = sigma1^2 int E_u^2 du along
/// one path of W2, E_u = exp(sigma2 W2_u - (nu/2) sigma2^2 u).
ConditionalGaussianState conditional_gaussian_state(const ModelParams& params,
                                                    std::span<const double> w2, double du);

/// X ~ Normal(m, v) given a simulated W2 path. Requires rho = 0.
std::vector<double> simulate_conditional_gaussian(const ModelParams& params, double t,
                                                  std::size_t n_paths, std::size_t n_steps,
                                                  std::uint64_t seed);

}  // namespace hbm
