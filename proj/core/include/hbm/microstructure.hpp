#pragma once

// Discrete trade-arrival model: fundamental traders arrive as independent
// Poisson buy/sell streams, technical traders as one Poisson stream whose
// rate is |mu x| and whose direction opposes the current return. Each order
// is N lots of L shares; the return moves by omega per net share.

#include <cstdint>
#include <utility>
#include <vector>

#include "hbm/model.hpp"
#include "hbm/random.hpp"

namespace hbm {

enum class OrderSizeKind { Deterministic, Geometric, ShiftedPoisson };

/// Lots per order. Deterministic(n): N = n. Geometric(m): P(N = k) =
/// (1/m)(1 - 1/m)^{k-1}, k >= 1. ShiftedPoisson(m): N = 1 + Poisson(m - 1).
/// The parameter is the mean in every case; E[N^2] follows from the family.
struct OrderSizeDist {
  OrderSizeKind kind = OrderSizeKind::Deterministic;
  double mean = 1.0;

  double second_moment() const;
  void validate() const;
  /// Sum of `count` independent order sizes.
  std::int64_t sample_total(Rng& rng, std::int64_t count) const;
};

struct MicrostructureParams {
  double lambda_buy = 0.0;
  double lambda_sell = 0.0;
  double mu_slope = 0.0;  // technical net rate is -mu_slope * x
  std::int64_t lot_size = 1;
  double omega = 1.0;
  OrderSizeDist order_size;

  double nbar() const { return order_size.mean; }
  double n2() const { return order_size.second_moment(); }
  double alpha() const { return static_cast<double>(lot_size) * omega; }
  void validate() const;
};

struct FlowMoments {
  double mean = 0.0;
  double variance = 0.0;
};

FlowMoments flow_moments_fundamental(const MicrostructureParams& params, double dt);

/// Mean -L mu x dt nbar, variance L^2 |mu x| dt E[N^2].
FlowMoments flow_moments_technical(const MicrostructureParams& params, double x, double dt);

struct TradeFlowSample {
  std::int64_t m_fundamental = 0;
  std::int64_t m_technical = 0;
  double dt = 0.0;
  double x_before = 0.0;
};

struct Increment {
  double dx = 0.0;
  TradeFlowSample sample;
};

Increment sample_increment(const MicrostructureParams& params, double x, double dt, Rng& rng);
Increment sample_increment(const MicrostructureParams& params, double x, double dt,
                           std::uint64_t seed);

struct DiscretePath {
  std::vector<double> t;
  std::vector<double> x;
};

/// Iterates sample_increment from x = 0 on t = 0, dt, 2 dt, ..., horizon
/// (the last step is shortened to land on the horizon).
DiscretePath simulate_discrete_path(const MicrostructureParams& params, double horizon, double dt,
                                    std::uint64_t seed);

/// Values of an ensemble of discrete paths at the requested times, one row
/// per path (row-major, n_paths x times.size()). Path i uses stream i of seed.
std::vector<double> simulate_discrete_ensemble(const MicrostructureParams& params,
                                               const std::vector<double>& times, double dt,
                                               std::size_t n_paths, std::uint64_t seed);

/// mu1 = alpha nbar (lambda_B - lambda_S), mu2 = alpha mu nbar,
/// sigma1 = alpha sqrt((lambda_B + lambda_S) E[N^2]), sigma2 = alpha sqrt(mu E[N^2]).
ModelParams map_to_sde(const MicrostructureParams& params);

}  // namespace hbm
