#include "hbm/microstructure.hpp"

#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace hbm {

double OrderSizeDist::second_moment() const {
  switch (kind) {
    case OrderSizeKind::Deterministic:
      return mean * mean;
    case OrderSizeKind::Geometric:
      return 2.0 * mean * mean - mean;
    case OrderSizeKind::ShiftedPoisson:
      return mean * mean + mean - 1.0;
  }
  throw std::logic_error("unknown order size distribution");
}

void OrderSizeDist::validate() const {
  if (!(mean >= 1.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("order size mean must be finite and at least 1");
  }
  if (kind == OrderSizeKind::Deterministic && std::floor(mean) != mean) {
    throw std::invalid_argument("deterministic order size must be an integer");
  }
}

std::int64_t OrderSizeDist::sample_total(Rng& rng, std::int64_t count) const {
  if (count <= 0) return 0;
  switch (kind) {
    case OrderSizeKind::Deterministic:
      return count * static_cast<std::int64_t>(mean);
    case OrderSizeKind::Geometric:
      return count + sample_negative_binomial(rng, count, 1.0 / mean);
    case OrderSizeKind::ShiftedPoisson:
      return count + sample_poisson(rng, static_cast<double>(count) * (mean - 1.0));
  }
  throw std::logic_error("unknown order size distribution");
}

void MicrostructureParams::validate() const {
  if (!(lambda_buy >= 0.0) || !(lambda_sell >= 0.0) || !std::isfinite(lambda_buy) ||
      !std::isfinite(lambda_sell)) {
    throw std::invalid_argument("arrival rates must be finite and non-negative");
  }
  if (!std::isfinite(mu_slope)) {
    throw std::invalid_argument("technical slope must be finite");
  }
  if (lot_size < 1) {
    throw std::invalid_argument("lot size must be a positive integer");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("omega must be positive and finite");
  }
  order_size.validate();
}

FlowMoments flow_moments_fundamental(const MicrostructureParams& params, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("dt must be positive");
  }
  const double l = static_cast<double>(params.lot_size);
  return {l * (params.lambda_buy - params.lambda_sell) * dt * params.nbar(),
          l * l * (params.lambda_buy + params.lambda_sell) * dt * params.n2()};
}

FlowMoments flow_moments_technical(const MicrostructureParams& params, double x, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("dt must be positive");
  }
  const double l = static_cast<double>(params.lot_size);
  const double net = params.mu_slope * x;
  return {-l * net * dt * params.nbar(), l * l * std::abs(net) * dt * params.n2()};
}

Increment sample_increment(const MicrostructureParams& params, double x, double dt, Rng& rng) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("dt must be positive");
  }
  const double tech_rate = std::abs(params.mu_slope * x);
  const std::int64_t n_buy = sample_poisson(rng, params.lambda_buy * dt);
  const std::int64_t n_sell = sample_poisson(rng, params.lambda_sell * dt);
  const std::int64_t n_tech = sample_poisson(rng, tech_rate * dt);
  const OrderSizeDist& sizes = params.order_size;
  Increment inc;
  inc.sample.dt = dt;
  inc.sample.x_before = x;
  inc.sample.m_fundamental =
      params.lot_size * (sizes.sample_total(rng, n_buy) - sizes.sample_total(rng, n_sell));
  const std::int64_t tech_shares = params.lot_size * sizes.sample_total(rng, n_tech);
  inc.sample.m_technical = params.mu_slope * x > 0.0 ? -tech_shares : tech_shares;
  inc.dx = params.omega *
           static_cast<double>(inc.sample.m_fundamental + inc.sample.m_technical);
  return inc;
}

Increment sample_increment(const MicrostructureParams& params, double x, double dt,
                           std::uint64_t seed) {
  Rng rng = make_stream(seed, 0);
  return sample_increment(params, x, dt, rng);
}

namespace {

void check_grid(const std::vector<double>& times, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("dt must be positive");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || (i > 0 && times[i] < times[i - 1])) {
      throw std::invalid_argument("times must be sorted and non-negative");
    }
  }
}

// Advances x from t to target in steps of at most dt.
double advance(const MicrostructureParams& params, double x, double& t, double target, double dt,
               Rng& rng) {
  while (target - t > 1e-12 * std::max(1.0, target)) {
    const double h = std::min(dt, target - t);
    x += sample_increment(params, x, h, rng).dx;
    t += h;
  }
  t = target;
  return x;
}

}  // namespace

DiscretePath simulate_discrete_path(const MicrostructureParams& params, double horizon, double dt,
                                    std::uint64_t seed) {
  params.validate();
  if (!(horizon > 0.0) || !(dt > 0.0) || !(dt < horizon)) {
    throw std::invalid_argument("need 0 < dt < horizon");
  }
  Rng rng = make_stream(seed, 0);
  DiscretePath path;
  double t = 0.0;
  double x = 0.0;
  path.t.push_back(t);
  path.x.push_back(x);
  while (horizon - t > 1e-12 * horizon) {
    const double target = std::min(horizon, t + dt);
    x = advance(params, x, t, target, dt, rng);
    path.t.push_back(t);
    path.x.push_back(x);
  }
  return path;
}

std::vector<double> simulate_discrete_ensemble(const MicrostructureParams& params,
                                               const std::vector<double>& times, double dt,
                                               std::size_t n_paths, std::uint64_t seed) {
  params.validate();
  check_grid(times, dt);
  const std::size_t nt = times.size();
  std::vector<double> out(n_paths * nt);
  detail::parallel_for(n_paths, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    double t = 0.0;
    double x = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
      x = advance(params, x, t, times[j], dt, rng);
      out[i * nt + j] = x;
    }
  });
  return out;
}

ModelParams map_to_sde(const MicrostructureParams& params) {
  params.validate();
  if (params.mu_slope < 0.0) {
    throw std::domain_error(
        "sigma2 imaginary under the microstructure mapping; specify sigma2 directly for "
        "momentum-dominated runs");
  }
  const double alpha = params.alpha();
  ModelParams p;
  p.mu1 = alpha * params.nbar() * (params.lambda_buy - params.lambda_sell);
  p.mu2 = alpha * params.mu_slope * params.nbar();
  p.sigma1 = alpha * std::sqrt((params.lambda_buy + params.lambda_sell) * params.n2());
  p.sigma2 = alpha * std::sqrt(params.mu_slope * params.n2());
  p.rho = 0.0;
  return p;
}

}  // namespace hbm
