#include "hbm/sde_simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hbm/random.hpp"
#include "parallel.hpp"

namespace hbm {

std::string_view to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::Euler:
      return "euler";
    case Scheme::HyperbolicEuler:
      return "hyperbolic";
    case Scheme::IntegratingFactor:
      return "integrating-factor";
    case Scheme::ConditionalGaussian:
      return "conditional-gaussian";
  }
  return "unknown";
}

std::vector<double> PathEnsemble::column(std::size_t time_index) const {
  std::vector<double> c(n_paths);
  for (std::size_t i = 0; i < n_paths; ++i) c[i] = at(i, time_index);
  return c;
}

std::size_t PathEnsemble::exploded_count() const {
  return static_cast<std::size_t>(
      std::count_if(explosion_time.begin(), explosion_time.end(), [](double t) { return t >= 0.0; }));
}

double default_dt(const ModelParams& params) {
  const double s2 = params.sigma2 * params.sigma2;
  return 1e-3 * std::min(1.0, s2 > 0.0 ? 1.0 / s2 : 1.0);
}

namespace {

void check_times(const std::vector<double>& times, std::size_t n_paths, double dt) {
  if (times.empty()) {
    throw std::invalid_argument("times must not be empty");
  }
  if (n_paths == 0) {
    throw std::invalid_argument("n_paths must be at least 1");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("dt must be positive");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || (i > 0 && times[i] < times[i - 1])) {
      throw std::invalid_argument("times must be sorted and non-negative");
    }
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double gap = times[i] - times[i - 1];
    if (gap > 0.0 && dt > gap * (1.0 + 1e-12)) {
      throw std::invalid_argument("dt must not exceed the spacing of times");
    }
  }
}

PathEnsemble make_ensemble(const ModelParams& params, const std::vector<double>& times,
                           std::size_t n_paths, Scheme scheme, std::uint64_t seed) {
  PathEnsemble e;
  e.times = times;
  e.n_paths = n_paths;
  e.paths.assign(n_paths * times.size(), 0.0);
  e.scheme = scheme;
  e.seed = seed;
  e.params = params;
  e.explosion_time.assign(n_paths, -1.0);
  return e;
}

// Number of steps and step length that land exactly on the next grid time.
struct Stepping {
  std::size_t steps;
  double h;
};

Stepping stepping(double gap, double dt) {
  if (!(gap > 0.0)) return {0, 0.0};
  const auto steps = static_cast<std::size_t>(std::ceil(gap / dt - 1e-9));
  return {steps, gap / static_cast<double>(steps)};
}

}  // namespace

PathEnsemble simulate_euler(const ModelParams& params, const std::vector<double>& times,
                            std::size_t n_paths, double dt, std::uint64_t seed) {
  params.validate();
  check_times(times, n_paths, dt);
  PathEnsemble e = make_ensemble(params, times, n_paths, Scheme::Euler, seed);
  const std::size_t nt = times.size();
  const double rho_perp = std::sqrt(1.0 - params.rho * params.rho);
  detail::parallel_for(n_paths, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    double x = 0.0;
    double t = 0.0;
    bool exploded = false;
    for (std::size_t j = 0; j < nt; ++j) {
      const Stepping st = stepping(times[j] - t, dt);
      const double sq = std::sqrt(st.h);
      for (std::size_t k = 0; k < st.steps && !exploded; ++k) {
        const double z1 = standard_normal(rng);
        const double z2 = params.rho * z1 + rho_perp * standard_normal(rng);
        const double next = x + (params.mu1 - params.mu2 * x) * st.h +
                            params.sigma1 * sq * z1 + params.sigma2 * x * sq * z2;
        if (!std::isfinite(next) || std::abs(next) > kExplosionThreshold) {
          exploded = true;
          e.explosion_time[i] = t + static_cast<double>(k + 1) * st.h;
          if (std::isfinite(next)) x = next;
        } else {
          x = next;
        }
      }
      t = times[j];
      e.paths[i * nt + j] = x;
    }
  });
  return e;
}

PathEnsemble simulate_hyperbolic(const ModelParams& params, const std::vector<double>& times,
                                 std::size_t n_paths, double dt, std::uint64_t seed) {
  params.validate();
  if (params.mu1 != 0.0 || params.rho != 0.0) {
    throw std::invalid_argument("hyperbolic reduction valid only for symmetric case");
  }
  if (!(params.sigma2 > 0.0)) {
    throw nu_undefined_error();
  }
  check_times(times, n_paths, dt);
  PathEnsemble e = make_ensemble(params, times, n_paths, Scheme::HyperbolicEuler, seed);
  const std::size_t nt = times.size();
  const double nu = derive_nu(params);
  const double s2 = params.sigma2 * params.sigma2;
  const double scale = params.sigma1 / params.sigma2;
  detail::parallel_for(n_paths, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    double u = 0.0;
    double t = 0.0;
    bool exploded = false;
    for (std::size_t j = 0; j < nt; ++j) {
      const Stepping st = stepping(times[j] - t, dt);
      const double dtau = s2 * st.h;
      const double sq = std::sqrt(dtau);
      for (std::size_t k = 0; k < st.steps; ++k) {
        u += -0.5 * nu * std::tanh(u) * dtau + sq * standard_normal(rng);
      }
      t = times[j];
      double x = scale * std::sinh(u);
      if (!exploded && (!std::isfinite(x) || std::abs(x) > kExplosionThreshold)) {
        exploded = true;
        e.explosion_time[i] = t;
      }
      if (!std::isfinite(x)) x = std::copysign(std::numeric_limits<double>::max(), u);
      e.paths[i * nt + j] = x;
    }
  });
  return e;
}

std::vector<double> simulate_integrating_factor(const ModelParams& params, double t,
                                                std::size_t n_paths, std::size_t n_steps,
                                                std::uint64_t seed) {
  params.validate();
  if (!(t > 0.0)) {
    throw std::invalid_argument("t must be positive");
  }
  if (n_steps < 10) {
    throw std::invalid_argument("n_steps must be at least 10");
  }
  const double s2 = params.sigma2 * params.sigma2;
  // (nu / 2) sigma2^2 = mu2 + sigma2^2 / 2 also covers sigma2 = 0.
  const double decay = params.mu2 + 0.5 * s2;
  const double drift = params.mu1 - params.rho * params.sigma1 * params.sigma2;
  const double rho_perp = std::sqrt(1.0 - params.rho * params.rho);
  const double h = t / static_cast<double>(n_steps);
  const double sq = std::sqrt(h);
  std::vector<double> out(n_paths);
  detail::parallel_for(n_paths, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    double w2 = 0.0;
    double sum = 0.0;
    double prev = 1.0;
    for (std::size_t k = 0; k < n_steps; ++k) {
      const double z1 = standard_normal(rng);
      const double z2 = params.rho * z1 + rho_perp * standard_normal(rng);
      // The reversed-time weight is taken at the far end of the step: this is
      // the left point of the original forward Ito integral, which is what the
      // -rho sigma1 sigma2 drift correction compensates. The du integral is a
      // plain trapezoid.
      w2 += sq * z2;
      const double u = static_cast<double>(k + 1) * h;
      const double weight = std::exp(params.sigma2 * w2 - decay * u);
      sum += 0.5 * (prev + weight) * drift * h + weight * params.sigma1 * sq * z1;
      prev = weight;
    }
    out[i] = sum;
  });
  return out;
}

ConditionalGaussianState conditional_gaussian_state(const ModelParams& params,
                                                    std::span<const double> w2, double du) {
  if (w2.size() < 2) {
    throw std::invalid_argument("need at least two W2 samples");
  }
  const double decay = params.mu2 + 0.5 * params.sigma2 * params.sigma2;
  double int1 = 0.0;
  double int2 = 0.0;
  double prev1 = 0.0;
  double prev2 = 0.0;
  for (std::size_t k = 0; k < w2.size(); ++k) {
    const double u = static_cast<double>(k) * du;
    const double e = std::exp(params.sigma2 * w2[k] - decay * u);
    if (k > 0) {
      int1 += 0.5 * (prev1 + e) * du;
      int2 += 0.5 * (prev2 + e * e) * du;
    }
    prev1 = e;
    prev2 = e * e;
  }
  return {params.mu1 * int1, params.sigma1 * params.sigma1 * int2};
}

std::vector<double> simulate_conditional_gaussian(const ModelParams& params, double t,
                                                  std::size_t n_paths, std::size_t n_steps,
                                                  std::uint64_t seed) {
  params.validate();
  if (params.rho != 0.0) {
    throw std::invalid_argument("conditional representation requires zero correlation");
  }
  if (!(t > 0.0) || n_steps < 1) {
    throw std::invalid_argument("need t > 0 and at least one step");
  }
  const double h = t / static_cast<double>(n_steps);
  const double sq = std::sqrt(h);
  std::vector<double> out(n_paths);
  detail::parallel_for(n_paths, [&](std::size_t i) {
    Rng rng = make_stream(seed, i);
    std::vector<double> w2(n_steps + 1, 0.0);
    for (std::size_t k = 1; k <= n_steps; ++k) {
      w2[k] = w2[k - 1] + sq * standard_normal(rng);
    }
    const ConditionalGaussianState cg = conditional_gaussian_state(params, w2, h);
    out[i] = cg.m + std::sqrt(cg.v) * standard_normal(rng);
  });
  return out;
}

}  // namespace hbm
