#include "hbm/model.hpp"

namespace hbm {

ModelParams ModelParams::from_nu(double nu, double sigma1, double sigma2) {
  ModelParams p;
  p.sigma1 = sigma1;
  p.sigma2 = sigma2;
  p.mu2 = 0.5 * (nu - 1.0) * sigma2 * sigma2;
  return p;
}

void ModelParams::validate() const {
  if (!(sigma1 > 0.0) || !std::isfinite(sigma1)) {
    throw std::invalid_argument("sigma1 must be positive and finite");
  }
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    throw std::invalid_argument("sigma2 must be non-negative and finite");
  }
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw std::invalid_argument("rho must lie in [-1, 1]");
  }
  if (!std::isfinite(mu1) || !std::isfinite(mu2)) {
    throw std::invalid_argument("drift parameters must be finite");
  }
}

double derive_nu(const ModelParams& params) {
  if (params.sigma2 == 0.0) {
    throw nu_undefined_error();
  }
  return 1.0 + 2.0 * params.mu2 / (params.sigma2 * params.sigma2);
}

std::string_view to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::VarianceExplosive:
      return "VarianceExplosive";
    case Regime::GaussianVarianceBoundary:
      return "GaussianVarianceBoundary";
    case Regime::VarianceStable:
      return "VarianceStable";
  }
  return "Unknown";
}

MarketState classify_market(const ModelParams& params) {
  MarketState state;
  state.nu = derive_nu(params);
  if (state.nu < 2.0) {
    state.regime = Regime::VarianceExplosive;
  } else if (state.nu == 2.0) {
    state.regime = Regime::GaussianVarianceBoundary;
  } else {
    state.regime = Regime::VarianceStable;
  }
  state.momentum_dominated = state.nu < 0.0;
  state.timescale = params.sigma2;
  state.price_scale = params.sigma2 / params.sigma1;
  return state;
}

HyperbolicCoords to_hyperbolic(double x, const ModelParams& params, double t) {
  if (!(params.sigma2 > 0.0)) {
    throw nu_undefined_error();
  }
  HyperbolicCoords c;
  c.u = stable_asinh(params.sigma2 * x / params.sigma1);
  c.z = c.u / params.sigma2;
  c.tau = params.sigma2 * params.sigma2 * t;
  return c;
}

double from_hyperbolic(double z, const ModelParams& params) {
  if (!(params.sigma2 > 0.0)) {
    throw nu_undefined_error();
  }
  return params.sigma1 / params.sigma2 * std::sinh(params.sigma2 * z);
}

}  // namespace hbm
