#include "hbm/risk.hpp"

#include <cmath>
#include <stdexcept>

#include "hbm/moments.hpp"
#include "hbm/special_functions.hpp"

namespace hbm {

namespace {

void check_request(const VarRequest& req) {
  req.params.validate();
  if (!(req.u0 > 0.0 && req.u0 < 1.0)) {
    throw std::domain_error("u0 must lie in (0, 1)");
  }
  if (!(req.t > 0.0)) {
    throw std::invalid_argument("t must be positive");
  }
}

double student_unit_variance_scale(double nu) {
  if (!(nu > 2.0)) {
    throw std::domain_error("unit-variance Student tail needs nu > 2");
  }
  return std::sqrt(nu / (nu - 2.0));
}

}  // namespace

double gaussian_var(const VarRequest& req) {
  check_request(req);
  return req.params.sigma1 * std::sqrt(req.t) * normal_quantile(req.u0);
}

double hyperbolic_var(const VarRequest& req) {
  check_request(req);
  if (!(req.params.sigma2 > 0.0)) {
    throw std::domain_error("hyperbolic VaR needs sigma2 > 0; use gaussian_var");
  }
  const double s2 = req.params.sigma2;
  return req.params.sigma1 / s2 * std::sinh(s2 * std::sqrt(req.t) * normal_quantile(req.u0));
}

VarResult value_at_risk(const VarRequest& req) {
  VarResult r;
  r.signed_var = req.model == VarModel::GaussianVar ? gaussian_var(req) : hyperbolic_var(req);
  r.var = std::abs(r.signed_var);
  return r;
}

double momentum_mixture_var_experimental(const VarRequest& req) {
  check_request(req);
  if (!(req.params.sigma2 > 0.0)) {
    throw nu_undefined_error();
  }
  const double tau = req.params.sigma2 * req.params.sigma2 * req.t;
  const double sq = std::sqrt(tau);
  auto cdf = [&](double u) { return 0.5 * (normal_cdf((u - tau) / sq) + normal_cdf((u + tau) / sq)); };
  double lo = -tau - 40.0 * sq - 1.0;
  double hi = tau + 40.0 * sq + 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < req.u0 ? lo : hi) = mid;
  }
  const double u = 0.5 * (lo + hi);
  return req.params.sigma1 / req.params.sigma2 * std::sinh(u);
}

double log_tail_probability(double k_sigma, TailFamily family, std::optional<double> nu,
                            TailSide side) {
  if (!(k_sigma >= 0.0)) {
    throw std::domain_error("k_sigma must be non-negative");
  }
  const double sides = side == TailSide::TwoSided ? std::log(2.0) : 0.0;
  if (family == TailFamily::Gaussian) {
    return std::min(0.0, log_normal_sf(k_sigma) + sides);
  }
  if (!nu) {
    throw std::invalid_argument("Student tail needs nu");
  }
  const double x = k_sigma * student_unit_variance_scale(*nu);
  return std::min(0.0, std::log(student_sf(x, *nu)) + sides);
}

double tail_probability(double k_sigma, TailFamily family, std::optional<double> nu, TailSide side) {
  return std::exp(log_tail_probability(k_sigma, family, nu, side));
}

std::vector<ExplosionRow> explosion_report(const ModelParams& params, const std::vector<double>& t_grid,
                                           double k) {
  std::vector<ExplosionRow> rows;
  rows.reserve(t_grid.size());
  for (double t : t_grid) {
    ExplosionRow r;
    r.t = t;
    r.variance = variance_closed_form(params, t);
    r.explosion_factor = variance_explosion_factor(params, t);
    r.k_equivalent = sigma_event_equivalent(k, r.explosion_factor);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hbm
