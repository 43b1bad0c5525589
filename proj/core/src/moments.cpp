#include "hbm/moments.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace hbm {

namespace {

Eigen::MatrixXd moment_generator(const ModelParams& p, int order) {
  const int size = order + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  for (int n = 1; n <= order; ++n) {
    const double nn = n;
    const double pairs = 0.5 * nn * (nn - 1.0);
    a(n, n) = -(p.mu2 * nn - pairs * p.sigma2 * p.sigma2);
    a(n, n - 1) = p.mu1 * nn + 2.0 * pairs * p.rho * p.sigma1 * p.sigma2;
    if (n >= 2) {
      a(n, n - 2) = pairs * p.sigma1 * p.sigma1;
    }
  }
  return a;
}

void require_symmetric(const ModelParams& params) {
  if (!params.symmetric()) {
    throw std::invalid_argument("closed form valid only for rho=0=mu1");
  }
}

}  // namespace

std::vector<MomentVector> moment_odes_solve(const ModelParams& params, int order,
                                            const std::vector<double>& t_grid, double x0) {
  params.validate();
  if (order < 1 || order > kMaxMomentOrder) {
    throw std::invalid_argument("moment order must lie in [1, 12]");
  }
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0) || (i > 0 && t_grid[i] < t_grid[i - 1])) {
      throw std::invalid_argument("t_grid must be sorted and non-negative");
    }
  }
  const Eigen::MatrixXd a = moment_generator(params, order);
  Eigen::VectorXd e0(order + 1);
  e0(0) = 1.0;
  for (int n = 1; n <= order; ++n) {
    e0(n) = e0(n - 1) * x0;
  }
  std::vector<MomentVector> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    MomentVector mv;
    mv.order = order;
    mv.t = t;
    mv.params = params;
    Eigen::VectorXd e = e0;
    if (t > 0.0) {
      const Eigen::MatrixXd at = a * t;
      e = at.exp() * e0;
    }
    mv.values.assign(e.data(), e.data() + e.size());
    mv.values[0] = 1.0;
    out.push_back(std::move(mv));
  }
  return out;
}

double mean_closed_form(const ModelParams& params, double t, double x0) {
  const double decay = std::exp(-params.mu2 * t);
  if (std::abs(params.mu2 * t) < 1e-12) {
    return x0 * decay + params.mu1 * t;
  }
  return x0 * decay - params.mu1 / params.mu2 * std::expm1(-params.mu2 * t);
}

double variance_closed_form(const ModelParams& params, double t) {
  params.validate();
  require_symmetric(params);
  if (!(t >= 0.0)) {
    throw std::invalid_argument("t must be non-negative");
  }
  const double s1 = params.sigma1 * params.sigma1;
  const double kappa = 2.0 * params.mu2 - params.sigma2 * params.sigma2;
  const double kt = kappa * t;
  if (std::abs(kt) < 1e-8) {
    return s1 * t * (1.0 - 0.5 * kt);
  }
  return -s1 * std::expm1(-kt) / kappa;
}

double explosion_factor_from_exponent(double alpha_t) {
  if (std::abs(alpha_t) < 1e-8) {
    return 1.0 + 0.5 * alpha_t;
  }
  return std::expm1(alpha_t) / alpha_t;
}

double variance_explosion_factor(const ModelParams& params, double t) {
  params.validate();
  if (!(t >= 0.0)) {
    throw std::invalid_argument("t must be non-negative");
  }
  if (t == 0.0) return 1.0;
  const double naive = params.sigma1 * params.sigma1 * t;
  if (params.symmetric()) {
    const double kappa = 2.0 * params.mu2 - params.sigma2 * params.sigma2;
    return explosion_factor_from_exponent(-kappa * t);
  }
  const auto mv = moment_odes_solve(params, 2, {t});
  return mv.front().variance() / naive;
}

double sigma_event_equivalent(double k, double explosion_factor) {
  if (!(explosion_factor > 0.0)) {
    throw std::invalid_argument("variance explosion factor must be positive");
  }
  return k / std::sqrt(explosion_factor);
}

double sigma_event_equivalent(double k, const ModelParams& params, double t) {
  return sigma_event_equivalent(k, variance_explosion_factor(params, t));
}

}  // namespace hbm
