#include "hbm/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>

#include "hbm/special_functions.hpp"

namespace hbm {

namespace {

void require_transform_domain(const ModelParams& params) {
  params.validate();
  if (!params.symmetric()) {
    throw std::invalid_argument("transform available only for mu1 = rho = 0");
  }
  if (!(params.sigma2 > 0.0)) {
    throw nu_undefined_error();
  }
}

void require_positive_p(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::domain_error("Laplace variable p must be positive");
  }
}

template <class Real>
Real gamma_root(const Real& nu, const Real& s) {
  using std::sqrt;
  const Real disc = sqrt(s + nu * nu / Real(4));
  // Rationalized for nu > 0 to avoid cancellation when s << nu^2.
  if (nu > Real(0)) {
    return s / (disc + nu / Real(2));
  }
  return disc - nu / Real(2);
}

template <class Real>
Real log_cosh(const Real& u) {
  using std::abs;
  using std::exp;
  using std::log;
  const Real a = abs(u);
  return a + log(Real(1) + exp(Real(-2) * a)) - log(Real(2));
}

template <class Real>
struct Setup {
  Real nu;
  Real gamma;
  Real u;
};

template <class Real>
Setup<Real> setup(const Real& ax, const Real& p, const ModelParams& params) {
  Setup<Real> st;
  st.nu = Real(derive_nu(params));
  const Real s2 = Real(params.sigma2) * Real(params.sigma2);
  st.gamma = gamma_root(st.nu, Real(2) * p / s2);
  st.u = stable_asinh(Real(params.sigma2) * ax / Real(params.sigma1));
  return st;
}

template <class Real>
Real log_sqrt_pi() {
  using std::log;
  return log(boost::math::constants::pi<Real>()) / Real(2);
}

template <class Real>
Real hypergeometric_form(const Real& ax, const Real& p, const ModelParams& params) {
  using std::exp;
  using std::log;
  const Setup<Real> st = setup(ax, p, params);
  const Real& nu = st.nu;
  const Real& g = st.gamma;
  const Real log_s1 = log(Real(params.sigma1));
  const Real log_pref = nu * log_s1 + (g - Real(1)) * log(Real(2)) - g * st.u +
                        log_gamma(g / Real(2)) + log_gamma((g + nu + Real(1)) / Real(2)) -
                        log_sqrt_pi<Real>() - log(Real(params.sigma2)) -
                        log_gamma(g + nu / Real(2) + Real(1)) -
                        (nu + Real(1)) * (log_s1 + log_cosh(st.u));
  const Real z = -exp(Real(-2) * st.u);
  return exp(log_pref) * hyp2f1<Real>(g, -nu / Real(2), g + nu / Real(2) + Real(1), z);
}

template <class Real>
Real negative_nu_form(const Real& ax, const Real& p, const ModelParams& params) {
  using std::exp;
  using std::log;
  const Setup<Real> st = setup(ax, p, params);
  const Real& nu = st.nu;
  const Real& g = st.gamma;
  const Real log_pref = (g + nu) * log(Real(2)) - (g + nu + Real(1)) * st.u +
                        log_gamma(g / Real(2)) + log_gamma((g + nu + Real(1)) / Real(2)) -
                        log_sqrt_pi<Real>() - log(Real(params.sigma1)) -
                        log(Real(params.sigma2)) - log_gamma(g + nu / Real(2) + Real(1));
  const Real z = -exp(Real(-2) * st.u);
  return exp(log_pref) *
         hyp2f1<Real>(nu / Real(2) + Real(1), g + nu + Real(1), g + nu / Real(2) + Real(1), z);
}

template <class Real>
Real nu_zero_form(const Real& ax, const Real& p, const ModelParams& params) {
  using std::exp;
  using std::log;
  const Setup<Real> st = setup(ax, p, params);
  const Real log_r = log(Real(params.sigma1)) + log_cosh(st.u);
  return exp(-st.gamma * st.u - log_r) / (st.gamma * Real(params.sigma2));
}

template <class Real>
Real dispatch(const Real& ax, const Real& p, const ModelParams& params) {
  const double nu = derive_nu(params);
  if (nu < 0.0) {
    return negative_nu_form(ax, p, params);
  }
  if (nu == 0.0) {
    return nu_zero_form(ax, p, params);
  }
  return hypergeometric_form(ax, p, params);
}

// nu recomputed from (mu2, sigma2) carries rounding noise, so snap within 1e-9.
std::optional<double> snap_even_integer(double nu) {
  const double even = 2.0 * std::round(0.5 * nu);
  if (std::abs(nu - even) <= 1e-9 * std::max(1.0, std::abs(nu))) return even;
  return std::nullopt;
}

}  // namespace

double indicial_root(double nu, double s) { return gamma_root(nu, s); }

TransformPoint make_transform_point(double x, double p, const ModelParams& params) {
  require_transform_domain(params);
  require_positive_p(p);
  const double nu = derive_nu(params);
  TransformPoint tp;
  tp.p = p;
  tp.s = 2.0 * p / (params.sigma2 * params.sigma2);
  tp.gamma = gamma_root(nu, tp.s);
  tp.u = stable_asinh(params.sigma2 * std::abs(x) / params.sigma1);
  tp.w = std::exp(-tp.u);
  tp.legendre_L = nu / 2.0;
  tp.legendre_M2 = tp.s + nu * nu / 4.0;
  return tp;
}

double transform_density(double x, double p, const ModelParams& params) {
  require_transform_domain(params);
  require_positive_p(p);
  return dispatch<double>(std::abs(x), p, params);
}

double transform_density_negative_nu(double x, double p, const ModelParams& params) {
  require_transform_domain(params);
  require_positive_p(p);
  return negative_nu_form<double>(std::abs(x), p, params);
}

double transform_density_legendre(double x, double p, const ModelParams& params) {
  require_transform_domain(params);
  require_positive_p(p);
  const TransformPoint tp = make_transform_point(x, p, params);
  const double nu = derive_nu(params);
  const double g = tp.gamma;
  const double log_pref = (g - 1.0 + nu / 2.0) * std::log(2.0) - log_sqrt_pi<double>() -
                          std::log(params.sigma1) - std::log(params.sigma2) +
                          log_gamma(g / 2.0) + log_gamma((g + nu + 1.0) / 2.0) -
                          (nu / 2.0 + 1.0) * log_cosh(tp.u);
  return std::exp(log_pref) * assoc_legendre(nu / 2.0, -nu / 2.0 - g, std::tanh(tp.u));
}

double omega_normalizer(double nu, double gamma) {
  if (!(gamma > 0.0)) {
    throw std::domain_error("omega_normalizer: gamma must be positive");
  }
  int s1 = 1;
  int s2 = 1;
  int s3 = 1;
  const double lg = log_abs_gamma(gamma + nu / 2.0 + 1.0, &s1) - log_abs_gamma(gamma / 2.0, &s2) -
                    log_abs_gamma((gamma + nu + 1.0) / 2.0, &s3);
  return s1 * s2 * s3 * std::exp((1.0 - gamma) * std::log(2.0) + log_sqrt_pi<double>() + lg);
}

std::vector<double> series_recurrence_coeffs(double nu, double gamma, int k_max) {
  if (k_max < 0 || k_max > 200) {
    throw std::invalid_argument("k_max must lie in [0, 200]");
  }
  std::vector<double> a(static_cast<std::size_t>(k_max) + 1, 0.0);
  a[0] = 1.0;
  for (int k = 0; k + 2 <= k_max; ++k) {
    const double den = (k + 2.0) * (k + 2.0 + 2.0 * gamma + nu);
    if (den == 0.0) {
      throw std::domain_error("series recurrence: vanishing denominator");
    }
    a[static_cast<std::size_t>(k) + 2] = -a[static_cast<std::size_t>(k)] * (k - nu) * (k + 2.0 * gamma) / den;
  }
  return a;
}

double transform_density_series(double x, double p, const ModelParams& params, int k_max) {
  const TransformPoint tp = make_transform_point(x, p, params);
  const double nu = derive_nu(params);
  const std::vector<double> a = series_recurrence_coeffs(nu, tp.gamma, k_max);
  double sum = 0.0;
  double wk = std::pow(tp.w, tp.gamma);
  double last = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double term = a[k] * wk;
    sum += term;
    if (term != 0.0) last = term;
    wk *= tp.w;
  }
  // A terminated (polynomial) series is exact; otherwise the alternating tail
  // is bounded by the last term kept.
  const bool terminated = a.size() >= 2 && a[a.size() - 1] == 0.0 && a[a.size() - 2] == 0.0;
  if (!terminated && std::abs(last) > 1e-12 * std::abs(sum)) {
    throw series_not_convergent("power series in w did not converge within k_max terms");
  }
  const double a0 = std::pow(params.sigma1, nu) / (params.sigma2 * omega_normalizer(nu, tp.gamma));
  const double log_r = std::log(params.sigma1) + log_cosh(tp.u);
  return a0 * sum * std::exp(-(nu + 1.0) * log_r);
}

std::complex<double> transform_density_closed(double x, std::complex<double> p,
                                              const ModelParams& params) {
  require_transform_domain(params);
  const std::optional<double> snapped = snap_even_integer(derive_nu(params));
  if (!snapped) {
    throw std::invalid_argument("closed transform needs an even integer nu");
  }
  const double nu = *snapped;
  using C = std::complex<double>;
  const double u = stable_asinh(params.sigma2 * std::abs(x) / params.sigma1);
  const C s = 2.0 * p / (params.sigma2 * params.sigma2);
  const C g = std::sqrt(s + nu * nu / 4.0) - nu / 2.0;
  const double w2 = std::exp(-2.0 * u);
  if (nu >= 0.0) {
    const int n = static_cast<int>(nu / 2.0);
    C ratio = 1.0 / g;
    for (int j = 0; j < n; ++j) {
      ratio *= ((g + 1.0) / 2.0 + static_cast<double>(j)) / (g + static_cast<double>(j + 1));
    }
    C poly = 1.0;
    C term = 1.0;
    for (int j = 0; j < n; ++j) {
      term *= (static_cast<double>(j - n)) * (g + static_cast<double>(j)) /
              ((g + static_cast<double>(n + 1 + j)) * static_cast<double>(j + 1)) * (-w2);
      poly += term;
    }
    const double log_r = std::log(params.sigma1) + log_cosh(u);
    const double front = std::exp(nu * std::log(params.sigma1) - (nu + 1.0) * log_r) / params.sigma2;
    return front * ratio * std::exp(-g * u) * poly;
  }
  const int n = static_cast<int>(-nu / 2.0);
  C ratio = std::pow(2.0, 1.0 - 2.0 * n);
  for (int j = 0; j < n - 1; ++j) {
    ratio *= g - static_cast<double>(n - 1) + static_cast<double>(j);
  }
  for (int j = 0; j < n; ++j) {
    ratio /= (g + 1.0) / 2.0 - static_cast<double>(n) + static_cast<double>(j);
  }
  C poly = 1.0;
  C term = 1.0;
  for (int j = 0; j < n - 1; ++j) {
    term *= (static_cast<double>(j + 1 - n)) * (g - static_cast<double>(2 * n - 1) + static_cast<double>(j)) /
            ((g - static_cast<double>(n - 1) + static_cast<double>(j)) * static_cast<double>(j + 1)) * (-w2);
    poly += term;
  }
  return ratio / (params.sigma1 * params.sigma2) * std::exp(-(g + nu + 1.0) * u) * poly;
}

std::vector<Extended> stehfest_weights(int order) {
  if (order < 2 || order % 2 != 0 || order > 40) {
    throw std::invalid_argument("Stehfest order must be even and in [2, 40]");
  }
  const int half = order / 2;
  std::vector<Extended> fact(static_cast<std::size_t>(order) + 1);
  fact[0] = 1;
  for (int i = 1; i <= order; ++i) {
    fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * i;
  }
  auto f = [&](int i) -> const Extended& { return fact[static_cast<std::size_t>(i)]; };
  std::vector<Extended> v(static_cast<std::size_t>(order));
  for (int k = 1; k <= order; ++k) {
    Extended sum = 0;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      sum += boost::multiprecision::pow(Extended(j), half) * f(2 * j) /
             (f(half - j) * f(j) * f(j - 1) * f(k - j) * f(2 * j - k));
    }
    v[static_cast<std::size_t>(k - 1)] = ((k + half) % 2 == 0) ? sum : Extended(-sum);
  }
  return v;
}

double talbot_fixed(const std::function<std::complex<double>(std::complex<double>)>& fhat,
                    double t, int nodes) {
  if (!(t > 0.0) || nodes < 2) {
    throw std::invalid_argument("Talbot inversion needs t > 0 and at least two nodes");
  }
  const double pi = boost::math::constants::pi<double>();
  const double m = static_cast<double>(nodes);
  const double r = 2.0 * m / (5.0 * t);
  double sum = 0.5 * std::exp(r * t) * fhat({r, 0.0}).real();
  for (int k = 1; k < nodes; ++k) {
    const double theta = k * pi / m;
    const double cot = std::cos(theta) / std::sin(theta);
    const std::complex<double> s(r * theta * cot, r * theta);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    sum += (std::exp(t * s) * fhat(s) * std::complex<double>(1.0, sigma)).real();
  }
  return r / m * sum;
}

InversionResult invert_transform(double x, double t, const ModelParams& params,
                                 const InversionOptions& options) {
  require_transform_domain(params);
  if (!(t > 0.0)) {
    throw std::invalid_argument("t must be positive");
  }
  InversionResult res;
  if (options.method == InversionMethod::TalbotFixed) {
    auto fhat = [&](std::complex<double> p) { return transform_density_closed(x, p, params); };
    res.raw = talbot_fixed(fhat, t, options.talbot_nodes);
    const double coarse = talbot_fixed(fhat, t, std::max(2, options.talbot_nodes - 8));
    res.change = std::abs(res.raw - coarse);
  } else {
    const int order = options.stehfest_order;
    const std::vector<Extended> fine = stehfest_weights(order);
    const std::vector<Extended> coarse =
        order >= 6 ? stehfest_weights(order - 4) : std::vector<Extended>{};
    const Extended ax = std::abs(x);
    const Extended ln2_t = boost::multiprecision::log(Extended(2)) / Extended(t);
    Extended f_fine = 0;
    Extended f_coarse = 0;
    for (int k = 1; k <= order; ++k) {
      const Extended value = dispatch<Extended>(ax, ln2_t * k, params);
      f_fine += fine[static_cast<std::size_t>(k - 1)] * value;
      if (k <= static_cast<int>(coarse.size())) {
        f_coarse += coarse[static_cast<std::size_t>(k - 1)] * value;
      }
    }
    res.raw = static_cast<double>(f_fine * ln2_t);
    res.change = coarse.empty() ? 0.0 : std::abs(res.raw - static_cast<double>(f_coarse * ln2_t));
    if (res.change > 1e-2 * std::abs(res.raw) + 1e-6) {
      throw inversion_error("Gaver-Stehfest did not settle: f_N = " + std::to_string(res.raw) +
                            ", |f_N - f_{N-4}| = " + std::to_string(res.change));
    }
  }
  if (!std::isfinite(res.raw)) {
    throw inversion_error("inversion produced a non-finite value");
  }
  if (res.raw < -1e-8) {
    throw inversion_error("inverted density is negative beyond tolerance: " +
                          std::to_string(res.raw));
  }
  res.value = std::max(0.0, res.raw);
  return res;
}

double invert_transform(double x, double t, const ModelParams& params, InversionMethod method) {
  InversionOptions options;
  options.method = method;
  return invert_transform(x, t, params, options).value;
}

}  // namespace hbm
