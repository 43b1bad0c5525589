#pragma once

// Laplace transform in time of the density f(x, t) for mu1 = rho = 0:
//
//   f~(x, p) = int_0^inf e^{-p t} f(x, t) dt,
//
// in hypergeometric, negative-nu, Legendre and raw-series forms, plus the
// closed rational forms for even integer nu and numerical inversion.

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hbm/model.hpp"

namespace hbm {

using Extended = boost::multiprecision::cpp_bin_float_50;

struct TransformPoint {
  double p = 0.0;
  double s = 0.0;      // 2 p / sigma2^2
  double gamma = 0.0;  // sqrt(s + nu^2 / 4) - nu / 2
  double w = 1.0;      // exp(-u)
  double u = 0.0;      // asinh(sigma2 |x| / sigma1)
  double legendre_L = 0.0;
  double legendre_M2 = 0.0;
};

TransformPoint make_transform_point(double x, double p, const ModelParams& params);

/// Root of gamma^2 + nu gamma - s = 0 taken for every nu.
double indicial_root(double nu, double s);

/// Hypergeometric form; nu < 0 is routed to transform_density_negative_nu.
double transform_density(double x, double p, const ModelParams& params);

/// The same transform written around 2F1(nu/2 + 1, gamma + nu + 1; gamma + nu/2 + 1; -w^2).
/// Valid for any nu; the natural choice for nu < 0.
double transform_density_negative_nu(double x, double p, const ModelParams& params);

/// 2^{gamma-1+nu/2} / (sqrt(pi) sigma1 sigma2) Gamma(gamma/2) Gamma((gamma+nu+1)/2)
///   (cosh u)^{-(nu/2+1)} P_{nu/2}^{-nu/2-gamma}(tanh u)
double transform_density_legendre(double x, double p, const ModelParams& params);

/// Direct summation of the power series in w with series_recurrence_coeffs.
double transform_density_series(double x, double p, const ModelParams& params, int k_max = 200);

/// Omega(nu, gamma) = 2^{1-gamma} sqrt(pi) Gamma(gamma + nu/2 + 1) / (Gamma(gamma/2) Gamma((gamma+nu+1)/2)).
double omega_normalizer(double nu, double gamma);

/// a_0 = 1, a_1 = 0, a_{k+2} (k+2)(k+2+2 gamma+nu) = -a_k (k - nu)(k + 2 gamma).
std::vector<double> series_recurrence_coeffs(double nu, double gamma, int k_max);

/// Closed rational-in-gamma transform for even integer nu (within 1e-9), at complex p.
std::complex<double> transform_density_closed(double x, std::complex<double> p,
                                              const ModelParams& params);

enum class InversionMethod { GaverStehfest, TalbotFixed };

inline constexpr int kDefaultStehfestOrder = 28;

struct InversionOptions {
  InversionMethod method = InversionMethod::GaverStehfest;
  int stehfest_order = kDefaultStehfestOrder;
  int talbot_nodes = 32;
};

struct InversionResult {
  double value = 0.0;   // clipped at 0
  double raw = 0.0;     // before clipping
  double change = 0.0;  // |f_N - f_{N-4}| (Stehfest) or |f_M - f_{M-8}| (Talbot)
};

/// Time-domain density at (x, t). Values below -1e-8 or a Stehfest change
/// larger than 1e-2 |f| + 1e-6 raise inversion_error.
InversionResult invert_transform(double x, double t, const ModelParams& params,
                                 const InversionOptions& options);
double invert_transform(double x, double t, const ModelParams& params,
                        InversionMethod method = InversionMethod::GaverStehfest);

class inversion_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stehfest weights V_1..V_N (N even) in extended precision.
std::vector<Extended> stehfest_weights(int order);

/// Gaver-Stehfest inversion of a transform evaluated in extended precision.
template <class F>
Extended gaver_stehfest(F&& fhat, const Extended& t, int order) {
  const std::vector<Extended> v = stehfest_weights(order);
  const Extended ln2_t = boost::multiprecision::log(Extended(2)) / t;
  Extended sum = 0;
  for (int k = 1; k <= order; ++k) {
    sum += v[static_cast<std::size_t>(k - 1)] * fhat(ln2_t * k);
  }
  return sum * ln2_t;
}

/// Fixed-Talbot inversion with M nodes of a complex-valued transform.
double talbot_fixed(const std::function<std::complex<double>(std::complex<double>)>& fhat,
                    double t, int nodes);

}  // namespace hbm
