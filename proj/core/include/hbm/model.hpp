#pragma once

// Parameters of the hybrid arithmetic/geometric return SDE
//
//   dX = (mu1 - mu2 X) dt + sigma1 dW1 + sigma2 X dW2,   corr(W1, W2) = rho,
//
// together with the quantities derived from them: the degrees-of-freedom
// parameter nu = 1 + 2 mu2 / sigma2^2, the market-state classification and
// the hyperbolic coordinate X = (sigma1 / sigma2) sinh(u).

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hbm {

/// Raised when an operation needs nu but sigma2 == 0 (pure arithmetic model).
class nu_undefined_error : public std::domain_error {
 public:
  nu_undefined_error() : std::domain_error("nu undefined; pure arithmetic case") {}
};

struct ModelParams {
  double mu1 = 0.0;     // fundamental drift
  double mu2 = 0.0;     // technical mean-reversion rate
  double sigma1 = 1.0;  // fundamental volatility
  double sigma2 = 0.0;  // technical volatility
  double rho = 0.0;     // correlation of W1 and W2

  /// Symmetric (mu1 = rho = 0) parameters with the given degrees of freedom.
  static ModelParams from_nu(double nu, double sigma1, double sigma2);

  /// Throws std::invalid_argument unless sigma1 > 0, sigma2 >= 0, |rho| <= 1.
  void validate() const;

  bool symmetric() const noexcept { return mu1 == 0.0 && rho == 0.0; }

  /// Covariance combination sigma1^2 + sigma2^2 x^2 + 2 rho sigma1 sigma2 x.
  double diffusion_squared(double x) const noexcept {
    return sigma1 * sigma1 + sigma2 * sigma2 * x * x + 2.0 * rho * sigma1 * sigma2 * x;
  }
};

double derive_nu(const ModelParams& params);

/// Pearson "m" exponent, (nu + 1) / 2.
inline double derive_m(const ModelParams& params) { return 0.5 * (derive_nu(params) + 1.0); }

enum class Regime { VarianceExplosive, GaussianVarianceBoundary, VarianceStable };

std::string_view to_string(Regime regime) noexcept;

struct MarketState {
  double nu = 0.0;
  Regime regime = Regime::VarianceExplosive;
  bool momentum_dominated = false;
  double timescale = 0.0;    // sigma2
  double price_scale = 0.0;  // sigma2 / sigma1
};

/// The nu < 2 / nu == 2 / nu > 2 trichotomy. The boundary uses exact
/// comparison on the computed nu.
MarketState classify_market(const ModelParams& params);

struct HyperbolicCoords {
  double z = 0.0;    // (1/sigma2) asinh(sigma2 x / sigma1)
  double u = 0.0;    // sigma2 z
  double tau = 0.0;  // sigma2^2 t
};

HyperbolicCoords to_hyperbolic(double x, const ModelParams& params, double t = 0.0);
double from_hyperbolic(double z, const ModelParams& params);

/// asinh that stays finite and accurate for |y| up to the double range.
template <class Real>
Real stable_asinh(const Real& y) {
  using std::abs;
  using std::log;
  using std::sqrt;
  const Real a = abs(y);
  Real r;
  if (a > Real(1e8)) {
    r = log(Real(2) * a) + Real(1) / (Real(4) * a * a);
  } else {
    r = log(a + sqrt(Real(1) + a * a));
  }
  return y < Real(0) ? -r : r;
}

template <>
inline double stable_asinh<double>(const double& y) {
  const double a = std::abs(y);
  const double r = a > 1e8 ? std::log(2.0 * a) + 1.0 / (4.0 * a * a) : std::asinh(a);
  return std::copysign(r, y);
}

}  // namespace hbm
