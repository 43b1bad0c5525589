#pragma once

// Special-function kernel: Gauss hypergeometric series, log-gamma, normal and
// Student distributions, and the Ferrers associated Legendre function.
//
// hyp2f1 and log_gamma are templates so the Laplace-inversion code can run
// them in extended precision; everything else is plain double.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>

namespace hbm {

class series_not_convergent : public std::runtime_error {
 public:
  explicit series_not_convergent(const char* what = "series not convergent")
      : std::runtime_error(what) {}
};

struct Hyp2F1Args {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double z = 0.0;
};

namespace detail {

template <class Real>
bool is_nonpositive_integer(const Real& x) {
  using std::floor;
  return x <= Real(0) && floor(x) == x;
}

template <class Real>
Real eps() {
  return std::numeric_limits<Real>::epsilon();
}

// Plain Gauss series. Terminates exactly when a or b is a non-positive integer.
template <class Real>
Real hyp2f1_direct(const Real& a, const Real& b, const Real& c, const Real& z,
                   std::size_t max_terms) {
  using std::abs;
  Real sum = 1;
  Real term = 1;
  int quiet = 0;
  for (std::size_t k = 0; k < max_terms; ++k) {
    const Real kk = Real(static_cast<double>(k));
    term *= (a + kk) * (b + kk) / ((c + kk) * (kk + Real(1))) * z;
    if (term == Real(0)) {
      return sum;
    }
    sum += term;
    if (abs(term) <= eps<Real>() * abs(sum)) {
      if (++quiet == 3) {
        return sum;
      }
    } else {
      quiet = 0;
    }
  }
  throw series_not_convergent();
}

// Bernoulli numbers B_2 .. B_30 as (numerator, denominator).
inline constexpr std::array<std::array<double, 2>, 15> kBernoulli = {{
    {1.0, 6.0},
    {-1.0, 30.0},
    {1.0, 42.0},
    {-1.0, 30.0},
    {5.0, 66.0},
    {-691.0, 2730.0},
    {7.0, 6.0},
    {-3617.0, 510.0},
    {43867.0, 798.0},
    {-174611.0, 330.0},
    {854513.0, 138.0},
    {-236364091.0, 2730.0},
    {8553103.0, 6.0},
    {-23749461029.0, 870.0},
    {8615841276005.0, 14322.0},
}};

template <class Real>
int stirling_shift() {
  return std::numeric_limits<Real>::digits10 <= 20 ? 15 : 2 * std::numeric_limits<Real>::digits10;
}

}  // namespace detail

/// log Gamma(x) for x > 0 by upward recurrence and the Stirling series.
template <class Real>
Real log_gamma(Real x) {
  using std::log;
  if (!(x > Real(0))) {
    throw std::domain_error("log_gamma: argument must be positive");
  }
  const Real shift_to = Real(detail::stirling_shift<Real>());
  Real correction = 0;
  Real prod = 1;
  while (x < shift_to) {
    prod *= x;
    if (prod > Real(1e200)) {
      correction += log(prod);
      prod = 1;
    }
    x += Real(1);
  }
  correction += log(prod);
  const Real half_log_two_pi = log(Real(2) * boost::math::constants::pi<Real>()) / Real(2);
  Real series = 0;
  Real xpow = x;
  const Real x2 = x * x;
  for (std::size_t k = 0; k < detail::kBernoulli.size(); ++k) {
    const Real n = Real(2 * static_cast<double>(k) + 2);
    const Real b = Real(detail::kBernoulli[k][0]) / Real(detail::kBernoulli[k][1]);
    series += b / (n * (n - Real(1)) * xpow);
    xpow *= x2;
  }
  return (x - Real(0.5)) * log(x) - x + half_log_two_pi + series - correction;
}

double log_gamma_real(double x);

/// |Gamma(re + i im)|; throws std::domain_error at the poles.
double gamma_abs_complex(double re, double im);

/// log|Gamma(x)| and the sign of Gamma(x) for any real x off the poles.
double log_abs_gamma(double x, int* sign = nullptr);

/// Gauss hypergeometric 2F1(a, b; c; z) for real parameters and -1 <= z <= 1.
///
/// Polynomial cases (a or b a non-positive integer) are summed directly.
/// For z < -1/2 the Pfaff transformation maps the argument into (0, 1/2].
template <class Real>
Real hyp2f1(const Real& a, const Real& b, const Real& c, const Real& z) {
  using std::pow;
  if (detail::is_nonpositive_integer(c)) {
    throw std::domain_error("hyp2f1: c is a non-positive integer");
  }
  if (z < Real(-1) || z > Real(1)) {
    throw series_not_convergent();
  }
  if (a == Real(0) || b == Real(0) || z == Real(0)) {
    return Real(1);
  }
  const bool poly_a = detail::is_nonpositive_integer(a);
  const bool poly_b = detail::is_nonpositive_integer(b);
  if (poly_a || poly_b) {
    return detail::hyp2f1_direct(a, b, c, z, 1000000);
  }
  if (z >= Real(-0.5) && z <= Real(0.5)) {
    return detail::hyp2f1_direct(a, b, c, z, 20000);
  }
  if (z < Real(-0.5)) {
    const Real zt = z / (z - Real(1));
    return pow(Real(1) - z, -b) * detail::hyp2f1_direct(b, c - a, c, zt, 20000);
  }
  if (z == Real(1)) {
    const Real d = c - a - b;
    if (!(d > Real(0))) {
      throw series_not_convergent();
    }
    using std::exp;
    return exp(log_gamma(c) + log_gamma(d) - log_gamma(c - a) - log_gamma(c - b));
  }
  return detail::hyp2f1_direct(a, b, c, z, 200000);
}

double hyp2f1(const Hyp2F1Args& args);

/// Standard normal CDF.
double normal_cdf(double x);
/// Standard normal survival function 1 - Phi(x), accurate in the upper tail.
double normal_sf(double x);
/// log(1 - Phi(x)) without underflow for large x.
double log_normal_sf(double x);
/// Inverse of normal_cdf on (0, 1).
double normal_quantile(double u);

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// Standard Student-t CDF and survival function with nu > 0 degrees of freedom.
double student_cdf(double x, double nu);
double student_sf(double x, double nu);
double student_pdf(double x, double nu);

/// Student-t quantile: closed forms for nu in {1, 2, 4}, root finding otherwise.
double student_quantile(double u, double nu);

/// Ferrers associated Legendre function P_L^M(q), -1 < q < 1, real order.
double assoc_legendre(double degree, double order, double q);

}  // namespace hbm
