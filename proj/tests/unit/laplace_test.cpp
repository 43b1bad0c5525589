#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hbm/densities.hpp"
#include "hbm/laplace.hpp"
#include "hbm/special_functions.hpp"
#include "oracles.hpp"

using namespace hbm;

namespace {

double w_of(double x, const ModelParams& p) { return std::exp(-std::asinh(p.sigma2 * std::abs(x) / p.sigma1)); }
double r_of(double x, const ModelParams& p) {
  return std::sqrt(p.sigma1 * p.sigma1 + p.sigma2 * p.sigma2 * x * x);
}

}  // namespace

TEST(Transform, Nu0ClosedForm) {
  const ModelParams p = ModelParams::from_nu(0.0, 1.3, 0.7);
  for (double x : {0.0, 0.4, -2.0, 9.0}) {
    for (double pp : {0.1, 1.0, 6.0}) {
      const double g = std::sqrt(2.0 * pp) / p.sigma2;
      const double ref = std::pow(w_of(x, p), g) / (g * p.sigma2 * r_of(x, p));
      EXPECT_LT(oracle::rel(transform_density(x, pp, p), ref), 1e-12) << x << ' ' << pp;
    }
  }
  const ModelParams unit = ModelParams::from_nu(0.0, 1.0, 1.0);
  EXPECT_NEAR(transform_density(0.0, 2.0, unit), 0.5, 1e-14);
}

TEST(Transform, Nu2ClosedForm) {
  const ModelParams p = ModelParams::from_nu(2.0, 0.9, 1.4);
  for (double x : {0.0, 0.3, 3.0}) {
    for (double pp : {0.5, 2.0}) {
      const double s = 2.0 * pp / (p.sigma2 * p.sigma2);
      const double g = std::sqrt(s + 1.0) - 1.0;
      const double w = w_of(x, p);
      const double ref = p.sigma1 * p.sigma1 / (2.0 * p.sigma2 * std::pow(r_of(x, p), 3.0)) *
                         (std::pow(w, g) / g + std::pow(w, g + 2.0) / (g + 2.0));
      EXPECT_LT(oracle::rel(transform_density(x, pp, p), ref), 1e-12) << x << ' ' << pp;
    }
  }
}

TEST(Transform, NegativeNuClosedForms) {
  const ModelParams m2 = ModelParams::from_nu(-2.0, 1.1, 0.8);
  const ModelParams m4 = ModelParams::from_nu(-4.0, 1.1, 0.8);
  for (double x : {0.0, 0.5, 4.0}) {
    for (double pp : {0.3, 3.0}) {
      const double s = 2.0 * pp / (0.8 * 0.8);
      const double w = w_of(x, m2);
      const double a = std::sqrt(s + 1.0);
      EXPECT_LT(oracle::rel(transform_density_negative_nu(x, pp, m2), std::pow(w, a) / (1.1 * 0.8 * a)), 1e-12);
      const double g = std::sqrt(s + 4.0) + 2.0;
      const double ref4 = (std::pow(w, g - 1.0) / (g - 1.0) + std::pow(w, g - 3.0) / (g - 3.0)) / (2.0 * 1.1 * 0.8);
      EXPECT_LT(oracle::rel(transform_density(x, pp, m4), ref4), 1e-12);
    }
  }
}

TEST(Transform, ClosedRationalFormsAgree) {
  for (double nu : {-6.0, -4.0, -2.0, 0.0, 2.0, 4.0}) {
    const ModelParams p = ModelParams::from_nu(nu, 1.0, 0.9);
    for (double x : {0.0, 0.7, 3.0}) {
      for (double pp : {0.4, 2.5}) {
        const double closed = transform_density_closed(x, {pp, 0.0}, p).real();
        EXPECT_LT(oracle::rel(transform_density(x, pp, p), closed), 1e-10) << nu << ' ' << x << ' ' << pp;
      }
    }
  }
  EXPECT_THROW(transform_density_closed(0.1, {1.0, 0.0}, ModelParams::from_nu(1.0, 1.0, 1.0)),
               std::invalid_argument);
}

TEST(Transform, RepresentationsAgreeOnGrid) {
  for (double nu : {0.0, 1.0, 2.0}) {
    const ModelParams p = ModelParams::from_nu(nu, 1.0, 1.0);
    for (double x : {0.1, 1.0, 5.0}) {
      for (double pp : {0.5, 1.0, 2.0}) {
        const double h = transform_density(x, pp, p);
        EXPECT_LT(oracle::rel(transform_density_legendre(x, pp, p), h), 1e-9);
        EXPECT_LT(oracle::rel(transform_density_series(x, pp, p), h), 1e-9);
        EXPECT_LT(oracle::rel(transform_density_negative_nu(x, pp, p), h), 1e-9);
      }
    }
  }
  const ModelParams p1 = ModelParams::from_nu(1.0, 1.0, 1.0);
  EXPECT_LT(oracle::rel(transform_density_legendre(0.7, 1.0, p1), transform_density(0.7, 1.0, p1)), 1e-9);
  const ModelParams p0 = ModelParams::from_nu(0.0, 1.0, 1.0);
  EXPECT_NEAR(transform_density_legendre(0.0, 1.5, p0), 1.0 / std::sqrt(3.0), 1e-12);
}

TEST(Transform, EvenInXAndErrors) {
  const ModelParams p = ModelParams::from_nu(1.5, 1.0, 0.6);
  EXPECT_DOUBLE_EQ(transform_density(-1.7, 0.8, p), transform_density(1.7, 0.8, p));
  EXPECT_THROW(transform_density(0.2, 0.0, p), std::domain_error);
  ModelParams q = p;
  q.mu1 = 0.1;
  EXPECT_THROW(transform_density(0.2, 1.0, q), std::invalid_argument);
}

TEST(Transform, NormalizedInX) {
  // int f~(x, p) dx = 1 / p
  for (double nu : {0.0, 1.0, 3.0}) {
    const ModelParams p = ModelParams::from_nu(nu, 1.0, 1.0);
    const double mass = 2.0 * oracle::half_line([&](double x) { return transform_density(x, 1.3, p); }, 0.0);
    EXPECT_NEAR(mass * 1.3, 1.0, 1e-8) << nu;
  }
}

TEST(Indicial, RandomDraws) {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> nu_d(-6.0, 6.0);
  std::uniform_real_distribution<double> s_d(0.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const double nu = nu_d(rng);
    double s = s_d(rng);
    if (s == 0.0) s = 50.0;
    const double g = indicial_root(nu, s);
    EXPECT_LT(std::abs(g * g + nu * g - s), 1e-10);
  }
}

TEST(Omega, DuplicationFormula) {
  for (double g : {0.5, 1.0, 2.0, 3.0}) {
    EXPECT_LT(oracle::rel(omega_normalizer(0.0, g), g), 1e-13) << g;
  }
  EXPECT_NEAR(omega_normalizer(0.0, 2.0), 2.0, 1e-13);
  EXPECT_THROW(omega_normalizer(1.0, 0.0), std::domain_error);
}

TEST(Omega, DerivativeAtOne) {
  for (auto [nu, g] : {std::pair{2.0, 1.0}, std::pair{1.0, 0.7}, std::pair{3.5, 2.2}}) {
    const auto y = [&](double w) { return std::pow(w, g) * oracle::hyp2f1(g, -0.5 * nu, g + 0.5 * nu + 1.0, -w * w); };
    EXPECT_NEAR(oracle::derivative(y, 1.0, 1e-3), omega_normalizer(nu, g), 1e-6) << nu;
  }
}

TEST(Series, Coefficients) {
  const auto a0 = series_recurrence_coeffs(0.0, 1.3, 10);
  EXPECT_EQ(a0[0], 1.0);
  for (std::size_t k = 1; k < a0.size(); ++k) EXPECT_EQ(a0[k], 0.0) << k;

  const auto a4 = series_recurrence_coeffs(4.0, 0.8, 20);
  EXPECT_NE(a4[4], 0.0);
  for (std::size_t k = 5; k < a4.size(); ++k) EXPECT_EQ(a4[k], 0.0) << k;

  const double nu = 3.0;
  const double g = 1.0;
  const auto a = series_recurrence_coeffs(nu, g, 200);
  for (int k = 0; k + 2 < 200; ++k) {
    const double lhs = a[k + 2] * (k + 2) * (k + 2 + 2 * g + nu);
    const double rhs = -a[k] * (k - nu) * (k + 2 * g);
    EXPECT_NEAR(lhs, rhs, 1e-15 * std::max(1.0, std::abs(rhs)));
  }
  double sum = 0.0;
  for (int k = 0; k <= 200; ++k) sum += a[k] * std::pow(0.5, k);
  EXPECT_NEAR(sum, hyp2f1(g, -0.5 * nu, g + 0.5 * nu + 1.0, -0.25), 1e-10);
  EXPECT_NEAR(sum, oracle::hyp2f1(g, -0.5 * nu, g + 0.5 * nu + 1.0, -0.25), 1e-10);
  EXPECT_THROW(series_recurrence_coeffs(1.0, 1.0, 201), std::invalid_argument);
}

TEST(Series, LinearTransformationIdentity) {
  for (double nu : {0.0, 1.0, 2.0}) {
    for (double w : {std::exp(-std::asinh(0.1)), std::exp(-std::asinh(1.0)), std::exp(-std::asinh(5.0))}) {
      for (double s : {1.0, 2.0, 4.0}) {
        const double g = indicial_root(nu, s);
        const double c = g + 0.5 * nu + 1.0;
        const double lhs = std::pow(1.0 + w * w, nu + 1.0) * hyp2f1(0.5 * nu + 1.0, g + nu + 1.0, c, -w * w);
        const double rhs = hyp2f1(g, -0.5 * nu, c, -w * w);
        EXPECT_LT(oracle::rel(lhs, rhs), 1e-10);
      }
    }
  }
}

TEST(Inversion, TextbookPair) {
  const auto fhat = [](const Extended& p) { return Extended(1) / (p + Extended(1)); };
  EXPECT_NEAR(static_cast<double>(gaver_stehfest(fhat, Extended(1), 28)), std::exp(-1.0), 1e-8);
  const double tal = talbot_fixed([](std::complex<double> p) { return 1.0 / (p + 1.0); }, 1.0, 32);
  EXPECT_NEAR(tal, 0.3678794, 1e-7);
}

TEST(Inversion, StehfestWeightsSumToZero) {
  for (int n : {8, 16, 28}) {
    const auto v = stehfest_weights(n);
    Extended sum = 0;
    for (const auto& x : v) sum += x;
    EXPECT_LT(static_cast<double>(boost::multiprecision::abs(sum)), 1e-20) << n;
  }
  EXPECT_THROW(stehfest_weights(7), std::invalid_argument);
}

TEST(Inversion, MatchesClosedForms) {
  const ModelParams p0 = ModelParams::from_nu(0.0, 1.0, 1.0);
  const ModelParams p2 = ModelParams::from_nu(2.0, 1.0, 1.0);
  for (double x : {0.0, 0.5, 2.0}) {
    for (double t : {0.5, 1.0, 5.0}) {
      EXPECT_LT(oracle::rel(invert_transform(x, t, p0), nu0_density(x, t, p0)), 1e-4);
      EXPECT_LT(oracle::rel(invert_transform(x, t, p2), chameleon_density(x, t, p2)), 1e-4);
    }
  }
}

TEST(Inversion, TalbotAndBimodal) {
  InversionOptions o;
  o.method = InversionMethod::TalbotFixed;
  const ModelParams p2 = ModelParams::from_nu(2.0, 1.0, 1.0);
  EXPECT_LT(oracle::rel(invert_transform(0.5, 1.0, p2, o).value, chameleon_density(0.5, 1.0, p2)), 1e-4);
  const ModelParams m2 = ModelParams::from_nu(-2.0, 1.3, 0.7);
  EXPECT_LT(oracle::rel(invert_transform(0.5, 1.0, m2), bimodal_density_numinus2(0.5, 1.0, m2)), 1e-4);
  EXPECT_THROW(invert_transform(0.5, 0.0, p2), std::invalid_argument);
}

TEST(Inversion, ResultDiagnostics) {
  const ModelParams p0 = ModelParams::from_nu(0.0, 1.0, 1.0);
  const InversionResult r = invert_transform(0.5, 1.0, p0, InversionOptions{});
  EXPECT_GE(r.value, 0.0);
  EXPECT_EQ(r.value, std::max(r.raw, 0.0));
  EXPECT_LT(r.change, 1e-2 * r.value + 1e-6);
}
