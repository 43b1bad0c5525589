#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hbm/microstructure.hpp"
#include "hbm/statistics.hpp"

using namespace hbm;

namespace {

MicrostructureParams unit_params(double buy, double sell, double mu) {
  MicrostructureParams m;
  m.lambda_buy = buy;
  m.lambda_sell = sell;
  m.mu_slope = mu;
  return m;
}

}  // namespace

TEST(FlowMoments, Fundamental) {
  const FlowMoments sym = flow_moments_fundamental(unit_params(3.0, 3.0, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(sym.mean, 0.0);
  const FlowMoments f = flow_moments_fundamental(unit_params(2.0, 1.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(f.mean, 1.0);
  EXPECT_DOUBLE_EQ(f.variance, 3.0);
}

TEST(FlowMoments, Technical) {
  const MicrostructureParams m = unit_params(0.0, 0.0, 1.0);
  const FlowMoments z = flow_moments_technical(m, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(z.mean, 0.0);
  EXPECT_DOUBLE_EQ(z.variance, 0.0);
  const FlowMoments a = flow_moments_technical(m, 0.1, 1.0);
  EXPECT_NEAR(a.mean, -0.1, 1e-15);
  EXPECT_NEAR(a.variance, 0.1, 1e-15);
  const FlowMoments b = flow_moments_technical(m, -0.1, 1.0);
  EXPECT_DOUBLE_EQ(b.mean, -a.mean);
  EXPECT_DOUBLE_EQ(b.variance, a.variance);
}

TEST(FlowMoments, LotSizeAndOrderSizeScaling) {
  MicrostructureParams m = unit_params(2.0, 1.0, 0.5);
  m.lot_size = 3;
  m.order_size = {OrderSizeKind::Geometric, 2.0};
  const FlowMoments f = flow_moments_fundamental(m, 1.0);
  EXPECT_DOUBLE_EQ(f.mean, 3.0 * 2.0 * 1.0);
  EXPECT_DOUBLE_EQ(f.variance, 9.0 * 3.0 * m.n2());
  const FlowMoments t = flow_moments_technical(m, 0.4, 0.1);
  EXPECT_NEAR(t.mean, -3.0 * 0.5 * 0.4 * 0.1 * 2.0, 1e-15);
}

TEST(OrderSize, SecondMoments) {
  EXPECT_DOUBLE_EQ((OrderSizeDist{OrderSizeKind::Deterministic, 3.0}).second_moment(), 9.0);
  EXPECT_DOUBLE_EQ((OrderSizeDist{OrderSizeKind::Geometric, 2.5}).second_moment(), 2.0 * 2.5 * 2.5 - 2.5);
  EXPECT_DOUBLE_EQ((OrderSizeDist{OrderSizeKind::ShiftedPoisson, 2.5}).second_moment(), 2.5 * 2.5 + 1.5);
  EXPECT_THROW((OrderSizeDist{OrderSizeKind::Deterministic, 1.5}).validate(), std::invalid_argument);
  EXPECT_THROW((OrderSizeDist{OrderSizeKind::Geometric, 0.5}).validate(), std::invalid_argument);
}

TEST(OrderSize, SampledTotalsMatchMoments) {
  Rng rng = make_stream(3, 0);
  for (OrderSizeKind kind : {OrderSizeKind::Geometric, OrderSizeKind::ShiftedPoisson}) {
    const OrderSizeDist d{kind, 2.5};
    std::vector<double> xs(200000);
    for (double& x : xs) x = static_cast<double>(d.sample_total(rng, 1));
    const SampleSummary s = summarize(xs);
    EXPECT_LT(std::abs(s.mean - 2.5), 4.0 * s.mean_se);
    EXPECT_LT(std::abs(s.second_moment - d.second_moment()), 4.0 * s.second_moment_se);
    EXPECT_EQ(d.sample_total(rng, 0), 0);
  }
}

TEST(SampleIncrement, NoRatesNoMove) {
  const Increment inc = sample_increment(unit_params(0.0, 0.0, 0.0), 0.7, 0.1, 1);
  EXPECT_EQ(inc.dx, 0.0);
  EXPECT_EQ(inc.sample.m_fundamental, 0);
  EXPECT_EQ(inc.sample.m_technical, 0);
}

TEST(SampleIncrement, SymmetricMeanZero) {
  const MicrostructureParams m = unit_params(4.0, 4.0, 0.0);
  Rng rng = make_stream(21, 0);
  std::vector<double> xs(1000000);
  for (double& x : xs) x = sample_increment(m, 0.0, 0.1, rng).dx;
  const SampleSummary s = summarize(xs);
  EXPECT_LT(std::abs(s.mean), 3.0 * s.mean_se);
  const FlowMoments f = flow_moments_fundamental(m, 0.1);
  EXPECT_LT(std::abs(s.variance - f.variance), 4.0 * s.variance_se);
}

TEST(SampleIncrement, TechnicalFlowMoments) {
  MicrostructureParams m = unit_params(1.0, 2.0, 3.0);
  m.omega = 0.5;
  m.lot_size = 2;
  m.order_size = {OrderSizeKind::ShiftedPoisson, 1.5};
  const double x = 0.8;
  const double dt = 0.05;
  Rng rng = make_stream(8, 1);
  std::vector<double> xs(400000);
  for (double& v : xs) v = sample_increment(m, x, dt, rng).dx;
  const SampleSummary s = summarize(xs);
  const FlowMoments f = flow_moments_fundamental(m, dt);
  const FlowMoments t = flow_moments_technical(m, x, dt);
  EXPECT_LT(std::abs(s.mean - m.omega * (f.mean + t.mean)), 4.0 * s.mean_se);
  EXPECT_LT(std::abs(s.variance - m.omega * m.omega * (f.variance + t.variance)), 4.0 * s.variance_se);
}

TEST(DiscretePath, ZeroRatesConstant) {
  const DiscretePath p = simulate_discrete_path(unit_params(0.0, 0.0, 0.0), 1.0, 0.3, 5);
  ASSERT_EQ(p.t.size(), p.x.size());
  EXPECT_DOUBLE_EQ(p.t.front(), 0.0);
  EXPECT_DOUBLE_EQ(p.t.back(), 1.0);
  for (double x : p.x) EXPECT_EQ(x, 0.0);
}

TEST(DiscretePath, EnsembleReproducible) {
  const MicrostructureParams m = unit_params(10.0, 12.0, 2.0);
  const auto a = simulate_discrete_ensemble(m, {0.5, 1.0}, 0.01, 64, 99);
  const auto b = simulate_discrete_ensemble(m, {0.5, 1.0}, 0.01, 64, 99);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 128u);
}

TEST(MapToSde, Examples) {
  const ModelParams z = map_to_sde(unit_params(5.0, 5.0, 0.0));
  EXPECT_EQ(z.mu1, 0.0);
  EXPECT_EQ(z.mu2, 0.0);
  EXPECT_EQ(z.sigma2, 0.0);

  const ModelParams p = map_to_sde(unit_params(2.0, 1.0, 1.0));
  EXPECT_DOUBLE_EQ(p.mu1, 1.0);
  EXPECT_DOUBLE_EQ(p.mu2, 1.0);
  EXPECT_DOUBLE_EQ(p.sigma1, std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(p.sigma2, 1.0);
  EXPECT_DOUBLE_EQ(derive_nu(p), 3.0);
}

TEST(MapToSde, NegativeSlopeRejected) {
  EXPECT_THROW(map_to_sde(unit_params(1.0, 1.0, -0.5)), std::domain_error);
}

TEST(MapToSde, NuIndependentOfRatesAndScale) {
  // nu = 1 + 2 nbar / (alpha E[N^2]) for any mu > 0
  MicrostructureParams m = unit_params(7.0, 3.0, 0.9);
  m.omega = 0.25;
  m.lot_size = 2;
  m.order_size = {OrderSizeKind::Geometric, 3.0};
  EXPECT_NEAR(derive_nu(map_to_sde(m)), 1.0 + 2.0 * 3.0 / (0.5 * m.n2()), 1e-12);
}
