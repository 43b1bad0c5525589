#include "hbm/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hbm {

SampleSummary summarize(std::span<const double> xs) {
  SampleSummary s;
  s.n = xs.size();
  if (s.n < 2) {
    throw std::invalid_argument("summarize: need at least two samples");
  }
  const double n = static_cast<double>(s.n);
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / n;
  double m2 = 0.0;
  double m4 = 0.0;
  double q = 0.0;
  double q2 = 0.0;
  for (double x : xs) {
    const double d = x - s.mean;
    m2 += d * d;
    m4 += d * d * d * d;
    q += x * x;
    q2 += x * x * x * x;
  }
  m2 /= n;
  m4 /= n;
  s.variance = m2 * n / (n - 1.0);
  s.mean_se = std::sqrt(s.variance / n);
  s.variance_se = std::sqrt(std::max(0.0, (m4 - (n - 3.0) / (n - 1.0) * s.variance * s.variance) / n));
  s.second_moment = q / n;
  s.second_moment_se = std::sqrt(std::max(0.0, (q2 / n - s.second_moment * s.second_moment) / (n - 1.0)));
  return s;
}

double ks_one_sample(std::vector<double> xs, const RealFunction& cdf) {
  if (xs.empty()) {
    throw std::invalid_argument("ks_one_sample: empty sample");
  }
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: empty sample");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double empirical_quantile(std::span<const double> sorted, double u) {
  if (sorted.empty() || !(u > 0.0 && u < 1.0)) {
    throw std::invalid_argument("empirical_quantile: need a sample and u in (0, 1)");
  }
  const auto k = static_cast<std::size_t>(std::ceil(u * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(k, 1, sorted.size()) - 1];
}

}  // namespace hbm
