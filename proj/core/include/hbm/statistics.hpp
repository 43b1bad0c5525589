#pragma once

// Sample summaries and Kolmogorov-Smirnov distances for the Monte Carlo
// checks.

#include <cstddef>
#include <span>
#include <vector>

#include "hbm/quadrature.hpp"

namespace hbm {

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;      // unbiased
  double mean_se = 0.0;       // standard error of the mean
  double variance_se = 0.0;   // standard error of the sample variance
  double second_moment = 0.0; // mean of x^2
  double second_moment_se = 0.0;
};

SampleSummary summarize(std::span<const double> xs);

/// sup |F_n - F| for a continuous reference CDF.
double ks_one_sample(std::vector<double> xs, const RealFunction& cdf);

/// sup |F_n - G_m| between two empirical CDFs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Order statistic x_(ceil(n u)) of an already sorted sample.
double empirical_quantile(std::span<const double> sorted, double u);

}  // namespace hbm
