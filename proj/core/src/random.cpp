#include "hbm/random.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/random/negative_binomial_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>

namespace hbm {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

double standard_normal(Rng& rng) {
  boost::random::normal_distribution<double> dist;
  return dist(rng);
}

std::int64_t sample_poisson(Rng& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("sample_poisson: mean must be finite and non-negative");
  }
  if (mean == 0.0) return 0;
  if (mean > 1e4) {
    const double draw = std::round(mean + std::sqrt(mean) * standard_normal(rng));
    return draw < 0.0 ? 0 : static_cast<std::int64_t>(draw);
  }
  boost::random::poisson_distribution<std::int64_t, double> dist(mean);
  return dist(rng);
}

std::int64_t sample_negative_binomial(Rng& rng, std::int64_t k, double p) {
  if (k <= 0) return 0;
  if (p >= 1.0) return 0;
  boost::random::negative_binomial_distribution<std::int64_t, double> dist(k, p);
  return dist(rng);
}

}  // namespace hbm
