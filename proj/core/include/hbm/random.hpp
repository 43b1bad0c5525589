#pragma once

// Seed-derived random streams. Every path (or draw batch) gets its own
// engine seeded from (seed, stream index), so ensembles are reproducible
// regardless of how the work is split across threads.

#include <cstdint>
#include <random>

namespace hbm {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Standard normal variate (ziggurat).
double standard_normal(Rng& rng);

/// Poisson count; normal approximation once the mean exceeds 1e4.
std::int64_t sample_poisson(Rng& rng, double mean);

/// Number of failures before k successes with success probability p.
std::int64_t sample_negative_binomial(Rng& rng, std::int64_t k, double p);

}  // namespace hbm
