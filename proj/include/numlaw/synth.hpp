#pragma once

#include "numlaw/ingest.hpp"
#include "numlaw/laws.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace numlaw {

struct rng_seed
{
    std::uint64_t value = 0;
};

/// Seeded 64-bit stream: std::mt19937_64 keyed through SplitMix64.
///
/// Both generators are fully specified by the C++ standard / their reference
/// implementations, and uniform() is computed here rather than through
/// std::uniform_real_distribution, so a seed yields the same stream on every platform.
class random_stream
{
public:
    explicit random_stream(rng_seed seed);

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    /// Independent stream derived from this one.
    random_stream split();

private:
    std::mt19937_64 engine_;
};

/// Inverse-CDF sampler over categories 0..n-1.
class categorical_sampler
{
public:
    /// Throws degenerate_error when the weights have no positive finite mass.
    explicit categorical_sampler(std::span<const double> weights);

    std::size_t sample(random_stream& rng) const;
    std::size_t size() const noexcept { return cdf_.size(); }
    double probability(std::size_t category) const;

private:
    std::vector<double> cdf_;
};

std::vector<int> sample_benford_digits(std::size_t n, rng_seed seed);

/// Values 1..support with P(r) proportional to r^-alpha.
number_corpus sample_zipf_values(std::size_t n, double alpha, std::size_t support, rng_seed seed);

/// Lengths 1..max_length with P(L) proportional to exp(-beta L) L^(tau - 1).
std::vector<int> sample_gamma_lengths(std::size_t n, double beta, double tau, int max_length, rng_seed seed);

/// Turns digit lengths into integers with exactly that many decimal digits (leading digit 1..9).
std::vector<value_t> materialize_lengths(std::span<const int> lengths, rng_seed seed);

/// Noise-free histogram whose frequencies equal the model pmf on first..last.
observed_series exact_histogram(const law_model& model, int first, int last);

} // namespace numlaw
