#include "numlaw/synth.hpp"

#include "numlaw/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace numlaw {

namespace {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<double> weights_on(const law_model& model, int first, int last)
{
    std::vector<double> w;
    for (int k = first; k <= last; ++k)
        w.push_back(evaluate(model, k));
    return w;
}

} // namespace

random_stream::random_stream(rng_seed seed)
{
    std::uint64_t state = seed.value;
    std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state)),
                      static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state))};
    engine_.seed(seq);
}

double random_stream::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t random_stream::below(std::uint64_t bound)
{
    if (bound == 0)
        throw domain_error("random bound must be positive");
    // rejection keeps the result unbiased
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine_();
    while (x >= limit)
        x = engine_();
    return x % bound;
}

random_stream random_stream::split()
{
    return random_stream(rng_seed{engine_()});
}

categorical_sampler::categorical_sampler(std::span<const double> weights)
{
    if (weights.empty())
        throw degenerate_error("categorical sampler needs at least one category");
    double total = 0.0;
    cdf_.reserve(weights.size());
    for (const double w : weights)
    {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw degenerate_error("categorical weights must be finite and non-negative");
        total += w;
        cdf_.push_back(total);
    }
    if (!(total > 0.0) || !std::isfinite(total))
        throw degenerate_error("categorical weights have no mass");
    for (auto& c : cdf_)
        c /= total;
    cdf_.back() = 1.0;
}

std::size_t categorical_sampler::sample(random_stream& rng) const
{
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
}

double categorical_sampler::probability(std::size_t category) const
{
    if (category >= cdf_.size())
        throw domain_error("category out of range");
    return category == 0 ? cdf_[0] : cdf_[category] - cdf_[category - 1];
}

std::vector<int> sample_benford_digits(std::size_t n, rng_seed seed)
{
    const categorical_sampler sampler(weights_on(benford_model{}, 1, 9));
    random_stream rng(seed);
    std::vector<int> digits(n);
    for (auto& d : digits)
        d = static_cast<int>(sampler.sample(rng)) + 1;
    return digits;
}

number_corpus sample_zipf_values(std::size_t n, double alpha, std::size_t support, rng_seed seed)
{
    if (support < 2)
        throw domain_error("Zipf sampler needs a support of at least 2 values");
    if (!(alpha >= 0.0))
        throw domain_error("Zipf exponent must be non-negative");

    std::vector<double> weights(support);
    for (std::size_t r = 0; r < support; ++r)
        weights[r] = std::pow(static_cast<double>(r + 1), -alpha);
    const categorical_sampler sampler(weights);

    random_stream rng(seed);
    number_corpus corpus;
    corpus.label = "zipf";
    corpus.values.resize(n);
    for (auto& v : corpus.values)
        v = static_cast<value_t>(sampler.sample(rng) + 1);
    return corpus;
}

std::vector<int> sample_gamma_lengths(std::size_t n, double beta, double tau, int max_length, rng_seed seed)
{
    if (max_length < 1)
        throw domain_error("maximum length must be at least 1");
    const categorical_sampler sampler(weights_on(gamma_model{1.0, beta, tau}, 1, max_length));
    random_stream rng(seed);
    std::vector<int> lengths(n);
    for (auto& l : lengths)
        l = static_cast<int>(sampler.sample(rng)) + 1;
    return lengths;
}

std::vector<value_t> materialize_lengths(std::span<const int> lengths, rng_seed seed)
{
    random_stream rng(seed);
    std::vector<value_t> values;
    values.reserve(lengths.size());
    for (const int len : lengths)
    {
        if (len < 1 || len > 19)
            throw domain_error("lengths must be in 1..19 to fit 64-bit integers, got " + std::to_string(len));
        value_t v = 1 + rng.below(9);
        for (int k = 1; k < len; ++k)
            v = v * 10 + rng.below(10);
        values.push_back(v);
    }
    return values;
}

observed_series exact_histogram(const law_model& model, int first, int last)
{
    observed_series s;
    s.frequency = discrete_normalize(model, first, last);
    for (int k = first; k <= last; ++k)
        s.support.push_back(k);
    return s;
}

} // namespace numlaw
