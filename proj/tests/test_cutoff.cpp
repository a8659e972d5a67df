#include "numlaw/cutoff.hpp"
#include "numlaw/error.hpp"
#include "numlaw/fitting.hpp"
#include "numlaw/synth.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace numlaw;

namespace {

struct share_objects
{
    double count = 0.0;
    double lower = 0.0;
    double initial = 0.0;
};

share_objects objects_of(const std::vector<double>& shares)
{
    share_objects o;
    o.lower = 1.0;
    for (const double s : shares)
        if (s > 0.0)
        {
            o.count += 1.0;
            o.lower = std::min(o.lower, s);
            o.initial = std::max(o.initial, s);
        }
    return o;
}

// frozen before the build: the pooled length law's shape on lengths 1..17
constexpr double frozen_tau = 0.951;
const double frozen_beta = std::exp(-5.0);

} // namespace

TEST_CASE("gamma update substitutions")
{
    for (const double alpha : {0.3, 0.951, 2.0})
    {
        CHECK(gamma_cutoff_step(100.0, 0.02, alpha, 100.0) == doctest::Approx(0.02 * std::pow(2.0, 1.0 / alpha)).epsilon(1e-15));
        CHECK(gamma_cutoff_step(100.0, 0.02, alpha, 0.0) == 0.02);
    }
    CHECK(empirical_deviation(50.0, 0.1, 0.1, 0.7, 3.0) == 50.0);
    CHECK(empirical_deviation(50.0, 0.1, 0.4, 1.0, 0.0) == doctest::Approx(12.5).epsilon(1e-15));
}

TEST_CASE("large beta pulls the gamma cutoff onto the lower cutoff")
{
    // at the fixed point the gap d = o_M - o_m obeys beta d e^(beta d) <= beta o_m / alpha,
    // so d <= W(beta o_m / alpha) / beta <= log(1 + beta o_m / alpha) / beta
    const double lower = 0.01;
    const double alpha = 0.8;
    double previous_gap = 1.0;
    for (const double beta : {1e2, 1e4, 1e6, 1e8, 1e12})
    {
        const auto e = estimate_cutoff_gamma(1000.0, lower, alpha, beta, 0.4);
        CHECK(e.converged);
        CHECK(e.trace.front() == 0.4);
        const double gap = e.upper - lower;
        CHECK(gap >= 0.0);
        CHECK(gap <= std::log1p(beta * lower / alpha) / beta * (1.0 + 1e-9));
        CHECK(gap < previous_gap);
        previous_gap = gap;
    }
}

TEST_CASE("gamma update is monotone in the deviation")
{
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial)
    {
        const double n = 1.0 + 1e4 * u(gen);
        const double lower = 1e-4 + u(gen);
        const double alpha = 0.05 + 3.0 * u(gen);
        const double d1 = n * u(gen);
        const double d2 = d1 + n * u(gen) + 1e-6;
        CHECK(gamma_cutoff_step(n, lower, alpha, d2) > gamma_cutoff_step(n, lower, alpha, d1));
    }
}

TEST_CASE("gamma cutoff on sampled length corpora lands within a factor of 3")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        const auto lengths = sample_gamma_lengths(10000, frozen_beta, frozen_tau, 17, {seed});
        std::vector<double> shares(17, 0.0);
        for (const int l : lengths)
            shares[l - 1] += 1.0 / 10000;
        const auto o = objects_of(shares);
        const auto e = estimate_cutoff_gamma(o.count, o.lower, frozen_tau, frozen_beta, o.initial);
        CHECK(e.converged);
        CHECK(e.iterations < 10000);
        CHECK(e.upper >= e.lower);
        CHECK(e.upper <= 3.0 * o.initial);
        CHECK(e.upper >= o.initial / 3.0);
    }
}

TEST_CASE("gamma cutoff errors and bounds")
{
    CHECK_THROWS_AS(estimate_cutoff_gamma(0.0, 0.1, 1.0, 0.0, 0.5), domain_error);
    CHECK_THROWS_AS(estimate_cutoff_gamma(10.0, 0.5, 1.0, 0.0, 0.1), domain_error);
    CHECK_THROWS_AS(estimate_cutoff_gamma(10.0, 0.1, 0.0, 0.0, 0.5), domain_error);
    CHECK_THROWS_AS(estimate_cutoff_gamma(10.0, 0.1, 1.0, -1.0, 0.5), domain_error);

    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        const double n = 2.0 + 100.0 * u(gen);
        const double lower = 1e-3 + 0.1 * u(gen);
        const double alpha = 0.1 + 2.0 * u(gen);
        const double beta = 3.0 * u(gen);
        const double initial = lower * (1.0 + 20.0 * u(gen));
        const auto e = estimate_cutoff_gamma(n, lower, alpha, beta, initial);
        CHECK(e.converged);
        CHECK(e.upper >= lower);
        CHECK(e.upper <= lower * std::pow(2.0, 1.0 / alpha) * (1.0 + 1e-12));
        for (std::size_t i = 1; i < e.trace.size(); ++i)
            CHECK(std::isfinite(e.trace[i]));
    }
}

TEST_CASE("zipf fixed point and limits")
{
    const double n = 200.0;
    const double lower = 1e-4;
    const double alpha = 0.8;
    const auto e = estimate_cutoff_zipf(n, lower, alpha, 0.05);
    REQUIRE(e.converged);
    const double fixed = e.upper;
    CHECK(std::abs(zipf_cutoff_step(n, lower, alpha, fixed) - fixed) / fixed < 1e-9);

    // refine to a tighter fixed point, then one more step moves less than 1e-12
    cutoff_options tight;
    tight.tolerance = 1e-15;
    const auto t = estimate_cutoff_zipf(n, lower, alpha, fixed, tight);
    CHECK(std::abs(zipf_cutoff_step(n, lower, alpha, t.upper) - t.upper) / t.upper < 1e-12);

    // N -> infinity: o_m (1 / (o_M / o_m)^alpha)^alpha
    for (const double upper : {2e-4, 1e-3, 0.05})
    {
        const double limit = lower * std::pow(1.0 / std::pow(upper / lower, alpha), alpha);
        CHECK(std::abs(zipf_cutoff_step(1e9, lower, alpha, upper) - limit) / limit < 1e-8);
    }

    CHECK_THROWS_AS(zipf_cutoff_step(1.0, 0.1, 1.0, 0.1), domain_error);
    CHECK_THROWS_AS(zipf_cutoff_step(0.5, 0.1, 1.0, 0.15), domain_error);
    CHECK_THROWS_AS(estimate_cutoff_zipf(1.0, 0.1, 1.0, 0.1), domain_error);
}

TEST_CASE("gamma and zipf iterations collapse onto the lower cutoff in the vanishing-deviation limit")
{
    const double lower = 0.002;
    const auto g = estimate_cutoff_gamma(1e9, lower, 1.0, 1e12, 0.3);
    const auto z = estimate_cutoff_zipf(1e9, lower, 1.0, 0.3);
    CHECK(g.converged);
    CHECK(z.converged);
    CHECK(std::abs(g.upper - lower) / lower < 1e-6);
    CHECK(std::abs(z.upper - lower) / lower < 1e-6);
    CHECK(std::abs(g.upper - z.upper) / lower < 1e-6);
}

TEST_CASE("zipf cutoff on sampled corpora")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        const auto corpus = sample_zipf_values(100000, 0.75, 200, {seed});
        const auto table = make_rank_frequency(corpus.values);
        const auto fit = fit_zipf(table);
        const double alpha = std::get<zipf_model>(fit.model).alpha;
        const auto& f = fit.observed;
        const auto e = estimate_cutoff_zipf(static_cast<double>(f.size()), f.back(), alpha, f.front());
        CHECK(e.converged);
        CHECK(std::isfinite(e.upper));
        CHECK(e.upper >= e.lower);
        const double residual = std::abs(zipf_cutoff_step(static_cast<double>(f.size()), f.back(), alpha, e.upper) - e.upper) / e.upper;
        CHECK(residual < 1e-9);
    }
}

TEST_CASE("converged traces end with a small relative step and are deterministic")
{
    const auto check = [](const cutoff_estimate& e) {
        REQUIRE(e.converged);
        REQUIRE(e.trace.size() == static_cast<std::size_t>(e.iterations) + 1);
        const double a = e.trace[e.trace.size() - 2];
        const double b = e.trace.back();
        CHECK(std::abs(b - a) / b < 1e-9);
        CHECK(b == e.upper);
    };
    const auto g1 = estimate_cutoff_gamma(17.0, 1e-4, 0.4, 0.3, 0.2);
    const auto g2 = estimate_cutoff_gamma(17.0, 1e-4, 0.4, 0.3, 0.2);
    check(g1);
    CHECK(g1.trace == g2.trace);

    const auto z1 = estimate_cutoff_zipf(150.0, 1e-5, 0.9, 0.08);
    const auto z2 = estimate_cutoff_zipf(150.0, 1e-5, 0.9, 0.08);
    check(z1);
    CHECK(z1.trace == z2.trace);
}

TEST_CASE("undamped map stays available")
{
    cutoff_options plain;
    plain.damped = false;
    // a far start overshoots below o_m; the plain map aborts with the bracket diagnostic
    CHECK_THROWS_AS(estimate_cutoff_zipf(150.0, 1e-5, 0.9, 0.08, plain), domain_error);
    const auto d = estimate_cutoff_zipf(150.0, 1e-5, 0.9, 0.08);
    CHECK(d.trace[1] == doctest::Approx(0.5 * 0.08 + 0.5 * zipf_cutoff_step(150.0, 1e-5, 0.9, 0.08)).epsilon(1e-15));

    const auto fit = fit_zipf(make_rank_frequency(sample_zipf_values(100000, 0.75, 200, {0}).values));
    const double alpha = std::get<zipf_model>(fit.model).alpha;
    const auto& f = fit.observed;
    const double n = static_cast<double>(f.size());
    const auto u = estimate_cutoff_zipf(n, f.back(), alpha, f.front(), plain);
    const auto v = estimate_cutoff_zipf(n, f.back(), alpha, f.front());
    CHECK(u.trace[1] == doctest::Approx(zipf_cutoff_step(n, f.back(), alpha, f.front())).epsilon(1e-15));
    REQUIRE(u.converged);
    REQUIRE(v.converged);
    CHECK(std::abs(u.upper - v.upper) / v.upper < 1e-8);

    const auto g = estimate_cutoff_gamma(17.0, 1e-4, 0.4, 0.3, 0.2, plain);
    CHECK(g.trace[1] == doctest::Approx(gamma_cutoff_step(17.0, 1e-4, 0.4, empirical_deviation(17.0, 1e-4, 0.2, 0.4, 0.3))).epsilon(1e-15));

    cutoff_options capped;
    capped.max_iterations = 2;
    const auto c = estimate_cutoff_zipf(150.0, 1e-5, 0.9, 0.08, capped);
    CHECK_FALSE(c.converged);
    CHECK(c.iterations == 2);
}

TEST_CASE("boundary shares")
{
    const std::vector<value_t> values{5, 5, 7, 9};
    CHECK(max_single_number_share(make_rank_frequency(values)) == 0.5);
    CHECK(max_first_digit_share(make_digit_histogram(std::vector<value_t>{1, 12, 3, 4})) == 0.5);
    CHECK(longest_length_share(make_length_histogram(std::vector<value_t>{1, 2, 30, 40})) == 0.5);
}

TEST_CASE("cutoff_report")
{
    cutoff_estimate within;
    within.upper = 0.4;
    within.converged = true;
    within.iterations = 7;
    cutoff_estimate beyond;
    beyond.upper = 0.02;
    const std::vector<boundary_input> inputs{
        {boundary_quantity::max_first_digit_share, 0.3, within},
        {boundary_quantity::max_single_number_share, 0.05, beyond},
    };
    const auto s = cutoff_report(inputs);
    REQUIRE(s.entries.size() == 2);
    CHECK(s.entries[0].within_boundary);
    CHECK(s.entries[0].estimated_boundary == 0.4);
    CHECK(s.entries[0].observed_share == 0.3);
    CHECK(s.entries[0].iterations == 7);
    CHECK(s.entries[0].reference_share == reference_share(boundary_quantity::max_first_digit_share));
    CHECK_FALSE(s.entries[1].within_boundary);
    CHECK_FALSE(s.entries[1].converged);
    CHECK_THROWS_AS(cutoff_report(std::vector<boundary_input>{}), config_error);
    CHECK(to_string(boundary_quantity::longest_length_share) == "longest_length_share");
}
