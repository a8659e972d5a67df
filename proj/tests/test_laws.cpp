#include "numlaw/error.hpp"
#include "numlaw/laws.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

#ifdef NUMLAW_HAVE_BOOST_QUADRATURE
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#endif

using namespace numlaw;

namespace {

const gamma_model pooled_digit_law{0.38, 0.32, 1.027};

} // namespace

TEST_CASE("benford pmf values")
{
    CHECK(benford_pmf(1) == doctest::Approx(0.30103).epsilon(2e-5));
    CHECK(benford_pmf(2) == doctest::Approx(0.17609).epsilon(2e-5));
    CHECK(benford_pmf(9) == doctest::Approx(0.04576).epsilon(2e-4));
    double sum = 0.0;
    for (int d = 1; d <= 9; ++d)
    {
        CHECK(std::abs(benford_pmf(d) - static_cast<double>(oracle::benford(d))) < 1e-15);
        sum += benford_pmf(d);
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
    CHECK_THROWS_AS(benford_pmf(0), domain_error);
    CHECK_THROWS_AS(benford_pmf(10), domain_error);
}

TEST_CASE("zipf values")
{
    CHECK(zipf_value(1, {0.75, 0.054}) == 0.054);
    CHECK(zipf_value(1, {2.3, 7.0}) == 7.0);
    CHECK(zipf_value(16, {1.0, 1.0}) == 0.0625);
    CHECK_THROWS_AS(zipf_value(0, {1.0, 1.0}), domain_error);
    CHECK_THROWS_AS(zipf_value(0.5, {1.0, 1.0}), domain_error);

    for (int r = 1; r < 500; ++r)
        CHECK(zipf_value(r + 1, {0.75, 0.054}) < zipf_value(r, {0.75, 0.054}));

    const auto a = discrete_normalize(zipf_model{0.75, 0.054}, 1, 50);
    const auto b = discrete_normalize(zipf_model{0.75, 123.0}, 1, 50);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(std::abs(a[i] - b[i]) < 1e-15);
}

TEST_CASE("gamma density")
{
    // 0.38 * exp(-0.32), evaluated at 50 digits: 0.27593663413...
    CHECK(std::abs(gamma_density(1.0, pooled_digit_law) - 0.2759366341) < 1e-10);
    CHECK(gamma_density(2.0, pooled_digit_law) < gamma_density(1.0, pooled_digit_law));
    for (const double x : {0.1, 1.0, 3.5, 17.0, 1e6})
        CHECK(gamma_density(x, {0.7, 0.0, 1.0}) == doctest::Approx(0.7).epsilon(1e-15));
    for (const double x : {0.5, 1.0, 2.0, 9.0, 17.0})
    {
        const double expected = static_cast<double>(oracle::gamma_direct(x, 0.002, std::exp(-5.0L), 0.951L));
        CHECK(gamma_density(x, {0.002, std::exp(-5.0), 0.951}) == doctest::Approx(expected).epsilon(1e-13));
    }
    CHECK_THROWS_AS(gamma_density(0.0, pooled_digit_law), domain_error);
    CHECK_THROWS_AS(gamma_density(-1.0, pooled_digit_law), domain_error);
    CHECK_THROWS_AS(gamma_density(1.0, {0.0, 1.0, 1.0}), domain_error);
}

TEST_CASE("gamma density decays and stays finite at large x")
{
    double prev = gamma_density(10.0, {1.0, 0.5, 3.0});
    for (double x = 20.0; x < 2000.0; x *= 2)
    {
        const double f = gamma_density(x, {1.0, 0.5, 3.0});
        CHECK(f < prev);
        CHECK(std::isfinite(f));
        prev = f;
    }
    // x^(tau-1) alone would overflow; log space keeps the product representable
    const double big = gamma_density(1e300, {1e-300, 0.0, 1.5});
    CHECK(std::isfinite(big));
    CHECK(big == doctest::Approx(1e-300 * std::sqrt(1e300)).epsilon(1e-12));
    CHECK(gamma_density(1e6, {1.0, 1.0, 50.0}) == 0.0);
}

#ifdef NUMLAW_HAVE_BOOST_QUADRATURE
TEST_CASE("canonical gamma density integrates to one")
{
    boost::math::quadrature::tanh_sinh<double> near;
    boost::math::quadrature::exp_sinh<double> far;
    for (const double beta : {0.32, 1.0, 2.5})
        for (const double tau : {0.5, 1.027, 2.0, 5.0})
        {
            const gamma_model m{gamma_canonical_lambda(beta, tau), beta, tau};
            const auto f = [&m](double x) { return x > 0.0 ? gamma_density(x, m) : 0.0; };
            const double total = near.integrate(f, 0.0, 1.0) + far.integrate(f, 1.0, std::numeric_limits<double>::infinity());
            CHECK(std::abs(total - 1.0) < 1e-6);
        }
}
#endif

TEST_CASE("canonical lambda")
{
    CHECK(gamma_canonical_lambda(1.0, 1.0) == doctest::Approx(1.0));
    CHECK(gamma_canonical_lambda(2.0, 3.0) == doctest::Approx(8.0 / 2.0));
}

TEST_CASE("discrete_normalize")
{
    const auto z = discrete_normalize(zipf_model{1.0, 1.0}, 1, 2);
    CHECK(z[0] == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(z[1] == doctest::Approx(1.0 / 3).epsilon(1e-15));

    const auto u = discrete_normalize(gamma_model{3.0, 0.0, 1.0}, 1, 5);
    for (const double p : u)
        CHECK(p == doctest::Approx(0.2).epsilon(1e-15));

    const auto e8 = discrete_normalize(pooled_digit_law, 1, 9);
    CHECK(std::abs(std::accumulate(e8.begin(), e8.end(), 0.0) - 1.0) < 1e-12);
    for (std::size_t i = 1; i < e8.size(); ++i)
        CHECK(e8[i] < e8[i - 1]);
    const auto reference = oracle::gamma_pmf(1, 9, 0.32L, 1.027L);
    for (std::size_t i = 0; i < e8.size(); ++i)
        CHECK(std::abs(e8[i] - reference[i]) < 1e-15);

    const auto b = discrete_normalize(benford_model{}, 1, 9);
    for (int d = 1; d <= 9; ++d)
        CHECK(std::abs(b[d - 1] - benford_pmf(d)) < 1e-15);

    CHECK_THROWS_AS(discrete_normalize(zipf_model{1.0, 1.0}, 5, 4), domain_error);
    CHECK_THROWS_AS(discrete_normalize(gamma_model{1.0, 1e6, 1.0}, 1, 9), degenerate_error);
}

TEST_CASE("normalization is invariant to lambda and idempotent")
{
    const auto a = discrete_normalize(gamma_model{0.002, std::exp(-5.0), 0.951}, 1, 17);
    const auto b = discrete_normalize(gamma_model{40.0, std::exp(-5.0), 0.951}, 1, 17);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(std::abs(a[i] - b[i]) < 1e-15);
    const auto again = normalize(a);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(std::abs(again[i] - a[i]) < 1e-12);
    CHECK_THROWS_AS(normalize({0.0, 0.0}), degenerate_error);
    CHECK_THROWS_AS(normalize({}), degenerate_error);
}

TEST_CASE("evaluate and model names")
{
    CHECK(model_name(benford_model{}) == "benford");
    CHECK(model_name(zipf_model{}) == "zipf");
    CHECK(model_name(gamma_model{}) == "gamma");
    CHECK(evaluate(benford_model{}, 3) == benford_pmf(3));
    CHECK(evaluate(zipf_model{1.0, 2.0}, 4) == 0.5);
    CHECK(evaluate(pooled_digit_law, 2.0) == gamma_density(2.0, pooled_digit_law));
}
