#include "numlaw/metrics.hpp"

#include "numlaw/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace numlaw {

namespace {

void require_same_length(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw domain_error("metric inputs differ in length");
    if (a.empty())
        throw domain_error("metric inputs are empty");
}

void require_pmf(std::span<const double> p, const char* name)
{
    double total = 0.0;
    for (const double v : p)
    {
        if (!(v >= 0.0))
            throw domain_error(std::string(name) + " has a negative or NaN entry");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw domain_error(std::string(name) + " does not sum to 1");
}

} // namespace

std::string_view to_string(fit_level level) noexcept
{
    switch (level)
    {
    case fit_level::strong:
        return "strong";
    case fit_level::acceptable:
        return "acceptable";
    case fit_level::fail:
        break;
    }
    return "fail";
}

bool fit_verdict::all_pass() const noexcept
{
    return r_squared != fit_level::fail && kl != fit_level::fail && js != fit_level::fail && mape != fit_level::fail;
}

double r_squared(std::span<const double> observed, std::span<const double> fitted)
{
    require_same_length(observed, fitted);
    if (observed.size() < 2)
        throw domain_error("R^2 needs at least two points");

    // deviations from the first value are exactly zero for a constant sequence, so its variance is exactly zero
    const double origin = observed[0];
    double mean = 0.0;
    for (const double v : observed)
        mean += v - origin;
    mean /= static_cast<double>(observed.size());
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i)
    {
        const double d = observed[i] - origin - mean;
        ss_res += (observed[i] - fitted[i]) * (observed[i] - fitted[i]);
        ss_tot += d * d;
    }
    if (!(ss_tot > 0.0))
        throw degenerate_error("R^2 undefined: observed values have zero variance");
    return 1.0 - ss_res / ss_tot;
}

double kl_divergence(std::span<const double> observed, std::span<const double> fitted, bool smooth_zeros)
{
    require_same_length(observed, fitted);
    require_pmf(observed, "observed pmf");
    require_pmf(fitted, "fitted pmf");

    std::vector<double> q(fitted.begin(), fitted.end());
    if (std::any_of(q.begin(), q.end(), [](double v) { return v == 0.0; }))
    {
        if (!smooth_zeros)
        {
            for (std::size_t i = 0; i < q.size(); ++i)
                if (q[i] == 0.0 && observed[i] > 0.0)
                    throw degenerate_error("KL divergence is infinite: fitted pmf is zero where observed is not");
        }
        else
        {
            double total = 0.0;
            for (auto& v : q)
                total += (v += kl_smoothing_epsilon);
            for (auto& v : q)
                v /= total;
        }
    }

    double kl = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (observed[i] > 0.0)
            kl += observed[i] * std::log(observed[i] / q[i]);
    return std::max(kl, 0.0);
}

double js_divergence(std::span<const double> p, std::span<const double> q)
{
    require_same_length(p, q);
    require_pmf(p, "first pmf");
    require_pmf(q, "second pmf");

    double js = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        const double sum = p[i] + q[i];
        const double tp = p[i] > 0.0 ? p[i] * std::log2(2.0 * p[i] / sum) : 0.0;
        const double tq = q[i] > 0.0 ? q[i] * std::log2(2.0 * q[i] / sum) : 0.0;
        // tp + tq is commutative in IEEE arithmetic, so swapping p and q gives the same bits
        js += 0.5 * (tp + tq);
    }
    return std::clamp(js, 0.0, 1.0);
}

double mape(std::span<const double> observed, std::span<const double> fitted)
{
    require_same_length(observed, fitted);
    double total = 0.0;
    std::size_t included = 0;
    for (std::size_t i = 0; i < observed.size(); ++i)
    {
        if (observed[i] == 0.0)
            continue;
        total += std::abs((fitted[i] - observed[i]) / observed[i]);
        ++included;
    }
    if (included == 0)
        throw degenerate_error("MAPE undefined: every observed value is zero");
    return total / static_cast<double>(included);
}

fit_verdict classify_fit(const metric_scores& scores, const fit_thresholds& t)
{
    const auto below = [](double value, double limit) {
        return value < limit ? fit_level::acceptable : fit_level::fail;
    };

    fit_verdict v;
    if (scores.r_squared > t.strong_r_squared)
        v.r_squared = fit_level::strong;
    else if (scores.r_squared > t.acceptable_r_squared)
        v.r_squared = fit_level::acceptable;
    else
        v.r_squared = fit_level::fail;
    // NaN compares false everywhere and lands on fail
    v.kl = below(scores.kl, t.kl);
    v.js = below(scores.js, t.js);
    v.mape = below(scores.mape, t.mape);
    return v;
}

} // namespace numlaw
