#include "numlaw/cutoff.hpp"

#include "numlaw/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace numlaw {

namespace {

void require_common(double count, double lower, double alpha, double initial)
{
    if (!(count >= 1.0))
        throw domain_error("cutoff estimation needs N >= 1");
    if (!(lower > 0.0))
        throw domain_error("lower cutoff must be positive");
    if (!(initial >= lower) || !std::isfinite(initial))
        throw domain_error("initial upper cutoff must be finite and >= the lower cutoff");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw domain_error("cutoff exponent alpha must be positive");
}

constexpr double min_weight = 0x1.0p-30;

/// Relaxed fixed-point iteration x <- x + w (update(x) - x).
///
/// Convergence is judged on the unrelaxed residual |update(x) - x| / x, so a converged result is a
/// fixed point of the original map. With `safeguard` set, w is halved whenever that residual fails
/// to shrink while the step direction flips, which breaks the two-cycles a decreasing map falls into.
template <typename Update>
cutoff_estimate iterate_fixed_point(Update update, double lower, double initial, double weight, bool safeguard,
                                    const cutoff_options& options, const char* system)
{
    cutoff_estimate est;
    est.lower = lower;
    est.trace.push_back(initial);
    double current = initial;
    double last_residual = std::numeric_limits<double>::infinity();
    double last_direction = 0.0;
    for (int it = 0; it < options.max_iterations; ++it)
    {
        const double target = update(current);
        if (!std::isfinite(target) || !(target > 0.0))
            throw numeric_failure(std::string(system) + " cutoff iteration produced a non-finite value", est.trace);
        const double residual = std::abs(target - current) / current;
        const double direction = target > current ? 1.0 : -1.0;
        if (safeguard && residual >= last_residual && direction != last_direction && weight > min_weight)
            weight *= 0.5;
        last_residual = residual;
        last_direction = direction;

        current += weight * (target - current);
        est.trace.push_back(current);
        est.iterations = it + 1;
        if (residual < options.tolerance)
        {
            est.converged = true;
            break;
        }
    }
    est.upper = current;
    return est;
}

} // namespace

double empirical_deviation(double count, double lower, double upper, double alpha, double beta)
{
    return count * std::pow(lower / upper, 1.0 / alpha) * std::exp(beta * (lower - upper));
}

double gamma_cutoff_step(double count, double lower, double alpha, double deviation)
{
    return lower * std::pow(1.0 + deviation / count, 1.0 / alpha);
}

double zipf_cutoff_step(double count, double lower, double alpha, double upper)
{
    const double denom = count * std::pow(upper / lower, alpha) - 1.0;
    if (!(denom > 0.0))
        throw domain_error("Zipf cutoff bracket violated: N (o_M / o_m)^alpha <= 1 at o_M = " + std::to_string(upper));
    return lower * std::pow(count / denom, alpha);
}

cutoff_estimate estimate_cutoff_gamma(double count, double lower, double alpha, double beta, double initial,
                                      const cutoff_options& options)
{
    require_common(count, lower, alpha, initial);
    if (!(beta >= 0.0))
        throw domain_error("Gamma cutoff needs beta >= 0");

    double deviation = 0.0;
    auto est = iterate_fixed_point(
        [&](double upper) {
            deviation = empirical_deviation(count, lower, upper, alpha, beta);
            if (!std::isfinite(deviation))
                return deviation;
            return gamma_cutoff_step(count, lower, alpha, deviation);
        },
        lower, initial, 1.0, options.damped, options, "Gamma");
    est.deviation = empirical_deviation(count, lower, est.upper, alpha, beta);
    return est;
}

cutoff_estimate estimate_cutoff_zipf(double count, double lower, double alpha, double initial,
                                     const cutoff_options& options)
{
    require_common(count, lower, alpha, initial);
    return iterate_fixed_point([&](double upper) { return zipf_cutoff_step(count, lower, alpha, upper); }, lower,
                               initial, options.damped ? 0.5 : 1.0, options.damped, options, "Zipf");
}

std::string_view to_string(boundary_quantity q) noexcept
{
    switch (q)
    {
    case boundary_quantity::max_first_digit_share:
        return "max_first_digit_share";
    case boundary_quantity::max_single_number_share:
        return "max_single_number_share";
    case boundary_quantity::longest_length_share:
        return "longest_length_share";
    }
    return "unknown";
}

double reference_share(boundary_quantity q) noexcept
{
    switch (q)
    {
    case boundary_quantity::max_first_digit_share:
        return 0.4615;
    case boundary_quantity::max_single_number_share:
        return 0.0406;
    case boundary_quantity::longest_length_share:
        return 0.00015;
    }
    return 0.0;
}

double max_first_digit_share(const digit_histogram& hist)
{
    const auto top = *std::max_element(hist.counts.begin(), hist.counts.end());
    return static_cast<double>(top) / static_cast<double>(hist.total);
}

double max_single_number_share(const rank_frequency_table& table)
{
    if (table.entries.empty())
        throw empty_corpus_error("rank-frequency table is empty");
    return table.entries.front().frequency;
}

double longest_length_share(const length_histogram& hist)
{
    if (hist.counts.empty())
        throw empty_corpus_error("length histogram is empty");
    return static_cast<double>(hist.counts.back()) / static_cast<double>(hist.total);
}

boundary_summary cutoff_report(std::span<const boundary_input> inputs)
{
    if (inputs.empty())
        throw config_error("boundary summary needs at least one cutoff estimate");

    boundary_summary summary;
    for (const auto& in : inputs)
    {
        boundary_entry e;
        e.quantity = in.quantity;
        e.observed_share = in.observed_share;
        e.estimated_boundary = in.estimate.upper;
        e.within_boundary = in.observed_share <= in.estimate.upper;
        e.converged = in.estimate.converged;
        e.iterations = in.estimate.iterations;
        e.reference_share = reference_share(in.quantity);
        summary.entries.push_back(e);
    }
    return summary;
}

} // namespace numlaw
