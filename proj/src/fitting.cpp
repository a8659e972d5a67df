#include "numlaw/fitting.hpp"

#include "numlaw/simplex.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace numlaw {

namespace {

std::size_t positive_count(std::span<const double> values)
{
    return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](double v) { return v > 0.0; }));
}

void require_shape(const observed_series& data)
{
    if (data.support.size() != data.frequency.size())
        throw domain_error("support and frequency lengths differ");
    for (const double f : data.frequency)
        if (!(f >= 0.0) || !std::isfinite(f))
            throw domain_error("observed frequencies must be finite and non-negative");
}

double residual_sum(std::span<const double> observed, std::span<const double> fitted)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i)
        sum += (observed[i] - fitted[i]) * (observed[i] - fitted[i]);
    return sum;
}

/// Closed-form lambda for fixed (beta, tau) and the resulting residual.
struct gamma_profile
{
    double lambda = 0.0;
    double residual = std::numeric_limits<double>::infinity();
};

gamma_profile profile_gamma(const observed_series& data, double beta, double tau)
{
    const auto n = data.size();
    std::vector<double> log_shape(n);
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
    {
        const double x = data.support[i];
        log_shape[i] = -beta * x + (tau - 1.0) * std::log(x);
        peak = std::max(peak, log_shape[i]);
    }
    if (!std::isfinite(peak))
        return {};

    // work with shape / max(shape) so exp() stays in range; lambda absorbs the factor
    double cross = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double g = std::exp(log_shape[i] - peak);
        cross += data.frequency[i] * g;
        norm += g * g;
    }
    if (!(norm > 0.0) || !(cross > 0.0))
        return {};
    const double coeff = cross / norm;

    gamma_profile out;
    out.lambda = std::exp(std::log(coeff) - peak);
    out.residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double r = data.frequency[i] - coeff * std::exp(log_shape[i] - peak);
        out.residual += r * r;
    }
    if (!(out.lambda > 0.0) || !std::isfinite(out.lambda))
        out.residual = std::numeric_limits<double>::infinity();
    return out;
}

void require_gamma_data(const observed_series& data)
{
    require_shape(data);
    for (const double x : data.support)
        if (!(x > 0.0))
            throw domain_error("Gamma fits need a strictly positive support");
    if (positive_count(data.frequency) < 3)
        throw underdetermined_error("Gamma fit needs at least 3 support points with positive frequency");
}

std::vector<double> gamma_curve(const observed_series& data, const gamma_model& model)
{
    std::vector<double> fitted;
    fitted.reserve(data.size());
    for (const double x : data.support)
        fitted.push_back(gamma_density(x, model));
    return fitted;
}

/// Runs the simplex from `start`, restarting from its own optimum until the value stops improving.
simplex_result polish(const objective_fn& objective, std::vector<double> start, const gamma_fit_options& options)
{
    simplex_options so;
    so.tolerance = options.tolerance;
    so.max_iterations = options.max_iterations;
    so.record_trace = options.record_trace;

    auto best = nelder_mead(objective, std::move(start), so);
    for (int restart = 0; restart < options.max_restarts; ++restart)
    {
        auto next = nelder_mead(objective, best.x, so);
        best.iterations += next.iterations;
        best.trace.insert(best.trace.end(), next.trace.begin(), next.trace.end());
        if (!(next.value < best.value))
            break;
        best.x = std::move(next.x);
        best.value = next.value;
        best.converged = next.converged;
    }
    return best;
}

} // namespace

std::string_view to_string(fit_kind kind) noexcept
{
    switch (kind)
    {
    case fit_kind::benford:
        return "benford";
    case fit_kind::zipf:
        return "zipf";
    case fit_kind::zipf_on_lengths:
        return "zipf_on_lengths";
    case fit_kind::gamma:
        return "gamma";
    case fit_kind::gamma_beta_zero:
        return "gamma_beta_zero";
    }
    return "unknown";
}

std::string_view to_string(dimension dim) noexcept
{
    switch (dim)
    {
    case dimension::first_digit:
        return "first_digit";
    case dimension::frequency:
        return "frequency";
    case dimension::length:
        return "length";
    }
    return "unknown";
}

dimension parse_dimension(std::string_view name)
{
    if (name == "digit" || name == "first_digit")
        return dimension::first_digit;
    if (name == "frequency")
        return dimension::frequency;
    if (name == "length")
        return dimension::length;
    throw config_error("unknown analysis '" + std::string(name) + "' (expected digit, frequency or length)");
}

fit_result score_fit(fit_kind kind, law_model model, std::vector<double> support, std::vector<double> observed,
                     std::vector<double> fitted, const fit_thresholds& thresholds)
{
    fit_result r;
    r.kind = kind;
    r.model = model;
    r.residual_sum = residual_sum(observed, fitted);

    try
    {
        r.scores.r_squared = r_squared(observed, fitted);
    }
    catch (const degenerate_error&)
    {
        double scale = 0.0;
        for (const double v : observed)
            scale += v * v;
        r.degenerate_variance = true;
        r.scores.r_squared = r.residual_sum <= 1e-15 * std::max(scale, 1e-300) ? 1.0 : 0.0;
    }

    const auto p = normalize(observed);
    const auto q = normalize(fitted);
    r.scores.kl = kl_divergence(p, q);
    r.scores.js = js_divergence(p, q);
    r.scores.mape = mape(observed, fitted);
    r.verdict = classify_fit(r.scores, thresholds);

    r.support = std::move(support);
    r.observed = std::move(observed);
    r.fitted = std::move(fitted);
    return r;
}

fit_result fit_benford(const observed_series& data, const fit_thresholds& thresholds)
{
    require_shape(data);
    if (data.size() != 9)
        throw domain_error("Benford fit needs the 9-point first-digit support");
    if (positive_count(data.frequency) == 0)
        throw empty_corpus_error("first-digit histogram is empty");

    std::vector<double> fitted;
    for (std::size_t i = 0; i < 9; ++i)
    {
        if (data.support[i] != static_cast<double>(i + 1))
            throw domain_error("Benford fit support must be 1..9");
        fitted.push_back(benford_pmf(static_cast<int>(i + 1)));
    }
    return score_fit(fit_kind::benford, benford_model{}, data.support, data.frequency, std::move(fitted), thresholds);
}

fit_result fit_benford(const digit_histogram& hist, const fit_thresholds& thresholds)
{
    return fit_benford(hist.observed(), thresholds);
}

fit_result fit_zipf(const observed_series& data, const fit_thresholds& thresholds)
{
    require_shape(data);
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < data.size(); ++i)
    {
        if (!(data.support[i] > 0.0))
            throw domain_error("Zipf ranks must be positive");
        if (data.frequency[i] > 0.0)
        {
            lx.push_back(std::log(data.support[i]));
            ly.push_back(std::log(data.frequency[i]));
        }
    }
    if (lx.size() < 2)
        throw underdetermined_error("Zipf fit needs at least 2 ranks with positive frequency");

    // shift by the first point before centering: a constant response then gives an exact zero slope
    const double x0 = lx.front();
    const double y0 = ly.front();
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i)
    {
        mx += lx[i] - x0;
        my += ly[i] - y0;
    }
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(lx.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i)
    {
        const double dx = lx[i] - x0 - mx;
        sxx += dx * dx;
        sxy += dx * (ly[i] - y0 - my);
    }
    if (!(sxx > 0.0))
        throw underdetermined_error("Zipf fit needs at least 2 distinct ranks");

    const double slope = sxy / sxx;
    const double intercept = (y0 + my) - slope * (x0 + mx);

    zipf_model model{-slope, std::exp(intercept)};
    std::vector<double> fitted;
    fitted.reserve(data.size());
    for (const double r : data.support)
        fitted.push_back(zipf_value(r, model));
    return score_fit(fit_kind::zipf, model, data.support, data.frequency, std::move(fitted), thresholds);
}

fit_result fit_zipf(const rank_frequency_table& table, const fit_thresholds& thresholds)
{
    return fit_zipf(table.observed(), thresholds);
}

fit_result fit_zipf_on_lengths(const length_histogram& hist, const fit_thresholds& thresholds)
{
    auto r = fit_zipf(hist.observed(), thresholds);
    r.kind = fit_kind::zipf_on_lengths;
    return r;
}

fit_result fit_gamma_beta_zero(const observed_series& data, const gamma_fit_options& options)
{
    require_gamma_data(data);

    const objective_fn objective = [&data](std::span<const double> p) {
        return profile_gamma(data, 0.0, p[0]).residual;
    };

    simplex_result best;
    best.value = std::numeric_limits<double>::infinity();
    int iterations = 0;
    for (const double tau : {1.0, -1.0, 3.0})
    {
        auto run = polish(objective, {tau}, options);
        iterations += run.iterations;
        if (run.value < best.value)
            best = std::move(run);
    }

    const double tau = best.x[0];
    const auto profile = profile_gamma(data, 0.0, tau);
    gamma_model model{profile.lambda, 0.0, tau};

    auto r = score_fit(fit_kind::gamma_beta_zero, model, data.support, data.frequency, gamma_curve(data, model),
                       options.thresholds);
    r.iterations = iterations;
    r.converged = best.converged;
    r.objective_trace = std::move(best.trace);
    if (!r.converged)
        throw fit_failure("beta = 0 Gamma fit did not converge", std::move(r));
    return r;
}

fit_result fit_gamma_discrete(const observed_series& data, const gamma_fit_options& options)
{
    require_gamma_data(data);

    const double log_floor = std::log(options.beta_floor);
    const auto beta_of = [log_floor](double log_beta) { return std::exp(std::max(log_beta, log_floor)); };
    const objective_fn objective = [&data, &beta_of](std::span<const double> p) {
        return profile_gamma(data, beta_of(p[0]), p[1]).residual;
    };

    const auto nested = fit_gamma_beta_zero(data, options);
    const double nested_tau = std::get<gamma_model>(nested.model).tau;

    std::vector<std::array<double, 2>> starts;
    for (const double beta : {1e-3, 1e-2, 1e-1, 1.0})
        for (const double tau : {0.5, 2.0})
            starts.push_back({std::log(beta), tau});
    starts.push_back({log_floor, nested_tau});

    simplex_result best;
    best.value = std::numeric_limits<double>::infinity();
    int iterations = nested.iterations;
    for (const auto& s : starts)
    {
        auto run = polish(objective, {s[0], s[1]}, options);
        iterations += run.iterations;
        if (run.value < best.value)
            best = std::move(run);
    }

    const double beta = best.x[0] <= log_floor ? 0.0 : beta_of(best.x[0]);
    const double tau = best.x[1];
    const auto profile = profile_gamma(data, beta, tau);
    const gamma_model model{profile.lambda, beta, tau};

    auto r = score_fit(fit_kind::gamma, model, data.support, data.frequency, gamma_curve(data, model),
                       options.thresholds);
    // the beta = 0 family is nested; keep its solution when the search did not beat it
    if (nested.residual_sum < r.residual_sum)
    {
        r = nested;
        r.kind = fit_kind::gamma;
    }
    r.iterations = iterations;
    r.converged = best.converged;
    r.objective_trace = std::move(best.trace);
    if (!r.converged)
        throw fit_failure("Gamma fit did not converge from any start", std::move(r));
    return r;
}

fit_result pooled_fit(std::span<const number_corpus> corpora, dimension analysis, const gamma_fit_options& options)
{
    if (corpora.empty())
        throw config_error("pooled fit needs at least one corpus");
    const auto merged = merge_values(corpora);
    switch (analysis)
    {
    case dimension::first_digit:
        return fit_gamma_discrete(make_digit_histogram(merged).observed(), options);
    case dimension::frequency:
        return fit_zipf(make_rank_frequency(merged), options.thresholds);
    case dimension::length:
        return fit_gamma_discrete(make_length_histogram(merged).observed(), options);
    }
    throw config_error("unknown analysis dimension");
}

} // namespace numlaw
