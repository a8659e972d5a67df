#include "numlaw/pipeline.hpp"

#include "numlaw/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <set>

namespace numlaw {

namespace {

std::vector<double> positive_values(std::span<const double> values)
{
    std::vector<double> out;
    for (const double v : values)
        if (v > 0.0)
            out.push_back(v);
    return out;
}

void pick_best(analysis_section& section)
{
    const fit_result* best = nullptr;
    for (const auto& f : section.fits)
        if (best == nullptr || f.scores.r_squared > best->scores.r_squared)
            best = &f;
    if (best != nullptr)
        section.best_fit = best->kind;
    section.degenerate = std::any_of(section.fits.begin(), section.fits.end(),
                                     [](const fit_result& f) { return f.degenerate_variance; });
}

/// Runs one fit, recording underdetermined/failed fits as notes instead of throwing.
template <typename Fn> void try_fit(analysis_section& section, fit_kind kind, Fn&& fn)
{
    try
    {
        section.fits.push_back(fn());
    }
    catch (const underdetermined_error& e)
    {
        section.underdetermined = true;
        section.notes.push_back(std::string(to_string(kind)) + ": underdetermined: " + e.what());
    }
    catch (const error& e)
    {
        section.notes.push_back(std::string(to_string(kind)) + ": " + e.what());
    }
}

/// Gamma-system cutoff over the section's positive frequencies, alpha := tau.
void gamma_cutoff(analysis_section& section, boundary_quantity quantity, double observed_share,
                  const analysis_options& options)
{
    const auto* fit = section.find(fit_kind::gamma);
    if (fit == nullptr)
    {
        section.notes.push_back("cutoff: no Gamma fit available");
        return;
    }
    const auto& model = std::get<gamma_model>(fit->model);
    if (!(model.tau > 0.0))
    {
        section.notes.push_back("cutoff: fitted tau <= 0, Gamma-system cutoff undefined");
        return;
    }
    const auto sizes = positive_values(section.observed.frequency);
    const double lower = *std::min_element(sizes.begin(), sizes.end());
    const double initial = *std::max_element(sizes.begin(), sizes.end());
    try
    {
        section.cutoff = estimate_cutoff_gamma(static_cast<double>(sizes.size()), lower, model.tau, model.beta, initial,
                                               options.cutoff_settings);
        section.boundary = boundary_input{quantity, observed_share, *section.cutoff};
    }
    catch (const error& e)
    {
        section.notes.push_back(std::string("cutoff: ") + e.what());
    }
}

normalized_curve make_normalized(const std::vector<double>& support, const std::vector<double>& values)
{
    normalized_curve c;
    c.support = support;
    c.normalized = normalize(values);
    const auto n = c.normalized.size();
    c.abs_derivative.assign(n, 0.0);
    if (n < 2)
        return c;
    for (std::size_t i = 0; i < n; ++i)
    {
        const auto lo = i == 0 ? 0 : i - 1;
        const auto hi = i + 1 == n ? n - 1 : i + 1;
        c.abs_derivative[i] = std::abs((c.normalized[hi] - c.normalized[lo]) / (support[hi] - support[lo]));
    }
    return c;
}

std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace

const fit_result* analysis_section::find(fit_kind kind) const noexcept
{
    for (const auto& f : fits)
        if (f.kind == kind)
            return &f;
    return nullptr;
}

const analysis_section* corpus_report::find(dimension dim) const noexcept
{
    for (const auto& s : sections)
        if (s.dim == dim)
            return &s;
    return nullptr;
}

analysis_section analyze_first_digit(std::span<const value_t> values, const analysis_options& options)
{
    const auto hist = make_digit_histogram(values);
    analysis_section section;
    section.dim = dimension::first_digit;
    section.observed = hist.observed();

    try_fit(section, fit_kind::benford, [&] { return fit_benford(section.observed, options.fit.thresholds); });
    try_fit(section, fit_kind::gamma, [&] { return fit_gamma_discrete(section.observed, options.fit); });
    pick_best(section);

    if (options.cutoff)
        gamma_cutoff(section, boundary_quantity::max_first_digit_share, max_first_digit_share(hist), options);
    return section;
}

analysis_section analyze_frequency(std::span<const value_t> values, const analysis_options& options)
{
    const auto table = make_rank_frequency(values);
    analysis_section section;
    section.dim = dimension::frequency;
    section.observed = table.observed();
    for (const auto& e : table.entries)
        section.rank_values.push_back(e.value);

    try_fit(section, fit_kind::zipf, [&] { return fit_zipf(section.observed, options.fit.thresholds); });
    pick_best(section);

    if (options.cutoff)
    {
        if (const auto* fit = section.find(fit_kind::zipf); fit == nullptr)
        {
            section.notes.push_back("cutoff: no Zipf fit available");
        }
        else if (const auto alpha = std::get<zipf_model>(fit->model).alpha; !(alpha > 0.0))
        {
            section.notes.push_back("cutoff: fitted alpha <= 0, Zipf-system cutoff undefined");
        }
        else
        {
            const auto& f = section.observed.frequency;
            try
            {
                section.cutoff = estimate_cutoff_zipf(static_cast<double>(f.size()), f.back(), alpha, f.front(),
                                                      options.cutoff_settings);
                section.boundary =
                    boundary_input{boundary_quantity::max_single_number_share, max_single_number_share(table), *section.cutoff};
            }
            catch (const error& e)
            {
                section.notes.push_back(std::string("cutoff: ") + e.what());
            }
        }
    }
    return section;
}

analysis_section analyze_length(std::span<const value_t> values, const analysis_options& options)
{
    const auto hist = make_length_histogram(values);
    analysis_section section;
    section.dim = dimension::length;
    section.observed = hist.observed();

    try_fit(section, fit_kind::gamma, [&] { return fit_gamma_discrete(section.observed, options.fit); });
    try_fit(section, fit_kind::gamma_beta_zero, [&] { return fit_gamma_beta_zero(section.observed, options.fit); });
    try_fit(section, fit_kind::zipf_on_lengths, [&] { return fit_zipf_on_lengths(hist, options.fit.thresholds); });
    pick_best(section);

    if (options.cutoff)
        gamma_cutoff(section, boundary_quantity::longest_length_share, longest_length_share(hist), options);
    return section;
}

analysis_section analyze(dimension dim, std::span<const value_t> values, const analysis_options& options)
{
    switch (dim)
    {
    case dimension::first_digit:
        return analyze_first_digit(values, options);
    case dimension::frequency:
        return analyze_frequency(values, options);
    case dimension::length:
        return analyze_length(values, options);
    }
    throw config_error("unknown analysis dimension");
}

normalized_curve normalized_gamma_curve(const fit_result& fit)
{
    if (!std::holds_alternative<gamma_model>(fit.model))
        throw model_type_error("curve comparison needs a Gamma fit, got " + std::string(model_name(fit.model)));
    return make_normalized(fit.support, fit.fitted);
}

comparison_series curve_compare(const fit_result& a, const fit_result& b)
{
    return {normalized_gamma_curve(a), normalized_gamma_curve(b)};
}

trend_finding trend_over_years(std::vector<year_value> points, std::string metric, double threshold)
{
    if (points.size() < 3)
        throw domain_error("trend detection needs at least 3 yearly points");
    std::sort(points.begin(), points.end(), [](const year_value& a, const year_value& b) { return a.year < b.year; });
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].year == points[i - 1].year)
            throw domain_error("trend detection got year " + std::to_string(points[i].year) + " twice");

    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : points)
    {
        mx += p.year;
        my += p.value;
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& p : points)
    {
        sxx += (p.year - mx) * (p.year - mx);
        sxy += (p.year - mx) * (p.value - my);
    }

    trend_finding t;
    t.metric = std::move(metric);
    t.points = std::move(points);
    t.slope = sxy / sxx;
    t.flagged = t.slope < threshold;
    return t;
}

analysis_report build_report(std::span<const number_corpus> corpora, const report_config& config)
{
    if (corpora.empty())
        throw config_error("report needs at least one corpus");
    if (config.analyses.empty())
        throw config_error("report needs at least one analysis");

    analysis_report report;
    report.config = config;

    const auto run_corpus = [&config](const number_corpus& corpus) {
        corpus_report cr;
        cr.key = corpus.key();
        cr.label = corpus.label;
        cr.year = corpus.year;
        cr.stats = compute_stats(corpus.values);
        for (const auto dim : config.analyses)
        {
            try
            {
                cr.sections.push_back(analyze(dim, corpus.values, config.options));
            }
            catch (const error& e)
            {
                cr.errors.push_back(std::string(to_string(dim)) + ": " + e.what());
            }
        }
        std::vector<boundary_input> inputs;
        for (const auto& s : cr.sections)
            if (s.boundary)
                inputs.push_back(*s.boundary);
        if (!inputs.empty())
            cr.boundaries = cutoff_report(inputs);
        return cr;
    };

    std::vector<std::future<corpus_report>> pending;
    pending.reserve(corpora.size());
    for (const auto& corpus : corpora)
        pending.push_back(std::async(std::launch::async, run_corpus, std::cref(corpus)));
    for (auto& p : pending)
        report.corpora.push_back(p.get());

    if (corpora.size() > 1)
    {
        for (const auto dim : config.analyses)
        {
            pooled_result pr;
            pr.dim = dim;
            try
            {
                pr.fit = pooled_fit(corpora, dim, config.options.fit);
            }
            catch (const error& e)
            {
                pr.error = e.what();
            }
            report.pooled.push_back(std::move(pr));
        }
    }

    // year trends per label, in first-appearance order
    std::vector<std::string> labels;
    for (const auto& c : report.corpora)
        if (c.year && std::find(labels.begin(), labels.end(), c.label) == labels.end())
            labels.push_back(c.label);

    struct tracked
    {
        dimension dim;
        fit_kind kind;
    };
    const tracked series[] = {{dimension::first_digit, fit_kind::benford},
                              {dimension::first_digit, fit_kind::gamma},
                              {dimension::frequency, fit_kind::zipf},
                              {dimension::length, fit_kind::gamma}};
    for (const auto& label : labels)
    {
        for (const auto& s : series)
        {
            std::vector<year_value> points;
            std::set<int> years;
            for (const auto& c : report.corpora)
            {
                if (c.label != label || !c.year || years.count(*c.year) != 0)
                    continue;
                const auto* section = c.find(s.dim);
                const auto* fit = section ? section->find(s.kind) : nullptr;
                if (fit == nullptr || !std::isfinite(fit->scores.r_squared))
                    continue;
                years.insert(*c.year);
                points.push_back({*c.year, fit->scores.r_squared});
            }
            if (points.size() < 3)
                continue;
            auto finding = trend_over_years(std::move(points),
                                            std::string(to_string(s.dim)) + "." + std::string(to_string(s.kind)) +
                                                ".r_squared",
                                            config.trend_threshold);
            finding.subject = label;
            report.trends.push_back(std::move(finding));
        }
    }
    return report;
}

std::string plot_csv(const fit_result& fit)
{
    const auto curve = make_normalized(fit.support, fit.fitted);
    std::string out = "x,observed,fitted,normalized_fitted,abs_derivative\n";
    for (std::size_t i = 0; i < fit.support.size(); ++i)
    {
        out += format_number(fit.support[i]) + "," + format_number(fit.observed[i]) + "," +
               format_number(fit.fitted[i]) + "," + format_number(curve.normalized[i]) + "," +
               format_number(curve.abs_derivative[i]) + "\n";
    }
    return out;
}

std::string curve_csv(const fit_result& fit)
{
    std::string out = "support,fitted\n";
    for (std::size_t i = 0; i < fit.support.size(); ++i)
        out += format_number(fit.support[i]) + "," + format_number(fit.fitted[i]) + "\n";
    return out;
}

} // namespace numlaw
