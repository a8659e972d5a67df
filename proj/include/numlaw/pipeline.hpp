#pragma once

#include "numlaw/cutoff.hpp"
#include "numlaw/fitting.hpp"
#include "numlaw/ingest.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace numlaw {

struct analysis_options
{
    gamma_fit_options fit{};
    /// Cutoff estimation is opt-in; it needs fitted parameters and may iterate for a long time.
    bool cutoff = false;
    cutoff_options cutoff_settings{};
};

/// One dimension of one corpus: the observed snapshot and every fit made against it.
struct analysis_section
{
    dimension dim = dimension::first_digit;
    observed_series observed;
    /// Frequency sections only: the integer value holding each rank.
    std::vector<value_t> rank_values;
    std::vector<fit_result> fits;
    /// Fit with the highest R^2, when at least one fit succeeded.
    std::optional<fit_kind> best_fit;
    /// Too few distinct support points for some fit (see notes).
    bool underdetermined = false;
    /// A fit met constant observed data (e.g. every value occurs once).
    bool degenerate = false;
    std::vector<std::string> notes;
    std::optional<cutoff_estimate> cutoff;
    std::optional<boundary_input> boundary;

    const fit_result* find(fit_kind kind) const noexcept;
};

analysis_section analyze_first_digit(std::span<const value_t> values, const analysis_options& options = {});
analysis_section analyze_frequency(std::span<const value_t> values, const analysis_options& options = {});
analysis_section analyze_length(std::span<const value_t> values, const analysis_options& options = {});
analysis_section analyze(dimension dim, std::span<const value_t> values, const analysis_options& options = {});

struct normalized_curve
{
    std::vector<double> support;
    std::vector<double> normalized;
    /// |df/dx| by central differences, one-sided at the ends.
    std::vector<double> abs_derivative;
};

struct comparison_series
{
    normalized_curve first;
    normalized_curve second;
};

normalized_curve normalized_gamma_curve(const fit_result& fit);

/// Normalizes both fitted Gamma curves to pmfs on their supports. Throws model_type_error otherwise.
comparison_series curve_compare(const fit_result& a, const fit_result& b);

struct year_value
{
    int year = 0;
    double value = 0.0;
};

struct trend_finding
{
    std::string subject;
    std::string metric;
    std::vector<year_value> points;
    double slope = 0.0;
    bool flagged = false;
};

inline constexpr double default_trend_threshold = -0.02;

/// Least-squares slope of metric against year; flagged when slope < threshold.
/// Throws domain_error with fewer than 3 points or repeated years.
trend_finding trend_over_years(std::vector<year_value> points, std::string metric,
                               double threshold = default_trend_threshold);

struct report_config
{
    std::vector<dimension> analyses{dimension::first_digit, dimension::frequency, dimension::length};
    analysis_options options{};
    double trend_threshold = default_trend_threshold;
    std::vector<std::string> inputs;
    extraction_rules rules{};
};

struct corpus_report
{
    std::string key;
    std::string label;
    std::optional<int> year;
    corpus_stats stats;
    std::vector<analysis_section> sections;
    /// Sections that failed outright, as "dimension: message".
    std::vector<std::string> errors;
    std::optional<boundary_summary> boundaries;

    const analysis_section* find(dimension dim) const noexcept;
};

struct pooled_result
{
    dimension dim = dimension::first_digit;
    std::optional<fit_result> fit;
    std::string error;
};

struct analysis_report
{
    report_config config;
    std::vector<corpus_report> corpora;
    std::vector<pooled_result> pooled;
    std::vector<trend_finding> trends;
};

/// Per-corpus sections, pooled fits for more than one corpus, and year trends for labels
/// with at least three years. Throws config_error on an empty corpus list.
analysis_report build_report(std::span<const number_corpus> corpora, const report_config& config = {});

/// Plot data for one fit: x,observed,fitted,normalized_fitted,abs_derivative.
std::string plot_csv(const fit_result& fit);

/// Two-column support,fitted CSV.
std::string curve_csv(const fit_result& fit);

} // namespace numlaw
