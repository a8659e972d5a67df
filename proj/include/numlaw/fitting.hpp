#pragma once

#include "numlaw/error.hpp"
#include "numlaw/ingest.hpp"
#include "numlaw/laws.hpp"
#include "numlaw/metrics.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace numlaw {

enum class fit_kind
{
    benford,
    zipf,
    zipf_on_lengths,
    gamma,
    gamma_beta_zero
};

std::string_view to_string(fit_kind kind) noexcept;

enum class dimension
{
    first_digit,
    frequency,
    length
};

std::string_view to_string(dimension dim) noexcept;
/// Accepts "digit", "first_digit", "frequency", "length". Throws config_error otherwise.
dimension parse_dimension(std::string_view name);

struct fit_result
{
    fit_kind kind = fit_kind::benford;
    law_model model;
    std::vector<double> support;
    std::vector<double> observed;
    std::vector<double> fitted;
    metric_scores scores;
    fit_verdict verdict;
    /// sum of (observed - fitted)^2 over the support
    double residual_sum = 0.0;
    int iterations = 0;
    bool converged = true;
    /// Observed values are constant, so R^2 falls back to 1 for an exact fit and 0 otherwise.
    bool degenerate_variance = false;
    /// Best objective value per simplex iteration of the winning start (Gamma fits, on request).
    std::vector<double> objective_trace;
};

/// Raised when no multi-start run converges. Carries the best result found.
class fit_failure : public error
{
public:
    fit_failure(const std::string& what, fit_result best) : error(what), best_(std::move(best)) {}
    const fit_result& best() const noexcept { return best_; }

private:
    fit_result best_;
};

struct gamma_fit_options
{
    double tolerance = 1e-10;
    int max_iterations = 10000;
    /// beta below this is reported as exactly 0
    double beta_floor = 1e-12;
    int max_restarts = 3;
    bool record_trace = false;
    fit_thresholds thresholds{};
};

/// Scores a fitted curve: R^2 and MAPE on the raw values, KL and JS on both curves
/// normalized to pmfs.
fit_result score_fit(fit_kind kind, law_model model, std::vector<double> support, std::vector<double> observed,
                     std::vector<double> fitted, const fit_thresholds& thresholds = {});

fit_result fit_benford(const observed_series& data, const fit_thresholds& thresholds = {});
fit_result fit_benford(const digit_histogram& hist, const fit_thresholds& thresholds = {});

/// Ordinary least squares on (log x, log f) over the positive-frequency points;
/// slope = -alpha, intercept = log C.
fit_result fit_zipf(const observed_series& data, const fit_thresholds& thresholds = {});
fit_result fit_zipf(const rank_frequency_table& table, const fit_thresholds& thresholds = {});
fit_result fit_zipf_on_lengths(const length_histogram& hist, const fit_thresholds& thresholds = {});

/// Least-squares fit of lambda * exp(-beta x) * x^(tau - 1) with beta >= 0.
///
/// lambda enters linearly and is solved in closed form for each (beta, tau); the simplex
/// searches (log beta, tau) from a fixed grid of starts plus the beta = 0 solution, so the
/// result never fits worse than fit_gamma_beta_zero on the same data.
fit_result fit_gamma_discrete(const observed_series& data, const gamma_fit_options& options = {});

/// Two-parameter (lambda, tau) fit with beta pinned to 0, i.e. a pure power law.
fit_result fit_gamma_beta_zero(const observed_series& data, const gamma_fit_options& options = {});

/// Merges the corpora and fits Gamma for first-digit and length, Zipf for frequency.
fit_result pooled_fit(std::span<const number_corpus> corpora, dimension analysis, const gamma_fit_options& options = {});

} // namespace numlaw
