#pragma once

#include <span>
#include <string_view>

namespace numlaw {

struct metric_scores
{
    double r_squared = 0.0;
    double kl = 0.0;
    double js = 0.0;
    double mape = 0.0;
};

enum class fit_level
{
    strong,
    acceptable,
    fail
};

std::string_view to_string(fit_level level) noexcept;

struct fit_verdict
{
    fit_level r_squared = fit_level::fail;
    fit_level kl = fit_level::fail;
    fit_level js = fit_level::fail;
    fit_level mape = fit_level::fail;

    bool all_pass() const noexcept;
};

/// Conformity thresholds. R^2 above strong_r_squared is strong, above acceptable_r_squared
/// acceptable; the divergences and MAPE are acceptable strictly below their limits.
struct fit_thresholds
{
    double strong_r_squared = 0.9;
    double acceptable_r_squared = 0.8;
    double kl = 0.5;
    double js = 0.2;
    double mape = 0.5;
};

/// 1 - SS_res / SS_tot. Throws degenerate_error when the observed sequence is constant.
double r_squared(std::span<const double> observed, std::span<const double> fitted);

/// Natural-log KL divergence of the fitted pmf from the observed pmf.
///
/// When the fitted pmf has a zero entry it is smoothed by adding 1e-10 to every entry and
/// renormalizing; with `smooth_zeros` false a zero under observed mass throws degenerate_error.
double kl_divergence(std::span<const double> observed, std::span<const double> fitted, bool smooth_zeros = true);

/// Base-2 Jensen-Shannon divergence, in [0, 1].
double js_divergence(std::span<const double> p, std::span<const double> q);

/// Mean of |fitted - observed| / observed over entries with observed != 0, as a fraction.
double mape(std::span<const double> observed, std::span<const double> fitted);

fit_verdict classify_fit(const metric_scores& scores, const fit_thresholds& thresholds = {});

inline constexpr double kl_smoothing_epsilon = 1e-10;

} // namespace numlaw
