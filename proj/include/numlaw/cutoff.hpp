#pragma once

#include "numlaw/ingest.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace numlaw {

/// Upper-cutoff estimate from a fixed-point iteration.
struct cutoff_estimate
{
    double upper = 0.0;     ///< estimated upper cutoff o_M
    double lower = 0.0;     ///< lower cutoff o_m
    double deviation = 0.0; ///< empirical deviation D_e at the last iterate (Gamma system only)
    std::vector<double> trace; ///< o_M iterates, trace[0] is the initial value
    bool converged = false;
    int iterations = 0;
};

struct cutoff_options
{
    double tolerance = 1e-9;
    int max_iterations = 10000;
    /// Relaxed iteration: the Zipf system starts from new = (old + update) / 2, and both systems
    /// halve the relaxation weight while the iteration oscillates without shrinking.
    /// false runs the plain map.
    bool damped = true;
};

/// D_e = N (o_m / o_M)^(1/alpha) exp(beta (o_m - o_M)).
double empirical_deviation(double count, double lower, double upper, double alpha, double beta);

/// o_M = o_m (1 + D_e / N)^(1/alpha).
double gamma_cutoff_step(double count, double lower, double alpha, double deviation);

/// One undamped Zipf-system update o_m (N / (N (o_M / o_m)^alpha - 1))^alpha.
/// Throws domain_error when N (o_M / o_m)^alpha <= 1.
double zipf_cutoff_step(double count, double lower, double alpha, double upper);

/// Alternates empirical_deviation and gamma_cutoff_step from `initial` (the largest observed object)
/// until |update - o_M| / o_M falls below the tolerance. Throws numeric_failure on a non-finite iterate.
cutoff_estimate estimate_cutoff_gamma(double count, double lower, double alpha, double beta, double initial,
                                      const cutoff_options& options = {});

/// Iterates zipf_cutoff_step, damped by default. Convergence is judged on the undamped residual
/// |update - o_M| / o_M, so a converged estimate is a fixed point to within the tolerance.
/// Throws domain_error when an iterate violates the bracket.
cutoff_estimate estimate_cutoff_zipf(double count, double lower, double alpha, double initial,
                                     const cutoff_options& options = {});

enum class boundary_quantity
{
    max_first_digit_share,
    max_single_number_share,
    longest_length_share
};

std::string_view to_string(boundary_quantity q) noexcept;

/// Published reference share for this quantity (46.15%, 4.06%, 0.015%).
/// Context only; never a pass/fail criterion.
double reference_share(boundary_quantity q) noexcept;

double max_first_digit_share(const digit_histogram& hist);
double max_single_number_share(const rank_frequency_table& table);
double longest_length_share(const length_histogram& hist);

struct boundary_input
{
    boundary_quantity quantity = boundary_quantity::max_first_digit_share;
    double observed_share = 0.0;
    cutoff_estimate estimate;
};

struct boundary_entry
{
    boundary_quantity quantity = boundary_quantity::max_first_digit_share;
    double observed_share = 0.0;
    double estimated_boundary = 0.0;
    /// observed_share <= estimated_boundary
    bool within_boundary = false;
    bool converged = false;
    int iterations = 0;
    double reference_share = 0.0;
};

struct boundary_summary
{
    std::vector<boundary_entry> entries;
};

/// Compares observed shares against the estimated upper cutoffs. Throws config_error on empty input.
boundary_summary cutoff_report(std::span<const boundary_input> inputs);

} // namespace numlaw
