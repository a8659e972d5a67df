#pragma once

#include <string_view>
#include <variant>
#include <vector>

namespace numlaw {

/// Parameter-free first-digit law, P(d) = log10(1 + 1/d).
struct benford_model
{
};

/// f(r) = scale / r^alpha.
struct zipf_model
{
    double alpha = 1.0;
    double scale = 1.0;
};

/// f(x) = lambda * exp(-beta x) * x^(tau - 1), with lambda free (unnormalized).
struct gamma_model
{
    double lambda = 1.0;
    double beta = 0.0;
    double tau = 1.0;
};

using law_model = std::variant<benford_model, zipf_model, gamma_model>;

std::string_view model_name(const law_model& model) noexcept;

double benford_pmf(int digit);
double zipf_value(double rank, const zipf_model& model);
double gamma_density(double x, const gamma_model& model);

/// lambda = beta^tau / Gamma(tau), the value that makes the continuous density integrate to 1.
double gamma_canonical_lambda(double beta, double tau);

/// Evaluates the model at x (Benford requires x in 1..9).
double evaluate(const law_model& model, double x);

/// pmf(x) = f(x) / sum_{k=first..last} f(k). Throws degenerate_error on zero or non-finite total mass.
std::vector<double> discrete_normalize(const law_model& model, int first, int last);

/// Rescales non-negative weights to sum to 1.
std::vector<double> normalize(std::vector<double> weights);

} // namespace numlaw
