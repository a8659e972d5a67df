#include "numlaw/laws.hpp"

#include "numlaw/error.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace numlaw {

std::string_view model_name(const law_model& model) noexcept
{
    struct visitor
    {
        std::string_view operator()(const benford_model&) const noexcept { return "benford"; }
        std::string_view operator()(const zipf_model&) const noexcept { return "zipf"; }
        std::string_view operator()(const gamma_model&) const noexcept { return "gamma"; }
    };
    return std::visit(visitor{}, model);
}

double benford_pmf(int digit)
{
    if (digit < 1 || digit > 9)
        throw domain_error("Benford digit must be in 1..9, got " + std::to_string(digit));
    return std::log10(1.0 + 1.0 / digit);
}

double zipf_value(double rank, const zipf_model& model)
{
    if (!(rank >= 1.0))
        throw domain_error("Zipf rank must be >= 1");
    return model.scale / std::pow(rank, model.alpha);
}

double gamma_density(double x, const gamma_model& model)
{
    if (!(x > 0.0))
        throw domain_error("Gamma density requires x > 0");
    if (!(model.lambda > 0.0))
        throw domain_error("Gamma lambda must be positive");
    // log-space keeps large x from overflowing x^(tau-1) before the exponential decay applies
    return std::exp(std::log(model.lambda) - model.beta * x + (model.tau - 1.0) * std::log(x));
}

double gamma_canonical_lambda(double beta, double tau)
{
    if (!(beta > 0.0) || !(tau > 0.0))
        throw domain_error("canonical Gamma normalization needs beta > 0 and tau > 0");
    return std::exp(tau * std::log(beta) - std::lgamma(tau));
}

double evaluate(const law_model& model, double x)
{
    struct visitor
    {
        double x;
        double operator()(const benford_model&) const
        {
            const auto d = static_cast<int>(x);
            if (static_cast<double>(d) != x)
                throw domain_error("Benford model is defined on integer digits only");
            return benford_pmf(d);
        }
        double operator()(const zipf_model& m) const { return zipf_value(x, m); }
        double operator()(const gamma_model& m) const { return gamma_density(x, m); }
    };
    return std::visit(visitor{x}, model);
}

std::vector<double> discrete_normalize(const law_model& model, int first, int last)
{
    if (first > last)
        throw domain_error("empty support range");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(last - first + 1));
    for (int k = first; k <= last; ++k)
        values.push_back(evaluate(model, k));
    return normalize(std::move(values));
}

std::vector<double> normalize(std::vector<double> weights)
{
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0) || !std::isfinite(total))
        throw degenerate_error("cannot normalize: total mass is zero or not finite");
    for (auto& w : weights)
        w /= total;
    return weights;
}

} // namespace numlaw
