#include "numlaw/simplex.hpp"

#include "numlaw/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace numlaw {

namespace {

constexpr double reflection = 1.0;
constexpr double expansion = 2.0;
constexpr double contraction = 0.5;
constexpr double shrinkage = 0.5;

struct vertex
{
    std::vector<double> x;
    double f;
};

double safe_eval(const objective_fn& objective, std::span<const double> x)
{
    const double v = objective(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

std::vector<double> affine(const std::vector<double>& centroid, const std::vector<double>& worst, double coeff)
{
    std::vector<double> out(centroid.size());
    for (std::size_t k = 0; k < centroid.size(); ++k)
        out[k] = centroid[k] + coeff * (centroid[k] - worst[k]);
    return out;
}

double diameter(const std::vector<vertex>& simplex)
{
    double d = 0.0;
    const auto& best = simplex.front().x;
    for (std::size_t v = 1; v < simplex.size(); ++v)
        for (std::size_t k = 0; k < best.size(); ++k)
            d = std::max(d, std::abs(simplex[v].x[k] - best[k]));
    return d;
}

} // namespace

simplex_result nelder_mead(const objective_fn& objective, std::vector<double> start, const simplex_options& options)
{
    if (start.empty())
        throw domain_error("simplex start point has no coordinates");

    const auto n = start.size();
    std::vector<vertex> simplex;
    simplex.reserve(n + 1);
    simplex.push_back({start, safe_eval(objective, start)});
    for (std::size_t k = 0; k < n; ++k)
    {
        auto x = start;
        x[k] += options.initial_step;
        const double f = safe_eval(objective, x);
        simplex.push_back({std::move(x), f});
    }

    const auto by_value = [](const vertex& a, const vertex& b) { return a.f < b.f; };
    std::stable_sort(simplex.begin(), simplex.end(), by_value);

    simplex_result result;
    int iteration = 0;
    for (; iteration < options.max_iterations; ++iteration)
    {
        if (diameter(simplex) < options.tolerance)
        {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t k = 0; k < n; ++k)
                centroid[k] += simplex[v].x[k] / static_cast<double>(n);

        auto& worst = simplex.back();
        const auto& second_worst = simplex[n - 1];
        const auto& best = simplex.front();

        auto reflected = affine(centroid, worst.x, reflection);
        const double f_reflected = safe_eval(objective, reflected);

        if (f_reflected < best.f)
        {
            auto expanded = affine(centroid, worst.x, expansion);
            const double f_expanded = safe_eval(objective, expanded);
            if (f_expanded < f_reflected)
                worst = {std::move(expanded), f_expanded};
            else
                worst = {std::move(reflected), f_reflected};
        }
        else if (f_reflected < second_worst.f)
        {
            worst = {std::move(reflected), f_reflected};
        }
        else
        {
            const bool outside = f_reflected < worst.f;
            auto contracted = outside ? affine(centroid, worst.x, contraction * reflection)
                                      : affine(centroid, worst.x, -contraction);
            const double f_contracted = safe_eval(objective, contracted);
            if (f_contracted < (outside ? f_reflected : worst.f))
            {
                worst = {std::move(contracted), f_contracted};
            }
            else
            {
                for (std::size_t v = 1; v <= n; ++v)
                {
                    for (std::size_t k = 0; k < n; ++k)
                        simplex[v].x[k] = simplex[0].x[k] + shrinkage * (simplex[v].x[k] - simplex[0].x[k]);
                    simplex[v].f = safe_eval(objective, simplex[v].x);
                }
            }
        }

        std::stable_sort(simplex.begin(), simplex.end(), by_value);
        if (options.record_trace)
            result.trace.push_back(simplex.front().f);
    }

    if (!result.converged && diameter(simplex) < options.tolerance)
        result.converged = true;

    result.x = simplex.front().x;
    result.value = simplex.front().f;
    result.iterations = iteration;
    return result;
}

} // namespace numlaw
