#pragma once

#include <functional>
#include <span>
#include <vector>

namespace numlaw {

struct simplex_options
{
    /// Stop once every vertex is within this infinity-norm distance of the best vertex.
    double tolerance = 1e-10;
    int max_iterations = 10000;
    /// Edge length of the initial simplex along each coordinate axis.
    double initial_step = 0.25;
    bool record_trace = false;
};

struct simplex_result
{
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Best objective value after each iteration, when requested.
    std::vector<double> trace;
};

using objective_fn = std::function<double(std::span<const double>)>;

/// Derivative-free Nelder-Mead minimization. Non-finite objective values are treated as +inf.
simplex_result nelder_mead(const objective_fn& objective, std::vector<double> start, const simplex_options& options = {});

} // namespace numlaw
