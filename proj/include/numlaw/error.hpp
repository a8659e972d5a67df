#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace numlaw {

/// Base class for every error raised by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Input could not be decoded or tokenized.
class ingest_error : public error
{
public:
    using error::error;
};

/// A corpus or histogram with nothing to analyze.
class empty_corpus_error : public error
{
public:
    using error::error;
};

/// Argument outside the mathematical domain of an operation.
class domain_error : public error
{
public:
    using error::error;
};

/// Model or data with no usable mass or variance.
class degenerate_error : public error
{
public:
    using error::error;
};

/// Too few informative points for the number of free parameters.
class underdetermined_error : public error
{
public:
    using error::error;
};

/// Operation requires a different model family.
class model_type_error : public error
{
public:
    using error::error;
};

/// Bad configuration (empty input list, unknown analysis name, ...).
class config_error : public error
{
public:
    using error::error;
};

/// Fixed-point iteration produced a non-finite value. Carries the iterates seen so far.
class numeric_failure : public error
{
public:
    numeric_failure(const std::string& what, std::vector<double> trace)
        : error(what), trace_(std::move(trace))
    {
    }

    const std::vector<double>& trace() const noexcept { return trace_; }

private:
    std::vector<double> trace_;
};

} // namespace numlaw
