#include "numlaw/cutoff.hpp"
#include "numlaw/error.hpp"
#include "numlaw/fitting.hpp"
#include "numlaw/ingest.hpp"
#include "numlaw/json.hpp"
#include "numlaw/laws.hpp"
#include "numlaw/metrics.hpp"
#include "numlaw/pipeline.hpp"
#include "numlaw/synth.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

numlaw::observed_series series(std::vector<double> support, std::vector<double> frequency)
{
    return numlaw::observed_series{std::move(support), std::move(frequency)};
}

// Structured results cross the boundary as JSON text; the Python package decodes them.
std::string dump(const numlaw::ordered_json& j)
{
    return j.dump();
}

std::vector<numlaw::dimension> dimensions(const std::vector<std::string>& names)
{
    std::vector<numlaw::dimension> dims;
    for (const auto& n : names)
        dims.push_back(numlaw::parse_dimension(n));
    return dims;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Number-law fitting, scoring and cutoff estimation";

    auto base = py::register_exception<numlaw::error>(m, "NumlawError");
    py::register_exception<numlaw::ingest_error>(m, "IngestError", base.ptr());
    py::register_exception<numlaw::empty_corpus_error>(m, "EmptyCorpusError", base.ptr());
    py::register_exception<numlaw::domain_error>(m, "DomainError", base.ptr());
    py::register_exception<numlaw::degenerate_error>(m, "DegenerateError", base.ptr());
    py::register_exception<numlaw::config_error>(m, "ConfigError", base.ptr());

    m.def("extract_numbers", [](const std::string& text) { return numlaw::extract_numbers(text); }, py::arg("text"));
    m.def(
        "extract_csv_column",
        [](const std::string& csv, const std::string& column) { return numlaw::extract_csv_column(csv, column); },
        py::arg("csv"), py::arg("column"));
    m.def(
        "compute_stats",
        [](const std::vector<numlaw::value_t>& values) { return dump(numlaw::to_json(numlaw::compute_stats(values))); },
        py::arg("values"));

    m.def("benford_pmf", &numlaw::benford_pmf, py::arg("digit"));
    m.def(
        "zipf_value", [](double rank, double alpha, double scale) { return numlaw::zipf_value(rank, {alpha, scale}); },
        py::arg("rank"), py::arg("alpha"), py::arg("scale"));
    m.def(
        "gamma_density",
        [](double x, double lambda, double beta, double tau) { return numlaw::gamma_density(x, {lambda, beta, tau}); },
        py::arg("x"), py::arg("lam"), py::arg("beta"), py::arg("tau"));

    m.def("r_squared", [](const std::vector<double>& o, const std::vector<double>& f) { return numlaw::r_squared(o, f); });
    m.def("kl_divergence",
          [](const std::vector<double>& p, const std::vector<double>& q) { return numlaw::kl_divergence(p, q); });
    m.def("js_divergence",
          [](const std::vector<double>& p, const std::vector<double>& q) { return numlaw::js_divergence(p, q); });
    m.def("mape", [](const std::vector<double>& o, const std::vector<double>& f) { return numlaw::mape(o, f); });

    m.def(
        "fit",
        [](const std::string& kind, std::vector<double> support, std::vector<double> observed) {
            const auto data = series(std::move(support), std::move(observed));
            if (kind == "benford")
                return dump(numlaw::to_json(numlaw::fit_benford(data)));
            if (kind == "zipf")
                return dump(numlaw::to_json(numlaw::fit_zipf(data)));
            if (kind == "gamma")
                return dump(numlaw::to_json(numlaw::fit_gamma_discrete(data)));
            if (kind == "gamma_beta_zero")
                return dump(numlaw::to_json(numlaw::fit_gamma_beta_zero(data)));
            throw numlaw::config_error("unknown fit kind '" + kind + "'");
        },
        py::arg("kind"), py::arg("support"), py::arg("observed"));

    m.def(
        "analyze",
        [](const std::vector<std::vector<numlaw::value_t>>& corpora, const std::vector<std::string>& labels,
           const std::vector<std::optional<int>>& years, const std::vector<std::string>& analyses, bool cutoff) {
            if (labels.size() != corpora.size() || years.size() != corpora.size())
                throw numlaw::config_error("corpora, labels and years must have the same length");
            std::vector<numlaw::number_corpus> cs;
            for (std::size_t i = 0; i < corpora.size(); ++i)
                cs.push_back({labels[i], years[i], corpora[i]});
            numlaw::report_config config;
            config.analyses = dimensions(analyses);
            config.options.cutoff = cutoff;
            config.inputs = labels;
            numlaw::analysis_report report;
            {
                py::gil_scoped_release release;
                report = numlaw::build_report(cs, config);
            }
            return dump(numlaw::to_json(report));
        },
        py::arg("corpora"), py::arg("labels"), py::arg("years"), py::arg("analyses"), py::arg("cutoff") = false);

    m.def(
        "sample_zipf",
        [](std::size_t n, double alpha, std::size_t support, std::uint64_t seed) {
            return numlaw::sample_zipf_values(n, alpha, support, {seed}).values;
        },
        py::arg("n"), py::arg("alpha"), py::arg("support"), py::arg("seed"));
    m.def(
        "sample_benford_digits",
        [](std::size_t n, std::uint64_t seed) { return numlaw::sample_benford_digits(n, {seed}); }, py::arg("n"),
        py::arg("seed"));
    m.def(
        "sample_gamma_lengths",
        [](std::size_t n, double beta, double tau, int max_length, std::uint64_t seed) {
            return numlaw::sample_gamma_lengths(n, beta, tau, max_length, {seed});
        },
        py::arg("n"), py::arg("beta"), py::arg("tau"), py::arg("max_length"), py::arg("seed"));

    m.def(
        "estimate_cutoff",
        [](const std::string& system, double count, double lower, double alpha, double initial, double beta,
           bool damped) {
            numlaw::cutoff_options options;
            options.damped = damped;
            if (system == "gamma")
                return dump(numlaw::to_json(numlaw::estimate_cutoff_gamma(count, lower, alpha, beta, initial, options)));
            if (system == "zipf")
                return dump(numlaw::to_json(numlaw::estimate_cutoff_zipf(count, lower, alpha, initial, options)));
            throw numlaw::config_error("system must be gamma or zipf");
        },
        py::arg("system"), py::arg("count"), py::arg("lower"), py::arg("alpha"), py::arg("initial"),
        py::arg("beta") = 0.0, py::arg("damped") = true);
}
