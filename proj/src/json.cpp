#include "numlaw/json.hpp"

#include "numlaw/error.hpp"

namespace numlaw {

namespace {

double require_number(const nlohmann::json& params, const char* key)
{
    if (!params.contains(key) || !params.at(key).is_number())
        throw config_error(std::string("model parameter '") + key + "' missing or not a number");
    return params.at(key).get<double>();
}

ordered_json to_json(const observed_series& s)
{
    return {{"support", s.support}, {"frequency", s.frequency}};
}

ordered_json to_json(const normalized_curve& c)
{
    return {{"support", c.support}, {"normalized", c.normalized}, {"abs_derivative", c.abs_derivative}};
}

} // namespace

ordered_json to_json(const law_model& model)
{
    ordered_json j;
    j["model"] = std::string(model_name(model));
    if (const auto* z = std::get_if<zipf_model>(&model))
        j["params"] = {{"alpha", z->alpha}, {"C", z->scale}};
    else if (const auto* g = std::get_if<gamma_model>(&model))
        j["params"] = {{"lambda", g->lambda}, {"beta", g->beta}, {"tau", g->tau}};
    else
        j["params"] = ordered_json::object();
    return j;
}

law_model model_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("model") || !j.at("model").is_string())
        throw config_error("model JSON needs a string 'model' field");
    const auto name = j.at("model").get<std::string>();
    const auto params = j.value("params", nlohmann::json::object());
    if (name == "benford")
        return benford_model{};
    if (name == "zipf")
        return zipf_model{require_number(params, "alpha"), require_number(params, "C")};
    if (name == "gamma")
        return gamma_model{require_number(params, "lambda"), require_number(params, "beta"), require_number(params, "tau")};
    throw config_error("unknown model '" + name + "'");
}

ordered_json to_json(const corpus_stats& stats)
{
    return {{"observation_count", stats.observation_count},
            {"max", stats.max},
            {"min", stats.min},
            {"mean", stats.mean},
            {"median", stats.median}};
}

ordered_json to_json(const metric_scores& scores)
{
    return {{"r_squared", scores.r_squared}, {"kl", scores.kl}, {"js", scores.js}, {"mape", scores.mape}};
}

ordered_json to_json(const fit_verdict& verdict)
{
    return {{"r_squared", to_string(verdict.r_squared)},
            {"kl", to_string(verdict.kl)},
            {"js", to_string(verdict.js)},
            {"mape", to_string(verdict.mape)}};
}

ordered_json to_json(const fit_result& fit)
{
    auto j = to_json(fit.model);
    ordered_json out;
    out["model"] = j["model"];
    out["fit"] = std::string(to_string(fit.kind));
    out["params"] = j["params"];
    out["support"] = fit.support;
    out["observed"] = fit.observed;
    out["fitted"] = fit.fitted;
    out["scores"] = to_json(fit.scores);
    out["verdict"] = to_json(fit.verdict);
    out["residual_sum"] = fit.residual_sum;
    out["iterations"] = fit.iterations;
    out["converged"] = fit.converged;
    out["degenerate_variance"] = fit.degenerate_variance;
    return out;
}

ordered_json to_json(const cutoff_estimate& e)
{
    return {{"upper", e.upper},       {"lower", e.lower},           {"deviation", e.deviation},
            {"converged", e.converged}, {"iterations", e.iterations}, {"trace", e.trace}};
}

ordered_json to_json(const boundary_summary& summary)
{
    ordered_json entries = ordered_json::array();
    for (const auto& e : summary.entries)
    {
        entries.push_back({{"quantity", std::string(to_string(e.quantity))},
                           {"observed_share", e.observed_share},
                           {"estimated_boundary", e.estimated_boundary},
                           {"within_boundary", e.within_boundary},
                           {"converged", e.converged},
                           {"iterations", e.iterations},
                           {"reference_share", e.reference_share}});
    }
    return {{"entries", entries}};
}

ordered_json to_json(const analysis_section& section)
{
    ordered_json j;
    j["dimension"] = std::string(to_string(section.dim));
    j["observed"] = to_json(section.observed);
    if (section.dim == dimension::frequency)
        j["rank_values"] = section.rank_values;
    ordered_json fits = ordered_json::array();
    for (const auto& f : section.fits)
        fits.push_back(to_json(f));
    j["fits"] = fits;
    j["best_fit"] = section.best_fit ? ordered_json(std::string(to_string(*section.best_fit))) : ordered_json(nullptr);
    j["underdetermined"] = section.underdetermined;
    j["degenerate"] = section.degenerate;
    j["notes"] = section.notes;
    j["cutoff"] = section.cutoff ? to_json(*section.cutoff) : ordered_json(nullptr);
    return j;
}

ordered_json to_json(const trend_finding& trend)
{
    ordered_json points = ordered_json::array();
    for (const auto& p : trend.points)
        points.push_back({{"year", p.year}, {"value", p.value}});
    return {{"subject", trend.subject},
            {"metric", trend.metric},
            {"points", points},
            {"slope", trend.slope},
            {"flagged", trend.flagged}};
}

ordered_json to_json(const comparison_series& series)
{
    return {{"first", to_json(series.first)}, {"second", to_json(series.second)}};
}

ordered_json to_json(const analysis_report& report)
{
    const auto& cfg = report.config;
    ordered_json analyses = ordered_json::array();
    for (const auto d : cfg.analyses)
        analyses.push_back(std::string(to_string(d)));
    const auto& t = cfg.options.fit.thresholds;

    ordered_json j;
    j["schema_version"] = report_schema_version;
    j["provenance"] = {{"inputs", cfg.inputs},
                       {"extraction_rules",
                        {{"group_separators", cfg.rules.group_separators},
                         {"footnote_markers", cfg.rules.footnote_markers}}},
                       {"analyses", analyses},
                       {"cutoff", cfg.options.cutoff},
                       {"trend_threshold", cfg.trend_threshold},
                       {"thresholds",
                        {{"strong_r_squared", t.strong_r_squared},
                         {"acceptable_r_squared", t.acceptable_r_squared},
                         {"kl", t.kl},
                         {"js", t.js},
                         {"mape", t.mape}}}};

    ordered_json corpora = ordered_json::array();
    for (const auto& c : report.corpora)
    {
        ordered_json sections = ordered_json::array();
        for (const auto& s : c.sections)
            sections.push_back(to_json(s));
        corpora.push_back({{"key", c.key},
                           {"label", c.label},
                           {"year", c.year ? ordered_json(*c.year) : ordered_json(nullptr)},
                           {"stats", to_json(c.stats)},
                           {"sections", sections},
                           {"errors", c.errors},
                           {"boundaries", c.boundaries ? to_json(*c.boundaries) : ordered_json(nullptr)}});
    }
    j["corpora"] = corpora;

    ordered_json pooled = ordered_json::array();
    for (const auto& p : report.pooled)
    {
        pooled.push_back({{"dimension", std::string(to_string(p.dim))},
                          {"fit", p.fit ? to_json(*p.fit) : ordered_json(nullptr)},
                          {"error", p.error.empty() ? ordered_json(nullptr) : ordered_json(p.error)}});
    }
    j["pooled"] = pooled;

    ordered_json trends = ordered_json::array();
    for (const auto& t2 : report.trends)
        trends.push_back(to_json(t2));
    j["trends"] = trends;
    return j;
}

} // namespace numlaw
