#pragma once

#include "numlaw/cutoff.hpp"
#include "numlaw/fitting.hpp"
#include "numlaw/ingest.hpp"
#include "numlaw/laws.hpp"
#include "numlaw/metrics.hpp"
#include "numlaw/pipeline.hpp"

#include <json.hpp>

namespace numlaw {

using ordered_json = nlohmann::ordered_json;

inline constexpr int report_schema_version = 1;

/// {"model": "benford"|"zipf"|"gamma", "params": {...}}
ordered_json to_json(const law_model& model);
/// Inverse of to_json(law_model). Throws config_error on unknown models or missing parameters.
law_model model_from_json(const nlohmann::json& j);

ordered_json to_json(const corpus_stats& stats);
ordered_json to_json(const metric_scores& scores);
ordered_json to_json(const fit_verdict& verdict);
ordered_json to_json(const fit_result& fit);
ordered_json to_json(const cutoff_estimate& estimate);
ordered_json to_json(const boundary_summary& summary);
ordered_json to_json(const analysis_section& section);
ordered_json to_json(const trend_finding& trend);
ordered_json to_json(const comparison_series& series);
ordered_json to_json(const analysis_report& report);

} // namespace numlaw
