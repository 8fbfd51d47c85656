#pragma once

#include <string>

#include "config.hpp"
#include "lexicon.hpp"

namespace revrank {

// High-level commands over a PipelineConfig. Each loads what it needs from
// the configured paths, does the work, persists outputs, and returns a JSON
// summary for machine consumption. The CLI reaches these through the C API.

std::string run_ingest(const PipelineConfig& config, const std::string& input_path);

std::string run_build_lexicon(const PipelineConfig& config, const JudgeFn& judge);

std::string run_train_embeddings(const PipelineConfig& config);

std::string run_validate_embeddings(const PipelineConfig& config);

std::string run_build_index(const PipelineConfig& config);

// method_name empty -> embedding method with the configured reward variant.
// top_k = SIZE_MAX -> configured top_k.
std::string run_rank(const PipelineConfig& config, const std::string& attribute,
                     const std::string& method_name, size_t top_k);

struct EvaluateOutput {
    std::string report_json;
    std::string table;
};

EvaluateOutput run_evaluate(const PipelineConfig& config, const std::string& methods_csv);

}  // namespace revrank
