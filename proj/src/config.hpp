#pragma once

#include <string>

#include "corpus.hpp"
#include "index.hpp"
#include "lexicon.hpp"
#include "trainer.hpp"

namespace revrank {

// One flat-sectioned config file drives every pipeline command.
struct PipelineConfig {
    struct Paths {
        std::string corpus;
        std::string stopwords;  // empty -> built-in default list
        std::string seeds;
        std::string lexicon;
        std::string vectors;
        std::string index;
        std::string annotations;
        std::string gold;
    } paths;

    std::string tokenizer = "whitespace";
    size_t min_len = 5;

    ExpansionConfig lexicon_expansion;
    Bm25Params bm25;

    std::string rank_variant = "sigmoid";  // polarity adjustment used by `rank`
    size_t top_k = 10;

    TrainConfig train;
};

// Parse a config file: [section] headers, key = value lines, '#' comments,
// optional double quotes around values. Unknown sections or keys are errors.
PipelineConfig load_config(const std::string& path);

// Merge a file over an existing config.
void merge_config(PipelineConfig& config, const std::string& path);

// Apply one "section.key" override, e.g. set_value(cfg, "bm25.k1", "1.5").
void set_value(PipelineConfig& config, const std::string& dotted_key,
               const std::string& value);

}  // namespace revrank
