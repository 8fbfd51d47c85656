#include "pipeline.hpp"

#include <cstdint>
#include <json.hpp>
#include <set>

#include "embedding.hpp"
#include "errors.hpp"
#include "index.hpp"
#include "metrics.hpp"
#include "ranker.hpp"
#include "text.hpp"
#include "trainer.hpp"

namespace revrank {

using nlohmann::json;

namespace {

void require_path(const std::string& value, const std::string& key) {
    if (value.empty()) throw config_error("config paths." + key + " is not set");
}

std::unordered_set<std::string> resolve_stopwords(const PipelineConfig& config) {
    if (config.paths.stopwords.empty()) return default_stopwords();
    return load_stopwords(config.paths.stopwords);
}

}  // namespace

std::string run_ingest(const PipelineConfig& config, const std::string& input_path) {
    require_path(config.paths.corpus, "corpus");
    std::unordered_set<std::string> stopwords = resolve_stopwords(config);
    IngestOptions options;
    options.tokenizer = config.tokenizer;
    options.min_len = config.min_len;
    options.stopwords = &stopwords;
    IngestStats stats = ingest(input_path, config.paths.corpus, options);
    return stats.to_json();
}

std::string run_build_lexicon(const PipelineConfig& config, const JudgeFn& judge) {
    require_path(config.paths.corpus, "corpus");
    require_path(config.paths.seeds, "seeds");
    require_path(config.paths.lexicon, "lexicon");
    std::vector<Review> reviews = load_store(config.paths.corpus);
    std::vector<const Review*> partition = lexicon_partition(reviews);
    EmotionLexicon seeds = load_seeds(config.paths.seeds);
    ExpansionOutcome outcome = expand_lexicon(partition, seeds, config.lexicon_expansion, judge);
    save_lexicon(config.paths.lexicon, outcome.lexicon);

    json j;
    j["path"] = config.paths.lexicon;
    j["negative"] = outcome.lexicon.side_count(Side::Negative);
    j["positive"] = outcome.lexicon.side_count(Side::Positive);
    j["admitted_negative"] = outcome.admitted_negative;
    j["admitted_positive"] = outcome.admitted_positive;
    j["iterations"] = outcome.iterations;
    j["judged"] = outcome.judged;
    return j.dump();
}

std::string run_train_embeddings(const PipelineConfig& config) {
    require_path(config.paths.corpus, "corpus");
    require_path(config.paths.vectors, "vectors");
    std::vector<Review> reviews = load_store(config.paths.corpus);
    std::vector<const Review*> negatives = negative_partition(reviews);
    TrainResult result = train_toy_embeddings(negatives, config.train);
    save_table(config.paths.vectors, result.table);

    json j;
    j["path"] = config.paths.vectors;
    j["vocab_size"] = result.table.vocab_size();
    j["dim"] = result.table.dim;
    j["iterations"] = config.train.iterations;
    j["initial_loss"] = result.loss_history.front();
    j["final_loss"] = result.loss_history.back();
    return j.dump();
}

std::string run_validate_embeddings(const PipelineConfig& config) {
    require_path(config.paths.vectors, "vectors");
    LoadedTable loaded = load_table(config.paths.vectors);

    json j;
    j["path"] = config.paths.vectors;
    j["vocab_size"] = loaded.table.vocab_size();
    j["dim"] = loaded.table.dim;
    j["duplicates"] = loaded.duplicates;
    return j.dump();
}

std::string run_build_index(const PipelineConfig& config) {
    require_path(config.paths.corpus, "corpus");
    require_path(config.paths.index, "index");
    std::vector<Review> reviews = load_store(config.paths.corpus);
    std::vector<const Review*> negatives = negative_partition(reviews);
    InvertedIndex index = build_index(negatives);
    save_index(config.paths.index, index);

    json j;
    j["path"] = config.paths.index;
    j["docs"] = index.doc_count();
    j["terms"] = index.postings.size();
    j["avg_doc_len"] = index.avg_doc_len;
    return j.dump();
}

std::string run_rank(const PipelineConfig& config, const std::string& attribute,
                     const std::string& method_name, size_t top_k) {
    require_path(config.paths.corpus, "corpus");
    MethodId method;
    if (method_name.empty()) {
        method.variant = parse_variant(config.rank_variant);
    } else {
        method = parse_method(method_name);
    }
    size_t k = top_k == SIZE_MAX ? config.top_k : top_k;

    std::vector<Review> reviews = load_store(config.paths.corpus);
    std::vector<const Review*> negatives = negative_partition(reviews);
    std::unordered_set<std::string> stopwords = resolve_stopwords(config);

    RankStores stores;
    stores.negatives = &negatives;
    stores.bm25 = config.bm25;
    stores.tokenizer = config.tokenizer;
    stores.stopwords = &stopwords;

    InvertedIndex index;
    LoadedTable loaded;
    EmotionLexicon lexicon;
    if (method.is_bm25) {
        require_path(config.paths.index, "index");
        index = load_index(config.paths.index);
        stores.index = &index;
    } else {
        require_path(config.paths.vectors, "vectors");
        require_path(config.paths.lexicon, "lexicon");
        loaded = load_table(config.paths.vectors);
        lexicon = load_lexicon(config.paths.lexicon);
        stores.table = &loaded.table;
        stores.lexicon = &lexicon;
    }
    return ranked_list_to_jsonl(rank(attribute, method, k, stores));
}

EvaluateOutput run_evaluate(const PipelineConfig& config, const std::string& methods_csv) {
    require_path(config.paths.corpus, "corpus");
    require_path(config.paths.annotations, "annotations");

    std::vector<MethodId> methods;
    {
        size_t start = 0;
        while (start <= methods_csv.size()) {
            size_t comma = methods_csv.find(',', start);
            std::string name = comma == std::string::npos
                                   ? methods_csv.substr(start)
                                   : methods_csv.substr(start, comma - start);
            size_t a = name.find_first_not_of(" \t");
            if (a != std::string::npos) {
                size_t b = name.find_last_not_of(" \t");
                methods.push_back(parse_method(name.substr(a, b - a + 1)));
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    if (methods.empty()) throw config_error("evaluate needs at least one method");

    AnnotationSet annotations = load_annotations(config.paths.annotations);
    if (!config.paths.gold.empty()) load_gold(config.paths.gold, annotations);

    std::vector<Review> reviews = load_store(config.paths.corpus);
    std::unordered_set<std::string> stopwords = resolve_stopwords(config);

    bool any_embed = false;
    for (const MethodId& m : methods) any_embed |= !m.is_bm25;
    LoadedTable loaded;
    EmotionLexicon lexicon;
    CompareInputs inputs;
    inputs.reviews = &reviews;
    inputs.bm25 = config.bm25;
    inputs.tokenizer = config.tokenizer;
    inputs.stopwords = &stopwords;
    if (any_embed) {
        require_path(config.paths.vectors, "vectors");
        require_path(config.paths.lexicon, "lexicon");
        loaded = load_table(config.paths.vectors);
        lexicon = load_lexicon(config.paths.lexicon);
        inputs.table = &loaded.table;
        inputs.lexicon = &lexicon;
    }

    std::set<std::string> attribute_set;
    for (const auto& [attribute, rest] : annotations.marks) attribute_set.insert(attribute);
    for (const auto& [attribute, rest] : annotations.gold) attribute_set.insert(attribute);
    if (attribute_set.empty()) throw config_error("annotation files name no attributes");
    std::vector<std::string> attributes(attribute_set.begin(), attribute_set.end());

    MetricReport report = compare_methods(inputs, attributes, methods, annotations);
    EvaluateOutput out;
    out.report_json = report_to_json(report);
    out.table = report_table(report);
    return out;
}

}  // namespace revrank
