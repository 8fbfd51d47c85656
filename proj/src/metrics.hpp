#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ranker.hpp"

namespace revrank {

struct AnnotationRecord {
    std::string attribute;
    std::string annotator;
    std::string review_id;
    bool helpful = false;
};

struct AnnotationSet {
    std::vector<AnnotationRecord> records;
    // attribute -> annotator -> ordered review ids (rank 1 first)
    std::map<std::string, std::map<std::string, std::vector<std::string>>> gold;

    // attribute -> review_id -> (annotator -> helpful)
    std::map<std::string, std::map<std::string, std::map<std::string, bool>>> marks;

    void index_marks();
};

// CSV with header attribute,annotator,review_id,helpful(0|1).
AnnotationSet load_annotations(const std::string& path);
// CSV with header attribute,annotator,rank,review_id; merged into `into`.
void load_gold(const std::string& path, AnnotationSet& into);

// Borda consensus across annotator orderings: rank sum ascending, missing
// ids penalized one past the list end, ties by ascending id.
std::vector<std::string> consensus_gold(
    const std::map<std::string, std::vector<std::string>>& orderings);

// |top-n(gold) ∩ top-n(ranked)| / n.
double top_n_rate(const std::vector<std::string>& gold, const std::vector<std::string>& ranked,
                  size_t n);

// Pairwise concordance between two orderings of the same review set; 1 for
// identical orders, 0 for exact reversal. Lists of fewer than 2 items are
// vacuously 1.
double average_correct_rate(const std::vector<std::string>& gold,
                            const std::vector<std::string>& ranked);

struct HelpfulnessResult {
    uint64_t helpful = 0;
    uint64_t total = 0;  // marks consumed
    double rate = 0.0;   // helpful/total; 0 when total is 0
    std::map<std::string, std::pair<uint64_t, uint64_t>> per_annotator;  // helpful, total
    std::vector<std::string> coverage_gaps;  // attributes whose top-1 has no marks
};

// Fraction of (attribute, annotator) marks judging the top-1 review helpful.
HelpfulnessResult helpfulness_rate(const AnnotationSet& annotations,
                                   const std::map<std::string, std::string>& top1);

struct MetricCell {
    uint64_t helpful = 0;
    uint64_t total = 0;
    double rate = 0.0;
};

struct MetricReport {
    std::vector<std::string> methods;     // display names, input order
    std::vector<std::string> categories;  // sorted
    std::vector<std::string> attributes;  // sorted
    // method -> category -> helpfulness cell
    std::map<std::string, std::map<std::string, MetricCell>> helpfulness;
    // method -> annotator -> cell (all categories pooled)
    std::map<std::string, std::map<std::string, MetricCell>> per_annotator;
    // method -> n -> mean top-n rate over attributes with gold orderings
    std::map<std::string, std::map<uint64_t, double>> top_n;
    // method -> mean pairwise concordance over attributes with gold orderings
    std::map<std::string, double> average_correct;
    std::vector<std::string> coverage_gaps;  // "method/category/attribute"
};

struct CompareInputs {
    const std::vector<Review>* reviews = nullptr;
    const EmbeddingTable* table = nullptr;
    const EmotionLexicon* lexicon = nullptr;
    Bm25Params bm25;
    std::string tokenizer = "whitespace";
    const std::unordered_set<std::string>* stopwords = nullptr;
};

// Rank every (attribute, method) pair per product category, look up the
// annotation marks on each top-1, and assemble the three metrics.
MetricReport compare_methods(const CompareInputs& inputs,
                             const std::vector<std::string>& attributes,
                             const std::vector<MethodId>& methods,
                             const AnnotationSet& annotations);

std::string report_to_json(const MetricReport& report);
// Methods as rows, categories as columns, two-decimal rates.
std::string report_table(const MetricReport& report);

}  // namespace revrank
