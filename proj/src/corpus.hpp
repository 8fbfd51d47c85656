#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

namespace revrank {

struct Review {
    std::string id;
    std::string product_id;
    std::string category;
    int score = 0;  // star rating, 1..5
    std::string text;  // cleaned
    std::vector<std::string> tokens;
};

// Keep a (negative) review iff it has at least min_len tokens.
bool filter_review(const std::vector<std::string>& tokens, size_t min_len = 5);

struct IngestStats {
    uint64_t total_ingested = 0;  // well-formed records seen
    uint64_t kept = 0;
    uint64_t dropped_short = 0;
    uint64_t dropped_nonnegative = 0;
    uint64_t malformed = 0;  // broken lines, excluded from total_ingested

    std::string to_json() const;
};

struct IngestOptions {
    std::string tokenizer = "whitespace";
    size_t min_len = 5;
    const std::unordered_set<std::string>* stopwords = nullptr;  // default list when null
};

// Read reviews from a JSONL file, clean/tokenize/filter them, and append the
// survivors to the store at store_path. The sidecar <store>.stats.json keeps
// cumulative counters; the returned stats are the cumulative ones.
IngestStats ingest(const std::string& input_path, const std::string& store_path,
                   const IngestOptions& options);

std::vector<Review> load_store(const std::string& store_path);

// Reviews eligible for ranking: the stored negative partition.
std::vector<const Review*> negative_partition(const std::vector<Review>& reviews);

// Reviews used for lexicon ratios: clearly negative (1) and clearly positive (5).
std::vector<const Review*> lexicon_partition(const std::vector<Review>& reviews);

}  // namespace revrank
