#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corpus.hpp"

namespace revrank {

struct Posting {
    uint32_t doc = 0;  // position in doc_ids
    uint32_t tf = 0;
};

struct InvertedIndex {
    std::vector<std::string> doc_ids;  // corpus order
    std::vector<uint64_t> doc_lens;    // parallel to doc_ids
    std::map<std::string, std::vector<Posting>> postings;  // term -> docs ascending
    double avg_doc_len = 0.0;

    size_t doc_count() const { return doc_ids.size(); }
    // Lazily built id -> position map.
    const std::unordered_map<std::string, uint32_t>& id_lookup() const;

private:
    mutable std::unordered_map<std::string, uint32_t> id_to_pos_;
};

// Index the score-1 partition of the given reviews. Empty partition is an
// error.
InvertedIndex build_index(const std::vector<const Review*>& reviews);

// Versioned little-endian binary format with a magic header.
void save_index(const std::string& path, const InvertedIndex& index);
InvertedIndex load_index(const std::string& path);

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

// ln((N - df + 0.5)/(df + 0.5) + 1) -- never negative.
double bm25_idf(uint64_t doc_count, uint64_t df);

// Sum over query tokens (duplicates count twice) of the usual saturating
// tf/length-normalized weight. Unknown review_id is an error.
double bm25_score(const std::vector<std::string>& query, const std::string& review_id,
                  const InvertedIndex& index, const Bm25Params& params);

// All docs matching at least one query term, by descending score, ties by
// ascending doc id, truncated to k.
std::vector<std::pair<std::string, double>> bm25_topk(const std::vector<std::string>& query,
                                                      const InvertedIndex& index,
                                                      const Bm25Params& params, size_t k);

}  // namespace revrank
