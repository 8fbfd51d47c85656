#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "corpus.hpp"
#include "embedding.hpp"
#include "index.hpp"
#include "lexicon.hpp"
#include "reward.hpp"

namespace revrank {

struct MethodId {
    bool is_bm25 = false;
    RewardVariant variant = RewardVariant::None;  // unused for BM25

    bool operator==(const MethodId& o) const {
        return is_bm25 == o.is_bm25 && (is_bm25 || variant == o.variant);
    }
};

// Accepts bm25, glove, glove_sigmoid, glove_isigmoid, glove_msigmoid,
// glove_imsigmoid (case-insensitive).
MethodId parse_method(const std::string& name);
// Display names: BM25, GloVe, GloVe_Sigmoid, GloVe_iSigmoid, ...
std::string method_display_name(const MethodId& method);

// r_s = c_s * e_c.
double rank_score(double c_s, double e_c);

struct RankEntry {
    std::string review_id;
    double score = 0.0;
    bool has_components = false;  // false for BM25 entries
    double c_s = 0.0;
    double e_n = 0.0;
    double e_c = 0.0;
};

struct RankedList {
    std::string attribute;  // raw query string
    MethodId method;
    std::vector<RankEntry> entries;  // descending score, ties by ascending id
    uint64_t excluded_oov = 0;       // reviews skipped as all out-of-vocabulary
};

// Everything a query needs, already loaded. Embedding methods use negatives,
// table and lexicon; BM25 uses index.
struct RankStores {
    const std::vector<const Review*>* negatives = nullptr;
    const InvertedIndex* index = nullptr;
    const EmbeddingTable* table = nullptr;
    const EmotionLexicon* lexicon = nullptr;
    Bm25Params bm25;
    std::string tokenizer = "whitespace";
    const std::unordered_set<std::string>* stopwords = nullptr;  // default when null
};

// Clean and tokenize the attribute, then score the negative partition with
// the chosen engine and return the top k.
RankedList rank(const std::string& attribute, const MethodId& method, size_t k,
                const RankStores& stores);

// One JSON object per entry: attribute, method, rank, review_id, score, and
// for embedding methods c_s, e_n, e_c.
std::string ranked_list_to_jsonl(const RankedList& list);

}  // namespace revrank
