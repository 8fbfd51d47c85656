#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace revrank {

struct EmbeddingTable {
    size_t dim = 0;
    std::unordered_map<std::string, std::vector<double>> vectors;

    size_t vocab_size() const { return vectors.size(); }
    const std::vector<double>* find(const std::string& word) const {
        auto it = vectors.find(word);
        return it == vectors.end() ? nullptr : &it->second;
    }
};

struct LoadedTable {
    EmbeddingTable table;
    uint64_t duplicates = 0;  // words seen more than once (last value wins)
};

// Text format: optional "vocab_size dim" header, then one word plus dim
// space-separated reals per line.
LoadedTable load_table(const std::string& path);
void save_table(const std::string& path, const EmbeddingTable& table);

double cosine(const std::vector<double>& a, const std::vector<double>& b);

// Arithmetic mean over in-vocabulary tokens; out-of-vocabulary tokens are
// skipped and counted. All tokens out of vocabulary is an error. The sum is
// accumulated in sorted-word order, so the result is exactly
// permutation-invariant.
std::vector<double> mean_vector(const std::vector<std::string>& tokens,
                                const EmbeddingTable& table, uint64_t* skipped = nullptr);

// cosine(mean_vector(attribute), mean_vector(review_tokens)) -- C_s.
double attribute_similarity(const std::vector<std::string>& attribute,
                            const std::vector<std::string>& review_tokens,
                            const EmbeddingTable& table);

}  // namespace revrank
