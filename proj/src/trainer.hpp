#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "embedding.hpp"

namespace revrank {

struct TrainConfig {
    size_t dim = 50;
    size_t window = 5;       // symmetric context window, in tokens
    uint32_t iterations = 25;
    double learning_rate = 0.05;
    uint64_t seed = 42;
    double x_max = 100.0;    // co-occurrence weighting cap
    double exponent = 0.75;  // weighting exponent
};

// Symmetric windowed co-occurrence counts over token lists; every ordered
// (center, context) pair within the window adds 1. Keys sorted for
// deterministic iteration.
std::map<std::pair<std::string, std::string>, double> count_window_cooccurrence(
    const std::vector<const Review*>& reviews, size_t window);

struct TrainResult {
    EmbeddingTable table;               // word + context vectors summed
    std::vector<double> loss_history;   // [0] = initial loss, [k] = after iteration k
};

// Fit vectors by weighted least squares on log co-occurrence counts with
// adaptive-gradient updates. Deterministic for a fixed seed.
TrainResult train_toy_embeddings(const std::vector<const Review*>& reviews,
                                 const TrainConfig& config);

}  // namespace revrank
