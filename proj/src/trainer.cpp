#include "trainer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "errors.hpp"

namespace revrank {

std::map<std::pair<std::string, std::string>, double> count_window_cooccurrence(
    const std::vector<const Review*>& reviews, size_t window) {
    std::map<std::pair<std::string, std::string>, double> counts;
    for (const Review* r : reviews) {
        const std::vector<std::string>& t = r->tokens;
        for (size_t i = 0; i < t.size(); ++i) {
            size_t lo = i > window ? i - window : 0;
            size_t hi = std::min(t.size(), i + window + 1);
            for (size_t j = lo; j < hi; ++j) {
                if (j == i) continue;
                counts[{t[i], t[j]}] += 1.0;
            }
        }
    }
    return counts;
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; avoids distribution objects
// so results are identical across standard libraries.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

struct Pair {
    uint32_t focus;
    uint32_t context;
    double count;
};

}  // namespace

TrainResult train_toy_embeddings(const std::vector<const Review*>& reviews,
                                 const TrainConfig& config) {
    if (reviews.empty()) throw domain_error("trainer needs a non-empty corpus");
    if (config.window == 0)
        throw config_error("window must be >= 1 (window 0 yields no co-occurrences)");
    if (config.dim == 0) throw config_error("embedding dimension must be >= 1");
    if (config.learning_rate <= 0) throw config_error("learning rate must be > 0");

    // Sorted vocabulary so parameter indexing is stable across runs.
    std::map<std::string, uint32_t> vocab;
    for (const Review* r : reviews) {
        for (const std::string& t : r->tokens) vocab.emplace(t, 0);
    }
    if (vocab.size() < 2) throw domain_error("vocabulary below 2 words; nothing to fit");
    uint32_t next_id = 0;
    for (auto& [w, id] : vocab) id = next_id++;
    size_t v = vocab.size();
    size_t dim = config.dim;

    auto raw = count_window_cooccurrence(reviews, config.window);
    std::vector<Pair> pairs;
    pairs.reserve(raw.size());
    for (const auto& [key, count] : raw)
        pairs.push_back({vocab.at(key.first), vocab.at(key.second), count});
    if (pairs.empty()) throw domain_error("no co-occurrence pairs; reviews too short");

    // Focus vectors, context vectors, and the two bias rows.
    std::vector<double> w_focus(v * dim);
    std::vector<double> w_ctx(v * dim);
    std::vector<double> b_focus(v);
    std::vector<double> b_ctx(v);
    std::mt19937_64 rng(config.seed);
    double scale = 1.0 / static_cast<double>(dim);
    for (double& x : w_focus) x = (next_unit(rng) - 0.5) * scale;
    for (double& x : w_ctx) x = (next_unit(rng) - 0.5) * scale;
    for (double& x : b_focus) x = (next_unit(rng) - 0.5) * scale;
    for (double& x : b_ctx) x = (next_unit(rng) - 0.5) * scale;

    // Adaptive-gradient accumulators start at 1 so early steps stay bounded.
    std::vector<double> g_focus(v * dim, 1.0);
    std::vector<double> g_ctx(v * dim, 1.0);
    std::vector<double> gb_focus(v, 1.0);
    std::vector<double> gb_ctx(v, 1.0);

    auto weight_of = [&](double x) {
        return x < config.x_max ? std::pow(x / config.x_max, config.exponent) : 1.0;
    };

    auto total_loss = [&]() {
        double loss = 0.0;
        for (const Pair& p : pairs) {
            const double* wf = &w_focus[p.focus * dim];
            const double* wc = &w_ctx[p.context * dim];
            double dot = 0.0;
            for (size_t d = 0; d < dim; ++d) dot += wf[d] * wc[d];
            double diff = dot + b_focus[p.focus] + b_ctx[p.context] - std::log(p.count);
            loss += 0.5 * weight_of(p.count) * diff * diff;
        }
        return loss;
    };

    TrainResult result;
    result.loss_history.push_back(total_loss());

    std::vector<size_t> order(pairs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (uint32_t iter = 0; iter < config.iterations; ++iter) {
        // Seeded Fisher-Yates; modulo bias is irrelevant here and keeps the
        // permutation identical on every platform.
        for (size_t i = order.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(rng() % i);
            std::swap(order[i - 1], order[j]);
        }
        for (size_t idx : order) {
            const Pair& p = pairs[idx];
            double* wf = &w_focus[p.focus * dim];
            double* wc = &w_ctx[p.context * dim];
            double* gf = &g_focus[p.focus * dim];
            double* gc = &g_ctx[p.context * dim];
            double dot = 0.0;
            for (size_t d = 0; d < dim; ++d) dot += wf[d] * wc[d];
            double diff = dot + b_focus[p.focus] + b_ctx[p.context] - std::log(p.count);
            double fdiff = weight_of(p.count) * diff;
            double common = config.learning_rate * fdiff;
            for (size_t d = 0; d < dim; ++d) {
                double step_f = common * wc[d];
                double step_c = common * wf[d];
                wf[d] -= step_f / std::sqrt(gf[d]);
                wc[d] -= step_c / std::sqrt(gc[d]);
                gf[d] += step_f * step_f;
                gc[d] += step_c * step_c;
            }
            b_focus[p.focus] -= common / std::sqrt(gb_focus[p.focus]);
            b_ctx[p.context] -= common / std::sqrt(gb_ctx[p.context]);
            gb_focus[p.focus] += common * common;
            gb_ctx[p.context] += common * common;
        }
        result.loss_history.push_back(total_loss());
    }

    result.table.dim = dim;
    for (const auto& [word, id] : vocab) {
        std::vector<double> vec(dim);
        for (size_t d = 0; d < dim; ++d) vec[d] = w_focus[id * dim + d] + w_ctx[id * dim + d];
        for (double x : vec) {
            if (!std::isfinite(x)) throw domain_error("training diverged: non-finite vector");
        }
        result.table.vectors.emplace(word, std::move(vec));
    }
    return result;
}

}  // namespace revrank
