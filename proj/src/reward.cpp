#include "reward.hpp"

#include <cmath>

#include "errors.hpp"

namespace revrank {

namespace {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

double reward(double e_n, RewardVariant variant) {
    if (!(e_n >= -1.0 && e_n <= 1.0))
        throw domain_error("polarity out of range [-1,1]: " + std::to_string(e_n));
    switch (variant) {
        case RewardVariant::Sigmoid:
            return logistic(e_n);
        case RewardVariant::ISigmoid:
            return logistic(-e_n);
        case RewardVariant::MSigmoid:
            // Mirrored: both branches agree at 0.
            return e_n >= 0.0 ? logistic(-e_n) : logistic(e_n);
        case RewardVariant::IMSigmoid:
            return e_n >= 0.0 ? logistic(e_n) : logistic(-e_n);
        case RewardVariant::None:
            break;
    }
    return 1.0;
}

RewardVariant parse_variant(const std::string& name) {
    std::string lower;
    lower.reserve(name.size());
    for (char c : name)
        lower.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    if (lower == "sigmoid") return RewardVariant::Sigmoid;
    if (lower == "isigmoid") return RewardVariant::ISigmoid;
    if (lower == "msigmoid") return RewardVariant::MSigmoid;
    if (lower == "imsigmoid") return RewardVariant::IMSigmoid;
    if (lower == "none") return RewardVariant::None;
    throw config_error("unknown reward variant '" + name +
                       "' (expected sigmoid|isigmoid|msigmoid|imsigmoid|none)");
}

std::string variant_name(RewardVariant variant) {
    switch (variant) {
        case RewardVariant::Sigmoid: return "sigmoid";
        case RewardVariant::ISigmoid: return "isigmoid";
        case RewardVariant::MSigmoid: return "msigmoid";
        case RewardVariant::IMSigmoid: return "imsigmoid";
        case RewardVariant::None: return "none";
    }
    return "none";
}

}  // namespace revrank
