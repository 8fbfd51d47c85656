#pragma once

#include <string>

namespace revrank {

// Emotion-reward shapes. None means e_c = 1 (pure-similarity ranking).
enum class RewardVariant { Sigmoid, ISigmoid, MSigmoid, IMSigmoid, None };

// Map polarity e_n in [-1,1] to the multiplicative reward e_c.
double reward(double e_n, RewardVariant variant);

// Accepts sigmoid, isigmoid, msigmoid, imsigmoid, none (case-insensitive).
RewardVariant parse_variant(const std::string& name);
std::string variant_name(RewardVariant variant);

}  // namespace revrank
