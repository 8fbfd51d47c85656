#pragma once

#include <cstdint>
#include <string>

namespace revrank {

// Write a deterministic fixture into out_dir and return a manifest JSON.
// Kinds:
//   lexicon: 2,000 reviews with 20 planted negative-context and 20 planted
//             positive-context words whose co-occurrence ratios are
//             computable by brute force; plus seeds.tsv.
//   ranking: 50 reviews over 10 attribute topics with hand-placed vectors,
//             a two-word lexicon, gold orderings and an annotation fixture
//             whose helpfulness cells come out to 0.72 / 0.64.
//   train:   context-twin corpus for the toy trainer.
// Every kind also writes a ready-to-use config.toml pointing into out_dir.
std::string generate_synthetic(const std::string& kind, const std::string& out_dir,
                               uint64_t seed);

}  // namespace revrank
