#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "corpus.hpp"

namespace revrank {

enum class Side { Positive, Negative };

enum class WordOrigin { Seed, Expanded, Imported };

struct LexiconEntry {
    Side side = Side::Negative;
    WordOrigin origin = WordOrigin::Seed;
    uint32_t iteration = 0;   // expansion round; 0 for seeds and imports
    double ratio = 0.0;       // ratio at admission
    bool has_ratio = false;   // false for seeds and imports
};

// Disjoint positive/negative word sets with per-word provenance.
struct EmotionLexicon {
    std::map<std::string, LexiconEntry> words;

    bool contains(const std::string& word) const { return words.count(word) != 0; }
    bool is_side(const std::string& word, Side side) const;
    size_t side_count(Side side) const;
    std::vector<std::string> side_words(Side side) const;

    // Rejects duplicate words (disjointness is enforced here).
    void add(const std::string& word, LexiconEntry entry);
};

struct CandidateStats {
    std::string word;
    uint64_t n_n = 0;  // review-level co-occurrences with negative-side words
    uint64_t n_p = 0;  // review-level co-occurrences with positive-side words
};

// For every word not in the lexicon: in each review containing the word, add
// the number of distinct negative-side (resp. positive-side) lexicon words
// present in that review. Returned sorted by word.
std::vector<CandidateStats> count_cooccurrence(const std::vector<const Review*>& reviews,
                                               const EmotionLexicon& lex);

// (n_n + alpha) / (n_p + alpha); alpha = 0 reproduces the raw ratio and is an
// error when the denominator is zero.
double negative_ratio(const CandidateStats& stats, double alpha);
double positive_ratio(const CandidateStats& stats, double alpha);

enum class Judgment { Accept, Reject, Defer };

// Interactive stand-in for human coders; called once per presented candidate.
using JudgeFn = std::function<Judgment(const std::string& word, Side side, double ratio,
                                       uint64_t n_n, uint64_t n_p)>;

struct ExpansionConfig {
    double admit_threshold = 2.0;  // candidates at or above are admitted/presented
    double stop_threshold = 1.2;   // loop stops when no candidate reaches this
    double alpha = 1.0;
    uint32_t max_iterations = 10;
};

struct ExpansionOutcome {
    EmotionLexicon lexicon;
    uint32_t iterations = 0;
    uint64_t admitted_negative = 0;
    uint64_t admitted_positive = 0;
    uint64_t judged = 0;  // candidates presented to the judge
};

// Recursive seed expansion over the score-1/score-5 partitions. Without a
// judge, candidates at or above admit_threshold are admitted automatically;
// with one, those candidates are presented for accept/reject/defer. Rejected
// words leave candidacy on both sides; deferred words are marked not-seed for
// the judged side and never presented again.
ExpansionOutcome expand_lexicon(const std::vector<const Review*>& reviews,
                                const EmotionLexicon& seeds, const ExpansionConfig& config,
                                const JudgeFn& judge = nullptr);

struct PolarityScore {
    uint64_t p = 0;  // positive-word occurrences, with multiplicity
    uint64_t n = 0;  // negative-word occurrences, with multiplicity
    double e_n = 0.0;
};

// e_n = (p - n)/(p + n); 0 when the review hits no lexicon word (neutral).
PolarityScore polarity(const std::vector<std::string>& tokens, const EmotionLexicon& lex);

// Seed file: TSV word<TAB>side with side pos|neg; '#' comments allowed.
EmotionLexicon load_seeds(const std::string& path);

// Lexicon file: TSV word, side, origin, iteration, ratio ('-' when absent).
void save_lexicon(const std::string& path, const EmotionLexicon& lex);
EmotionLexicon load_lexicon(const std::string& path);

// Plain one-word-per-line lists, one file per side.
EmotionLexicon import_word_lists(const std::string& negative_path,
                                 const std::string& positive_path);

}  // namespace revrank
