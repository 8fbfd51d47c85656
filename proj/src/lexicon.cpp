#include "lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "errors.hpp"

namespace revrank {

bool EmotionLexicon::is_side(const std::string& word, Side side) const {
    auto it = words.find(word);
    return it != words.end() && it->second.side == side;
}

size_t EmotionLexicon::side_count(Side side) const {
    size_t n = 0;
    for (const auto& [w, e] : words) {
        if (e.side == side) ++n;
    }
    return n;
}

std::vector<std::string> EmotionLexicon::side_words(Side side) const {
    std::vector<std::string> out;
    for (const auto& [w, e] : words) {
        if (e.side == side) out.push_back(w);
    }
    return out;
}

void EmotionLexicon::add(const std::string& word, LexiconEntry entry) {
    auto [it, inserted] = words.emplace(word, entry);
    if (!inserted)
        throw config_error("word on both lexicon sides or duplicated: " + word);
}

std::vector<CandidateStats> count_cooccurrence(const std::vector<const Review*>& reviews,
                                               const EmotionLexicon& lex) {
    std::unordered_map<std::string, CandidateStats> counts;
    std::unordered_set<std::string> distinct;
    for (const Review* r : reviews) {
        distinct.clear();
        distinct.insert(r->tokens.begin(), r->tokens.end());
        uint64_t neg_present = 0;
        uint64_t pos_present = 0;
        for (const std::string& w : distinct) {
            auto it = lex.words.find(w);
            if (it == lex.words.end()) continue;
            if (it->second.side == Side::Negative)
                ++neg_present;
            else
                ++pos_present;
        }
        if (neg_present == 0 && pos_present == 0) continue;
        for (const std::string& w : distinct) {
            if (lex.contains(w)) continue;
            CandidateStats& c = counts[w];
            c.word = w;
            c.n_n += neg_present;
            c.n_p += pos_present;
        }
    }
    std::vector<CandidateStats> out;
    out.reserve(counts.size());
    for (auto& [w, c] : counts) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(),
              [](const CandidateStats& a, const CandidateStats& b) { return a.word < b.word; });
    return out;
}

double negative_ratio(const CandidateStats& stats, double alpha) {
    if (alpha < 0) throw config_error("smoothing alpha must be >= 0");
    double denom = static_cast<double>(stats.n_p) + alpha;
    if (denom == 0.0)
        throw domain_error("undefined negative ratio for '" + stats.word +
                           "': zero positive co-occurrence and no smoothing");
    return (static_cast<double>(stats.n_n) + alpha) / denom;
}

double positive_ratio(const CandidateStats& stats, double alpha) {
    if (alpha < 0) throw config_error("smoothing alpha must be >= 0");
    double denom = static_cast<double>(stats.n_n) + alpha;
    if (denom == 0.0)
        throw domain_error("undefined positive ratio for '" + stats.word +
                           "': zero negative co-occurrence and no smoothing");
    return (static_cast<double>(stats.n_p) + alpha) / denom;
}

namespace {

struct SideState {
    std::unordered_set<std::string> not_seed;  // deferred for this side
};

// One expansion pass for one side. Returns the number of admissions.
uint64_t expand_side(const std::vector<const Review*>& reviews, EmotionLexicon& lex,
                     Side side, uint32_t iteration, const ExpansionConfig& config,
                     const JudgeFn& judge, SideState& state,
                     std::unordered_set<std::string>& rejected, bool& any_eligible,
                     uint64_t& judged) {
    std::vector<CandidateStats> counts = count_cooccurrence(reviews, lex);

    struct Scored {
        CandidateStats stats;
        double ratio;
    };
    std::vector<Scored> scored;
    for (CandidateStats& c : counts) {
        if (rejected.count(c.word) || state.not_seed.count(c.word)) continue;
        double ratio = side == Side::Negative ? negative_ratio(c, config.alpha)
                                              : positive_ratio(c, config.alpha);
        if (ratio >= config.stop_threshold) any_eligible = true;
        if (ratio >= config.admit_threshold) scored.push_back({std::move(c), ratio});
    }
    // Descending ratio; candidates are already word-sorted, so ties stay
    // alphabetical and the run is deterministic.
    std::stable_sort(scored.begin(), scored.end(),
                     [](const Scored& a, const Scored& b) { return a.ratio > b.ratio; });

    uint64_t admitted = 0;
    for (const Scored& s : scored) {
        Judgment verdict = Judgment::Accept;
        if (judge) {
            verdict = judge(s.stats.word, side, s.ratio, s.stats.n_n, s.stats.n_p);
            ++judged;
        }
        switch (verdict) {
            case Judgment::Accept: {
                LexiconEntry entry;
                entry.side = side;
                entry.origin = WordOrigin::Expanded;
                entry.iteration = iteration;
                entry.ratio = s.ratio;
                entry.has_ratio = true;
                lex.add(s.stats.word, entry);
                ++admitted;
                break;
            }
            case Judgment::Reject:
                rejected.insert(s.stats.word);
                break;
            case Judgment::Defer:
                state.not_seed.insert(s.stats.word);
                break;
        }
    }
    return admitted;
}

}  // namespace

ExpansionOutcome expand_lexicon(const std::vector<const Review*>& reviews,
                                const EmotionLexicon& seeds, const ExpansionConfig& config,
                                const JudgeFn& judge) {
    if (reviews.empty()) throw domain_error("lexicon expansion needs a non-empty corpus");
    if (seeds.side_count(Side::Negative) == 0 || seeds.side_count(Side::Positive) == 0)
        throw config_error("seed lexicon must have words on both sides");
    if (config.admit_threshold < config.stop_threshold)
        throw config_error("admit_threshold must be >= stop_threshold");

    bool has_negative = false;
    bool has_positive = false;
    for (const Review* r : reviews) {
        if (r->score == 1) has_negative = true;
        if (r->score == 5) has_positive = true;
    }
    if (!has_negative || !has_positive)
        throw domain_error("lexicon expansion needs both score-1 and score-5 reviews");

    ExpansionOutcome outcome;
    outcome.lexicon = seeds;

    SideState neg_state;
    SideState pos_state;
    std::unordered_set<std::string> rejected;

    for (uint32_t it = 1; it <= config.max_iterations; ++it) {
        bool any_eligible = false;
        uint64_t admitted = 0;
        admitted += expand_side(reviews, outcome.lexicon, Side::Negative, it, config, judge,
                                neg_state, rejected, any_eligible, outcome.judged);
        uint64_t admitted_neg = admitted;
        admitted += expand_side(reviews, outcome.lexicon, Side::Positive, it, config, judge,
                                pos_state, rejected, any_eligible, outcome.judged);
        outcome.admitted_negative += admitted_neg;
        outcome.admitted_positive += admitted - admitted_neg;
        outcome.iterations = it;
        if (!any_eligible || admitted == 0) break;
    }
    return outcome;
}

PolarityScore polarity(const std::vector<std::string>& tokens, const EmotionLexicon& lex) {
    PolarityScore score;
    for (const std::string& t : tokens) {
        auto it = lex.words.find(t);
        if (it == lex.words.end()) continue;
        if (it->second.side == Side::Positive)
            ++score.p;
        else
            ++score.n;
    }
    uint64_t total = score.p + score.n;
    score.e_n = total == 0
                    ? 0.0
                    : (static_cast<double>(score.p) - static_cast<double>(score.n)) /
                          static_cast<double>(total);
    return score;
}

namespace {

std::string side_name(Side side) { return side == Side::Positive ? "pos" : "neg"; }

Side parse_side(const std::string& s, const std::string& context) {
    if (s == "pos") return Side::Positive;
    if (s == "neg") return Side::Negative;
    throw io_error("bad side '" + s + "' in " + context + " (expected pos|neg)");
}

std::string origin_name(WordOrigin o) {
    switch (o) {
        case WordOrigin::Seed: return "seed";
        case WordOrigin::Expanded: return "expanded";
        case WordOrigin::Imported: return "imported";
    }
    return "seed";
}

WordOrigin parse_origin(const std::string& s, const std::string& context) {
    if (s == "seed") return WordOrigin::Seed;
    if (s == "expanded") return WordOrigin::Expanded;
    if (s == "imported") return WordOrigin::Imported;
    throw io_error("bad origin '" + s + "' in " + context);
}

std::vector<std::string> split_tab(const std::string& line) {
    std::vector<std::string> fields;
    size_t start = 0;
    for (;;) {
        size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

bool skippable(const std::string& line) {
    size_t a = line.find_first_not_of(" \t");
    return a == std::string::npos || line[a] == '#';
}

}  // namespace

EmotionLexicon load_seeds(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open seed file: " + path);
    EmotionLexicon lex;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skippable(line)) continue;
        std::vector<std::string> f = split_tab(line);
        if (f.size() != 2 || f[0].empty())
            throw io_error("bad seed line " + std::to_string(lineno) + " in " + path);
        LexiconEntry entry;
        entry.side = parse_side(f[1], path + " line " + std::to_string(lineno));
        entry.origin = WordOrigin::Seed;
        lex.add(f[0], entry);
    }
    return lex;
}

void save_lexicon(const std::string& path, const EmotionLexicon& lex) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot write lexicon file: " + path);
    out << "# word\tside\torigin\titeration\tratio\n";
    // Negative side first, then positive, alphabetical inside each.
    for (Side side : {Side::Negative, Side::Positive}) {
        for (const auto& [w, e] : lex.words) {
            if (e.side != side) continue;
            out << w << '\t' << side_name(e.side) << '\t' << origin_name(e.origin) << '\t'
                << e.iteration << '\t';
            if (e.has_ratio) {
                std::ostringstream r;
                r.precision(17);
                r << e.ratio;
                out << r.str();
            } else {
                out << '-';
            }
            out << '\n';
        }
    }
    if (!out) throw io_error("write failure on lexicon file: " + path);
}

EmotionLexicon load_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open lexicon file: " + path);
    EmotionLexicon lex;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skippable(line)) continue;
        std::vector<std::string> f = split_tab(line);
        std::string context = path + " line " + std::to_string(lineno);
        if (f.size() != 5 || f[0].empty()) throw io_error("bad lexicon line in " + context);
        LexiconEntry entry;
        entry.side = parse_side(f[1], context);
        entry.origin = parse_origin(f[2], context);
        try {
            entry.iteration = static_cast<uint32_t>(std::stoul(f[3]));
        } catch (const std::exception&) {
            throw io_error("bad iteration in " + context);
        }
        if (f[4] != "-") {
            try {
                entry.ratio = std::stod(f[4]);
                entry.has_ratio = true;
            } catch (const std::exception&) {
                throw io_error("bad ratio in " + context);
            }
        }
        lex.add(f[0], entry);
    }
    return lex;
}

EmotionLexicon import_word_lists(const std::string& negative_path,
                                 const std::string& positive_path) {
    EmotionLexicon lex;
    auto import_side = [&lex](const std::string& path, Side side) {
        std::ifstream in(path);
        if (!in) throw io_error("cannot open word list: " + path);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (skippable(line)) continue;
            size_t a = line.find_first_not_of(" \t");
            size_t b = line.find_last_not_of(" \t");
            LexiconEntry entry;
            entry.side = side;
            entry.origin = WordOrigin::Imported;
            lex.add(line.substr(a, b - a + 1), entry);
        }
    };
    import_side(negative_path, Side::Negative);
    import_side(positive_path, Side::Positive);
    return lex;
}

}  // namespace revrank
