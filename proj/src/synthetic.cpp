#include "synthetic.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <vector>

#include "embedding.hpp"
#include "errors.hpp"
#include "lexicon.hpp"

namespace revrank {

using nlohmann::json;

namespace {

std::string two_digits(size_t n) {
    std::string s = std::to_string(n);
    return s.size() < 2 ? "0" + s : s;
}

std::string four_digits(size_t n) {
    std::string s = std::to_string(n);
    while (s.size() < 4) s = "0" + s;
    return s;
}

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot write fixture file: " + path);
    return out;
}

void write_review(std::ofstream& out, const std::string& id, int score,
                  const std::vector<std::string>& tokens, const std::string& category,
                  const std::string& product_id) {
    json j;
    j["category"] = category;
    j["id"] = id;
    j["product_id"] = product_id;
    j["score"] = score;
    j["text"] = join(tokens);
    out << j.dump() << '\n';
}

std::string path_join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

json manifest(const std::string& kind, const std::string& out_dir, uint64_t seed,
              std::vector<std::string> files, size_t reviews) {
    json j;
    j["kind"] = kind;
    j["out_dir"] = out_dir;
    j["seed"] = seed;
    j["files"] = files;
    j["reviews"] = reviews;
    return j;
}

void write_config(const std::string& out_dir, const std::vector<std::string>& lines) {
    std::ofstream out = open_out(path_join(out_dir, "config.toml"));
    for (const std::string& line : lines) out << line << '\n';
}

// ---- kind = lexicon ----
//
// 1,000 negative and 1,000 positive reviews of 7 tokens each. Every normal
// negative review holds two distinct negative seeds and one planted negative-
// context word, mirrored on the positive side, with shared sentiment-neutral
// fillers. Ten contamination rows per side give every odd-numbered planted
// word exactly one cross-side co-occurrence, so planted ratios stay near 100
// or 50 while fillers stay near 1.
std::string generate_lexicon_fixture(const std::string& out_dir, uint64_t seed) {
    constexpr size_t kSideCount = 1000;
    constexpr size_t kSeeds = 10;
    constexpr size_t kPlanted = 20;
    constexpr size_t kFillers = 40;

    std::ofstream reviews = open_out(path_join(out_dir, "reviews.jsonl"));
    for (size_t i = 0; i < kSideCount; ++i) {
        std::vector<std::string> tokens = {
            "nseed" + std::to_string(i % kSeeds),
            "nseed" + std::to_string((i + 3) % kSeeds),
            "nplant" + two_digits(i % kPlanted),
            "filler" + two_digits(i % kFillers),
            "filler" + two_digits((i + 7) % kFillers),
            "filler" + two_digits((i + 13) % kFillers),
            "filler" + two_digits((i + 21) % kFillers),
        };
        // Contamination row for odd planted word k sits at index 37k.
        for (size_t k = 1; k < kPlanted; k += 2) {
            if (i == 37 * k) tokens[1] = "pplant" + two_digits(k);
        }
        write_review(reviews, "n" + four_digits(i), 1, tokens, "", "");
    }
    for (size_t i = 0; i < kSideCount; ++i) {
        std::vector<std::string> tokens = {
            "pseed" + std::to_string(i % kSeeds),
            "pseed" + std::to_string((i + 3) % kSeeds),
            "pplant" + two_digits(i % kPlanted),
            "filler" + two_digits((i + 1) % kFillers),
            "filler" + two_digits((i + 8) % kFillers),
            "filler" + two_digits((i + 14) % kFillers),
            "filler" + two_digits((i + 22) % kFillers),
        };
        for (size_t k = 1; k < kPlanted; k += 2) {
            if (i == 37 * k) tokens[1] = "nplant" + two_digits(k);
        }
        write_review(reviews, "p" + four_digits(i), 5, tokens, "", "");
    }
    reviews.close();

    {
        std::ofstream seeds_out = open_out(path_join(out_dir, "seeds.tsv"));
        for (size_t s = 0; s < kSeeds; ++s) seeds_out << "nseed" << s << "\tneg\n";
        for (size_t s = 0; s < kSeeds; ++s) seeds_out << "pseed" << s << "\tpos\n";
    }

    {
        json expected;
        std::vector<std::string> neg_planted;
        std::vector<std::string> pos_planted;
        for (size_t k = 0; k < kPlanted; ++k) {
            neg_planted.push_back("nplant" + two_digits(k));
            pos_planted.push_back("pplant" + two_digits(k));
        }
        expected["negative_planted"] = neg_planted;
        expected["positive_planted"] = pos_planted;
        std::ofstream out = open_out(path_join(out_dir, "expected.json"));
        out << expected.dump(2) << '\n';
    }

    write_config(out_dir, {
                              "[paths]",
                              "corpus = \"" + path_join(out_dir, "corpus.jsonl") + "\"",
                              "seeds = \"" + path_join(out_dir, "seeds.tsv") + "\"",
                              "lexicon = \"" + path_join(out_dir, "lexicon.tsv") + "\"",
                          });

    return manifest("lexicon", out_dir, seed,
                    {"reviews.jsonl", "seeds.tsv", "expected.json", "config.toml"},
                    2 * kSideCount)
        .dump();
}

// ---- kind = ranking ----
//
// 24-dimensional one-hot vocabulary. Per attribute topic i:
//   r{i}best: topic word plus five synonyms, all on axis i: c_s = 1, neutral.
//   r{i}dist: topic word three times plus eleven off-axis fillers:
//              c_s = 3/sqrt(20), neutral, but the BM25 term-frequency winner.
//   r{i}x0/x1/x2: one on-axis synonym, one emotion word, three off-axis
//              fillers: c_s = 1/sqrt(5) with polarity -1 / +1 / -1.
// The shipped annotations make GloVe_Sigmoid/phone = 36/50 = 0.72 and
// BM25/phone = 32/50 = 0.64.
std::string generate_ranking_fixture(const std::string& out_dir, uint64_t seed) {
    constexpr size_t kAttributes = 10;
    constexpr size_t kDim = 24;
    constexpr size_t kDistFillers = 11;  // dims 10..20
    const std::vector<std::string> annotators = {"e0", "e1", "e2", "e3", "e4"};

    EmbeddingTable table;
    table.dim = kDim;
    auto axis = [&](size_t d) {
        std::vector<double> v(kDim, 0.0);
        v[d] = 1.0;
        return v;
    };
    for (size_t i = 0; i < kAttributes; ++i) {
        table.vectors.emplace("topic" + two_digits(i), axis(i));
        for (size_t j = 0; j < 5; ++j)
            table.vectors.emplace("near" + two_digits(i) + std::to_string(j), axis(i));
        table.vectors.emplace("xsyn" + two_digits(i), axis(i));
    }
    for (size_t j = 0; j < kDistFillers; ++j)
        table.vectors.emplace("dfill" + two_digits(j), axis(10 + j));
    table.vectors.emplace("xfill0", axis(21));
    table.vectors.emplace("xfill1", axis(22));
    table.vectors.emplace("xfill2", axis(23));
    table.vectors.emplace("negword", axis(20));
    table.vectors.emplace("posword", axis(20));
    save_table(path_join(out_dir, "vectors.txt"), table);

    {
        EmotionLexicon lex;
        LexiconEntry neg;
        neg.side = Side::Negative;
        LexiconEntry pos;
        pos.side = Side::Positive;
        lex.add("negword", neg);
        lex.add("posword", pos);
        save_lexicon(path_join(out_dir, "lexicon.tsv"), lex);
    }

    std::ofstream reviews = open_out(path_join(out_dir, "reviews.jsonl"));
    for (size_t i = 0; i < kAttributes; ++i) {
        std::string ii = two_digits(i);
        std::string topic = "topic" + ii;
        std::string product = "p" + ii;

        std::vector<std::string> best = {topic};
        for (size_t j = 0; j < 5; ++j) best.push_back("near" + ii + std::to_string(j));
        write_review(reviews, "r" + ii + "best", 1, best, "phone", product);

        std::vector<std::string> dist = {topic, topic, topic};
        for (size_t j = 0; j < kDistFillers; ++j) dist.push_back("dfill" + two_digits(j));
        write_review(reviews, "r" + ii + "dist", 1, dist, "phone", product);

        const char* emotions[3] = {"negword", "posword", "negword"};
        for (size_t x = 0; x < 3; ++x) {
            std::vector<std::string> tokens = {"xsyn" + ii, emotions[x], "xfill0", "xfill1",
                                               "xfill2"};
            write_review(reviews, "r" + ii + "x" + std::to_string(x), 1, tokens, "phone",
                         product);
        }
    }
    reviews.close();

    {
        std::ofstream attrs = open_out(path_join(out_dir, "attributes.txt"));
        for (size_t i = 0; i < kAttributes; ++i) attrs << "topic" << two_digits(i) << '\n';
    }

    {
        // 36 of the 50 marks on the embedding winners are helpful; 32 of the
        // 50 on the term-frequency winners.
        std::ofstream ann = open_out(path_join(out_dir, "annotations.csv"));
        ann << "attribute,annotator,review_id,helpful\n";
        for (size_t i = 0; i < kAttributes; ++i) {
            std::string ii = two_digits(i);
            for (size_t a = 0; a < annotators.size(); ++a) {
                bool best_helpful = i < 7 || (i == 7 && a == 0);
                ann << "topic" << ii << ',' << annotators[a] << ",r" << ii << "best,"
                    << (best_helpful ? 1 : 0) << '\n';
                bool dist_helpful = i < 6 || (i == 6 && a < 2);
                ann << "topic" << ii << ',' << annotators[a] << ",r" << ii << "dist,"
                    << (dist_helpful ? 1 : 0) << '\n';
            }
        }
    }

    {
        // Identical expert orders; the consensus is the same list.
        std::ofstream gold = open_out(path_join(out_dir, "gold.csv"));
        gold << "attribute,annotator,rank,review_id\n";
        for (size_t i = 0; i < kAttributes; ++i) {
            std::string ii = two_digits(i);
            const std::string order[5] = {"r" + ii + "best", "r" + ii + "dist",
                                          "r" + ii + "x1", "r" + ii + "x0", "r" + ii + "x2"};
            for (const std::string& coder : {"g0", "g1", "g2"}) {
                for (size_t rank_pos = 0; rank_pos < 5; ++rank_pos)
                    gold << "topic" << ii << ',' << coder << ',' << rank_pos + 1 << ','
                         << order[rank_pos] << '\n';
            }
        }
    }

    {
        json expected;
        json embed_top1 = json::object();
        json bm25_top1 = json::object();
        for (size_t i = 0; i < kAttributes; ++i) {
            std::string ii = two_digits(i);
            embed_top1["topic" + ii] = "r" + ii + "best";
            bm25_top1["topic" + ii] = "r" + ii + "dist";
        }
        expected["embed_top1"] = embed_top1;
        expected["bm25_top1"] = bm25_top1;
        expected["helpfulness"] = {{"GloVe_Sigmoid", 0.72}, {"BM25", 0.64}};
        std::ofstream out = open_out(path_join(out_dir, "expected.json"));
        out << expected.dump(2) << '\n';
    }

    write_config(out_dir, {
                              "[paths]",
                              "corpus = \"" + path_join(out_dir, "corpus.jsonl") + "\"",
                              "lexicon = \"" + path_join(out_dir, "lexicon.tsv") + "\"",
                              "vectors = \"" + path_join(out_dir, "vectors.txt") + "\"",
                              "index = \"" + path_join(out_dir, "index.bin") + "\"",
                              "annotations = \"" + path_join(out_dir, "annotations.csv") + "\"",
                              "gold = \"" + path_join(out_dir, "gold.csv") + "\"",
                          });

    return manifest("ranking", out_dir, seed,
                    {"reviews.jsonl", "vectors.txt", "lexicon.tsv", "attributes.txt",
                     "annotations.csv", "gold.csv", "expected.json", "config.toml"},
                    kAttributes * 5)
        .dump();
}

// ---- kind = train ----
//
// Two twin words substituted into the same slot of identical sentence
// templates, plus unrelated filler noise, so the twins end up with matching
// co-occurrence rows. Repetition counts vary by template; a flat count
// could be fitted by the bias terms alone, leaving the vectors untrained.
std::string generate_train_fixture(const std::string& out_dir, uint64_t seed) {
    constexpr size_t kTemplates = 15;
    constexpr size_t kFillerReviews = 40;
    constexpr size_t kFillerPool = 30;

    std::ofstream reviews = open_out(path_join(out_dir, "reviews.jsonl"));
    size_t next_id = 0;
    for (size_t t = 0; t < kTemplates; ++t) {
        std::string tt = std::to_string(t);
        size_t reps = 2 + 3 * (t % 5);
        for (size_t rep = 0; rep < reps; ++rep) {
            for (const char* twin : {"twina", "twinb"}) {
                std::vector<std::string> tokens = {"ctx" + tt + "a", "ctx" + tt + "b", twin,
                                                   "ctx" + tt + "c", "ctx" + tt + "d",
                                                   "ctx" + tt + "e"};
                write_review(reviews, "t" + four_digits(next_id++), 1, tokens, "", "");
            }
        }
    }
    std::mt19937_64 rng(seed);
    for (size_t i = 0; i < kFillerReviews; ++i) {
        std::vector<std::string> tokens;
        for (size_t j = 0; j < 6; ++j)
            tokens.push_back("w" + two_digits(static_cast<size_t>(rng() % kFillerPool)));
        write_review(reviews, "t" + four_digits(next_id++), 1, tokens, "", "");
    }
    reviews.close();

    {
        json expected;
        expected["twins"] = {"twina", "twinb"};
        std::ofstream out = open_out(path_join(out_dir, "expected.json"));
        out << expected.dump(2) << '\n';
    }

    write_config(out_dir, {
                              "[paths]",
                              "corpus = \"" + path_join(out_dir, "corpus.jsonl") + "\"",
                              "vectors = \"" + path_join(out_dir, "vectors.txt") + "\"",
                              "[train]",
                              "dim = 16",
                              "window = 5",
                              "iterations = 150",
                              "learning_rate = 0.05",
                              "seed = 7",
                          });

    return manifest("train", out_dir, seed, {"reviews.jsonl", "expected.json", "config.toml"},
                    next_id)
        .dump();
}

}  // namespace

std::string generate_synthetic(const std::string& kind, const std::string& out_dir,
                               uint64_t seed) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw io_error("cannot create fixture directory " + out_dir + ": " + ec.message());
    if (kind == "lexicon") return generate_lexicon_fixture(out_dir, seed);
    if (kind == "ranking") return generate_ranking_fixture(out_dir, seed);
    if (kind == "train") return generate_train_fixture(out_dir, seed);
    throw config_error("unknown fixture kind '" + kind + "' (expected lexicon|ranking|train)");
}

}  // namespace revrank
