#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "errors.hpp"
#include "index.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

using namespace revrank;

namespace {

Review make_review(std::string id, std::vector<std::string> tokens, int score = 1) {
    Review r;
    r.id = std::move(id);
    r.score = score;
    r.tokens = std::move(tokens);
    return r;
}

std::vector<const Review*> as_ptrs(const std::vector<Review>& reviews) {
    std::vector<const Review*> out;
    for (const auto& r : reviews) out.push_back(&r);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("index postings and lengths match a hand count") {
    std::vector<Review> reviews = {
        make_review("d1", {"cold", "tea", "cold"}),
        make_review("d2", {"tea", "pot"}),
        make_review("d3", {"pot"}),
        make_review("skip", {"tea"}, 5),  // wrong partition
    };
    InvertedIndex index = build_index(as_ptrs(reviews));
    CHECK(index.doc_count() == 3);
    CHECK(index.doc_ids == std::vector<std::string>{"d1", "d2", "d3"});
    CHECK(index.doc_lens == std::vector<uint64_t>{3, 2, 1});
    CHECK(index.avg_doc_len == doctest::Approx(2.0).epsilon(1e-15));
    REQUIRE(index.postings.count("cold") == 1);
    REQUIRE(index.postings.at("cold").size() == 1);
    CHECK(index.postings.at("cold")[0].doc == 0);
    CHECK(index.postings.at("cold")[0].tf == 2);
    REQUIRE(index.postings.at("tea").size() == 2);
    CHECK(index.postings.at("tea")[0].doc == 0);
    CHECK(index.postings.at("tea")[1].doc == 1);
    CHECK(index.postings.size() == 3);
}

TEST_CASE("index of a single five-token review") {
    std::vector<Review> reviews = {make_review("d1", {"a", "b", "c", "d", "e"})};
    InvertedIndex index = build_index(as_ptrs(reviews));
    CHECK(index.avg_doc_len == 5.0);
    CHECK(index.doc_count() == 1);
}

TEST_CASE("index requires a non-empty negative partition") {
    std::vector<Review> reviews = {make_review("d1", {"a"}, 5)};
    CHECK_THROWS_AS((void)build_index(as_ptrs(reviews)), Error);
    CHECK_THROWS_AS((void)build_index({}), Error);
}

TEST_CASE("index file round-trips and is byte-stable") {
    TempDir dir;
    std::vector<Review> reviews = {
        make_review("d1", {"cold", "tea", "cold"}),
        make_review("d2", {"tea", "pot"}),
    };
    InvertedIndex index = build_index(as_ptrs(reviews));
    std::string p1 = dir.file("a.bin");
    std::string p2 = dir.file("b.bin");
    save_index(p1, index);
    InvertedIndex back = load_index(p1);
    CHECK(back.doc_ids == index.doc_ids);
    CHECK(back.doc_lens == index.doc_lens);
    CHECK(back.avg_doc_len == index.avg_doc_len);
    REQUIRE(back.postings.size() == index.postings.size());
    for (const auto& [term, postings] : index.postings) {
        REQUIRE(back.postings.count(term) == 1);
        const auto& other = back.postings.at(term);
        REQUIRE(other.size() == postings.size());
        for (size_t i = 0; i < postings.size(); ++i) {
            CHECK(other[i].doc == postings[i].doc);
            CHECK(other[i].tf == postings[i].tf);
        }
    }
    save_index(p2, back);
    CHECK(read_file(p1) == read_file(p2));
}

TEST_CASE("index loader rejects corrupt files") {
    TempDir dir;
    CHECK_THROWS_AS((void)load_index(dir.file("absent.bin")), Error);
    CHECK_THROWS_AS((void)load_index(dir.write("junk.bin", "not an index at all")), Error);

    std::vector<Review> reviews = {make_review("d1", {"a", "b"})};
    std::string good = dir.file("good.bin");
    save_index(good, build_index(as_ptrs(reviews)));
    std::string bytes = read_file(good);

    // Truncation anywhere in the tail must be caught.
    CHECK_THROWS_AS((void)load_index(dir.write("trunc.bin", bytes.substr(0, bytes.size() - 3))),
                    Error);
    // Bad version byte.
    std::string wrong_version = bytes;
    wrong_version[4] = 99;
    CHECK_THROWS_AS((void)load_index(dir.write("vers.bin", wrong_version)), Error);
    try {
        (void)load_index(dir.write("vers2.bin", wrong_version));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Io);
    }
}

TEST_CASE("bm25 parameters are validated") {
    std::vector<Review> reviews = {make_review("d1", {"a", "b", "c"})};
    InvertedIndex index = build_index(as_ptrs(reviews));
    CHECK_THROWS_AS((void)bm25_score({"a"}, "d1", index, {0.0, 0.75}), Error);
    CHECK_THROWS_AS((void)bm25_score({"a"}, "d1", index, {1.2, -0.1}), Error);
    CHECK_THROWS_AS((void)bm25_score({"a"}, "d1", index, {1.2, 1.1}), Error);
    CHECK_THROWS_AS((void)bm25_score({"a"}, "zzz", index, {1.2, 0.75}), Error);
}

TEST_CASE("bm25 single-document score equals the closed form") {
    std::vector<Review> reviews = {make_review("d1", {"tea", "tea", "pot"})};
    InvertedIndex index = build_index(as_ptrs(reviews));
    Bm25Params params;  // k1=1.2 b=0.75
    // N=1, df=1: idf = ln(0.5/1.5 + 1) = ln(4/3). tf=2, len=3=avg.
    double idf = std::log(4.0 / 3.0);
    double tf_part = (2.0 * 2.2) / (2.0 + 1.2);
    CHECK(bm25_score({"tea"}, "d1", index, params) ==
          doctest::Approx(idf * tf_part).epsilon(1e-12));
    // Absent term contributes zero.
    CHECK(bm25_score({"coffee"}, "d1", index, params) == 0.0);
    CHECK(bm25_score({"tea", "coffee"}, "d1", index, params) ==
          doctest::Approx(idf * tf_part).epsilon(1e-12));
    // Duplicate query tokens count twice.
    CHECK(bm25_score({"tea", "tea"}, "d1", index, params) ==
          doctest::Approx(2.0 * idf * tf_part).epsilon(1e-12));
}

TEST_CASE("bm25 idf is never negative") {
    for (uint64_t n : {1ull, 2ull, 10ull, 1000ull}) {
        for (uint64_t df = 0; df <= n; ++df) {
            CHECK(bm25_idf(n, df) >= 0.0);
        }
    }
}

TEST_CASE("bm25 engine matches the naive oracle on randomized corpora") {
    std::mt19937_64 rng(2718);
    std::vector<std::string> vocab;
    for (int i = 0; i < 25; ++i) vocab.push_back("w" + std::to_string(i));
    for (int corpus = 0; corpus < 30; ++corpus) {
        std::vector<Review> reviews;
        size_t docs = 1 + rng() % 40;
        for (size_t d = 0; d < docs; ++d) {
            std::vector<std::string> tokens;
            size_t n = 1 + rng() % 12;
            for (size_t j = 0; j < n; ++j) tokens.push_back(vocab[rng() % vocab.size()]);
            reviews.push_back(make_review("d" + std::to_string(d), tokens));
        }
        InvertedIndex index = build_index(as_ptrs(reviews));
        Bm25Params params{1.2, 0.75};
        std::vector<std::string> query;
        size_t qn = 1 + rng() % 3;
        for (size_t j = 0; j < qn; ++j) query.push_back(vocab[rng() % vocab.size()]);

        for (const auto& r : reviews) {
            CHECK(bm25_score(query, r.id, index, params) ==
                  doctest::Approx(oracle::bm25_score(query, r.id, reviews, params.k1, params.b))
                      .epsilon(1e-9));
        }
        auto engine = bm25_topk(query, index, params, docs);
        auto naive = oracle::bm25_rank(query, reviews, params.k1, params.b, docs);
        REQUIRE(engine.size() == naive.size());
        for (size_t i = 0; i < engine.size(); ++i) {
            CHECK(engine[i].first == naive[i].id);
            CHECK(engine[i].second == doctest::Approx(naive[i].score).epsilon(1e-9));
        }
    }
}

TEST_CASE("bm25 topk breaks ties by ascending id and truncates") {
    std::vector<Review> reviews = {
        make_review("zed", {"tea"}),
        make_review("ann", {"tea"}),
        make_review("mid", {"tea"}),
        make_review("off", {"pot"}),
    };
    InvertedIndex index = build_index(as_ptrs(reviews));
    auto top = bm25_topk({"tea"}, index, Bm25Params{}, 10);
    REQUIRE(top.size() == 3);  // "off" matches nothing
    CHECK(top[0].first == "ann");
    CHECK(top[1].first == "mid");
    CHECK(top[2].first == "zed");
    CHECK(bm25_topk({"tea"}, index, Bm25Params{}, 2).size() == 2);
    CHECK(bm25_topk({"tea"}, index, Bm25Params{}, 0).empty());
    CHECK(bm25_topk({"absent"}, index, Bm25Params{}, 5).empty());
}
