#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <json.hpp>
#include <string>
#include <vector>

#include "revrank.h"
#include "temp_dir.hpp"

using nlohmann::json;

namespace {

// RAII wrapper so failed REQUIREs cannot leak sessions.
struct Session {
    revrank_session* s = nullptr;
    Session() { REQUIRE(revrank_session_new(&s) == REVRANK_OK); }
    ~Session() { revrank_session_free(s); }
    operator revrank_session*() const { return s; }
};

std::string take(char* str) {
    REQUIRE(str != nullptr);
    std::string out = str;
    revrank_string_free(str);
    return out;
}

revrank_judgment accept_all(const char*, int, double, uint64_t, uint64_t, void* user) {
    if (user) ++*static_cast<uint64_t*>(user);
    return REVRANK_JUDGE_ACCEPT;
}

revrank_judgment out_of_range(const char*, int, double, uint64_t, uint64_t, void*) {
    return static_cast<revrank_judgment>(99);
}

}  // namespace

TEST_CASE("version and session lifecycle") {
    CHECK(std::strcmp(revrank_version(), "0.1.0") == 0);

    CHECK(revrank_session_new(nullptr) == REVRANK_ERR_INVALID);
    CHECK(std::strcmp(revrank_last_error(nullptr), "null session") == 0);

    Session s;
    CHECK(std::strcmp(revrank_last_error(s), "") == 0);  // never NULL, starts empty
    revrank_session_free(nullptr);                       // must be a no-op
}

TEST_CASE("null arguments are rejected as invalid") {
    Session s;
    CHECK(revrank_session_load_config(nullptr, "x") == REVRANK_ERR_INVALID);
    CHECK(revrank_session_load_config(s, nullptr) == REVRANK_ERR_INVALID);
    CHECK(std::string(revrank_last_error(s)) == "null config path");

    CHECK(revrank_session_set(s, nullptr, "1") == REVRANK_ERR_INVALID);
    CHECK(revrank_session_set(s, "bm25.k1", nullptr) == REVRANK_ERR_INVALID);
    char* out = nullptr;
    CHECK(revrank_ingest(s, nullptr, &out) == REVRANK_ERR_INVALID);
    CHECK(revrank_rank(s, nullptr, "bm25", 1, &out) == REVRANK_ERR_INVALID);
    CHECK(revrank_evaluate(s, nullptr, &out, nullptr) == REVRANK_ERR_INVALID);
    CHECK(revrank_generate_synthetic(s, nullptr, "d", 1, &out) == REVRANK_ERR_INVALID);
    CHECK(out == nullptr);
}

TEST_CASE("statuses mirror the error kinds") {
    TempDir tmp;
    Session s;

    CHECK(revrank_session_load_config(s, tmp.file("absent.toml").c_str()) == REVRANK_ERR_IO);
    CHECK(std::string(revrank_last_error(s)).find("cannot open config file") !=
          std::string::npos);

    CHECK(revrank_session_set(s, "bm25.k1", "-1") == REVRANK_ERR_CONFIG);
    CHECK(std::string(revrank_last_error(s)).find("bm25.k1") != std::string::npos);
    CHECK(revrank_session_set(s, "sectionless", "x") == REVRANK_ERR_CONFIG);

    char* out = nullptr;
    CHECK(revrank_rank(s, "battery", "bm25", 1, &out) == REVRANK_ERR_CONFIG);
    CHECK(std::string(revrank_last_error(s)).find("paths.corpus") != std::string::npos);
    CHECK(out == nullptr);

    // a successful call clears the error slot
    CHECK(revrank_session_set(s, "bm25.k1", "1.5") == REVRANK_OK);
    CHECK(std::strcmp(revrank_last_error(s), "") == 0);
}

TEST_CASE("ranking fixture drives the whole surface") {
    TempDir tmp;
    std::string dir = tmp.file("fix");
    Session s;

    char* out = nullptr;
    REQUIRE(revrank_generate_synthetic(s, "ranking", dir.c_str(), 42, &out) == REVRANK_OK);
    json manifest = json::parse(take(out));
    CHECK(manifest["kind"] == "ranking");

    REQUIRE(revrank_session_load_config(s, (dir + "/config.toml").c_str()) == REVRANK_OK);
    REQUIRE(revrank_ingest(s, (dir + "/reviews.jsonl").c_str(), &out) == REVRANK_OK);
    json stats = json::parse(take(out));
    CHECK(stats["kept"] == 50);

    REQUIRE(revrank_build_index(s, &out) == REVRANK_OK);
    CHECK(json::parse(take(out))["docs"] == 50);

    REQUIRE(revrank_validate_embeddings(s, &out) == REVRANK_OK);
    CHECK(json::parse(take(out))["duplicates"] == 0);

    SUBCASE("rank with NULL method uses the configured default") {
        REQUIRE(revrank_rank(s, "topic00", nullptr, SIZE_MAX, &out) == REVRANK_OK);
        std::string jsonl = take(out);
        json first = json::parse(jsonl.substr(0, jsonl.find('\n')));
        CHECK(first["method"] == "GloVe_Sigmoid");
        CHECK(first["review_id"] == "r00best");
        size_t lines = 0;
        for (char c : jsonl)
            if (c == '\n') ++lines;
        CHECK(lines == 10);  // configured top_k default
    }

    SUBCASE("rank accepts an explicit method and a NULL sink") {
        REQUIRE(revrank_rank(s, "topic04", "bm25", 2, &out) == REVRANK_OK);
        std::string jsonl = take(out);
        json first = json::parse(jsonl.substr(0, jsonl.find('\n')));
        CHECK(first["method"] == "BM25");
        CHECK(first["review_id"] == "r04dist");
        CHECK(revrank_rank(s, "topic04", "bm25", 2, nullptr) == REVRANK_OK);
    }

    SUBCASE("unknown attribute is a domain error") {
        out = nullptr;
        CHECK(revrank_rank(s, "nosuchtopic", "glove", 1, &out) == REVRANK_ERR_DOMAIN);
        CHECK(out == nullptr);
        CHECK(std::string(revrank_last_error(s)).find("nosuchtopic") != std::string::npos);
    }

    SUBCASE("evaluate fills both payloads, table optional") {
        char* report = nullptr;
        char* table = nullptr;
        REQUIRE(revrank_evaluate(s, "GloVe_Sigmoid,BM25", &report, &table) == REVRANK_OK);
        json j = json::parse(take(report));
        CHECK(j["helpfulness"]["GloVe_Sigmoid"]["phone"]["rate"] == 0.72);
        CHECK(j["helpfulness"]["BM25"]["phone"]["rate"] == 0.64);
        std::string table_text = take(table);
        CHECK(table_text.find("0.72") != std::string::npos);

        REQUIRE(revrank_evaluate(s, "BM25", &report, nullptr) == REVRANK_OK);
        CHECK(json::parse(take(report))["methods"] == json::array({"BM25"}));
    }
}

TEST_CASE("lexicon judge callback round-trips through C") {
    TempDir tmp;
    std::string dir = tmp.file("fix");
    Session s;

    char* out = nullptr;
    REQUIRE(revrank_generate_synthetic(s, "lexicon", dir.c_str(), 7, nullptr) == REVRANK_OK);
    REQUIRE(revrank_session_load_config(s, (dir + "/config.toml").c_str()) == REVRANK_OK);
    REQUIRE(revrank_ingest(s, (dir + "/reviews.jsonl").c_str(), nullptr) == REVRANK_OK);

    REQUIRE(revrank_build_lexicon(s, nullptr, nullptr, &out) == REVRANK_OK);
    json auto_summary = json::parse(take(out));
    CHECK(auto_summary["judged"] == 0);
    CHECK(auto_summary["admitted_negative"] == 20);
    CHECK(auto_summary["admitted_positive"] == 20);

    uint64_t calls = 0;
    REQUIRE(revrank_session_set(s, "paths.lexicon", tmp.file("judged.tsv").c_str()) ==
            REVRANK_OK);
    REQUIRE(revrank_build_lexicon(s, accept_all, &calls, &out) == REVRANK_OK);
    json judged_summary = json::parse(take(out));
    CHECK(judged_summary["judged"] == calls);
    CHECK(calls == 40);
    CHECK(judged_summary["negative"] == auto_summary["negative"]);
    CHECK(judged_summary["positive"] == auto_summary["positive"]);

    out = nullptr;
    CHECK(revrank_build_lexicon(s, out_of_range, nullptr, &out) == REVRANK_ERR_CONFIG);
    CHECK(out == nullptr);
    CHECK(std::string(revrank_last_error(s)).find("invalid judgment") != std::string::npos);
}
