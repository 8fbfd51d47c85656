#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "lexicon.hpp"
#include "pipeline.hpp"
#include "synthetic.hpp"
#include "temp_dir.hpp"

using namespace revrank;
using nlohmann::json;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Io;
}

std::string message_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    FAIL("expected an error");
    return "";
}

std::vector<json> parse_jsonl(const std::string& text) {
    std::vector<json> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(json::parse(line));
    return lines;
}

}  // namespace

TEST_CASE("commands refuse to start without their configured paths") {
    PipelineConfig cfg;

    CHECK(kind_of([&] { run_ingest(cfg, "input.jsonl"); }) == ErrorKind::Config);
    CHECK(message_of([&] { run_ingest(cfg, "input.jsonl"); }).find("paths.corpus") !=
          std::string::npos);

    cfg.paths.corpus = "store.jsonl";
    CHECK(message_of([&] { run_build_lexicon(cfg, nullptr); }).find("paths.seeds") !=
          std::string::npos);
    cfg.paths.seeds = "seeds.tsv";
    CHECK(message_of([&] { run_build_lexicon(cfg, nullptr); }).find("paths.lexicon") !=
          std::string::npos);

    CHECK(message_of([&] { run_train_embeddings(cfg); }).find("paths.vectors") !=
          std::string::npos);
    CHECK(message_of([&] { run_validate_embeddings(cfg); }).find("paths.vectors") !=
          std::string::npos);
    CHECK(message_of([&] { run_build_index(cfg); }).find("paths.index") != std::string::npos);

    CHECK(message_of([&] { run_evaluate(cfg, "BM25"); }).find("paths.annotations") !=
          std::string::npos);
}

TEST_CASE("evaluate method list is parsed before any file is touched") {
    PipelineConfig cfg;
    cfg.paths.corpus = "store.jsonl";  // never opened for these failures
    cfg.paths.annotations = "ann.csv";

    CHECK(kind_of([&] { run_evaluate(cfg, ""); }) == ErrorKind::Config);
    CHECK(kind_of([&] { run_evaluate(cfg, " , ,"); }) == ErrorKind::Config);
    CHECK(kind_of([&] { run_evaluate(cfg, "warp_drive"); }) == ErrorKind::Config);
}

TEST_CASE("ranking fixture runs end to end") {
    TempDir tmp;
    std::string dir = tmp.file("fix");
    json manifest = json::parse(generate_synthetic("ranking", dir, 42));
    CHECK(manifest["kind"] == "ranking");
    CHECK(manifest["reviews"] == 50);

    PipelineConfig cfg = load_config(dir + "/config.toml");
    json ingested = json::parse(run_ingest(cfg, dir + "/reviews.jsonl"));
    CHECK(ingested["total_ingested"] == 50);
    CHECK(ingested["kept"] == 50);
    CHECK(ingested["malformed"] == 0);
    CHECK(ingested["dropped_short"] == 0);
    CHECK(ingested["dropped_nonnegative"] == 0);

    json indexed = json::parse(run_build_index(cfg));
    CHECK(indexed["docs"] == 50);
    CHECK(std::filesystem::exists(cfg.paths.index));

    SUBCASE("default method and default depth come from the config") {
        std::vector<json> lines = parse_jsonl(run_rank(cfg, "topic00", "", SIZE_MAX));
        REQUIRE(lines.size() == cfg.top_k);
        CHECK(lines[0]["method"] == "GloVe_Sigmoid");
        CHECK(lines[0]["attribute"] == "topic00");
        CHECK(lines[0]["rank"] == 1);
        CHECK(lines[0]["review_id"] == "r00best");
        CHECK(lines[0].contains("c_s"));
        CHECK(lines[1]["rank"] == 2);
    }

    SUBCASE("explicit method and depth override the config") {
        std::vector<json> lines = parse_jsonl(run_rank(cfg, "topic03", "bm25", 1));
        REQUIRE(lines.size() == 1);
        CHECK(lines[0]["method"] == "BM25");
        CHECK(lines[0]["review_id"] == "r03dist");
        CHECK_FALSE(lines[0].contains("c_s"));
    }

    SUBCASE("bad inputs map to the right error kinds") {
        CHECK(kind_of([&] { run_rank(cfg, "topic00", "warp_drive", 1); }) == ErrorKind::Config);
        CHECK(kind_of([&] { run_rank(cfg, "unknownword", "glove", 1); }) == ErrorKind::Domain);
        PipelineConfig broken = cfg;
        broken.paths.vectors.clear();
        CHECK(message_of([&] {
                  run_rank(broken, "topic00", "glove_sigmoid", 1);
              }).find("paths.vectors") != std::string::npos);
        broken = cfg;
        broken.paths.index.clear();
        CHECK(message_of([&] { run_rank(broken, "topic00", "bm25", 1); }).find("paths.index") !=
              std::string::npos);
    }

    SUBCASE("evaluate reproduces the fixture's designed rates") {
        EvaluateOutput out = run_evaluate(cfg, "GloVe_Sigmoid,BM25");
        json report = json::parse(out.report_json);

        CHECK(report["helpfulness"]["GloVe_Sigmoid"]["phone"]["rate"] == 0.72);
        CHECK(report["helpfulness"]["GloVe_Sigmoid"]["phone"]["helpful"] == 36);
        CHECK(report["helpfulness"]["GloVe_Sigmoid"]["phone"]["total"] == 50);
        CHECK(report["helpfulness"]["BM25"]["phone"]["rate"] == 0.64);
        CHECK(report["helpfulness"]["BM25"]["phone"]["helpful"] == 32);

        CHECK(report["top_n_rate"]["GloVe_Sigmoid"]["1"] == 1.0);
        CHECK(report["top_n_rate"]["BM25"]["1"] == 0.0);
        CHECK(report["average_correct_rate"]["GloVe_Sigmoid"] == 1.0);
        CHECK(report["average_correct_rate"]["BM25"].get<double>() == doctest::Approx(0.8));
        CHECK(report["coverage_gaps"].empty());

        CHECK(out.table.find("method") != std::string::npos);
        CHECK(out.table.find("phone") != std::string::npos);
        CHECK(out.table.find("0.72") != std::string::npos);
        CHECK(out.table.find("0.64") != std::string::npos);
    }
}

TEST_CASE("lexicon fixture expands to the planted vocabulary") {
    TempDir tmp;
    std::string dir = tmp.file("fix");
    generate_synthetic("lexicon", dir, 7);
    PipelineConfig cfg = load_config(dir + "/config.toml");

    json ingested = json::parse(run_ingest(cfg, dir + "/reviews.jsonl"));
    CHECK(ingested["total_ingested"] == 2000);
    CHECK(ingested["kept"] == 1000);                 // the negative half
    CHECK(ingested["dropped_nonnegative"] == 1000);  // stored for lexicon work

    json built = json::parse(run_build_lexicon(cfg, nullptr));
    CHECK(built["admitted_negative"] == 20);
    CHECK(built["admitted_positive"] == 20);
    CHECK(built["negative"] == 30);  // 10 seeds + 20 planted
    CHECK(built["positive"] == 30);
    CHECK(built["judged"] == 0);
    CHECK(built["iterations"] == 2);

    EmotionLexicon lex = load_lexicon(cfg.paths.lexicon);
    REQUIRE(lex.contains("nplant07"));
    CHECK(lex.words.at("nplant07").side == Side::Negative);
    CHECK(lex.words.at("nplant07").origin == WordOrigin::Expanded);
    REQUIRE(lex.contains("pseed3"));
    CHECK(lex.words.at("pseed3").origin == WordOrigin::Seed);

    SUBCASE("accept-all judging lands on the same lexicon") {
        PipelineConfig judged_cfg = cfg;
        judged_cfg.paths.lexicon = tmp.file("judged.tsv");
        JudgeFn accept_all = [](const std::string&, Side, double, uint64_t, uint64_t) {
            return Judgment::Accept;
        };
        json built2 = json::parse(run_build_lexicon(judged_cfg, accept_all));
        CHECK(built2["judged"].get<uint64_t>() > 0);
        EmotionLexicon manual = load_lexicon(judged_cfg.paths.lexicon);
        CHECK(manual.side_words(Side::Negative) == lex.side_words(Side::Negative));
        CHECK(manual.side_words(Side::Positive) == lex.side_words(Side::Positive));
    }
}

TEST_CASE("train fixture trains and validates") {
    TempDir tmp;
    std::string dir = tmp.file("fix");
    generate_synthetic("train", dir, 42);
    PipelineConfig cfg = load_config(dir + "/config.toml");
    CHECK(cfg.train.dim == 16);
    CHECK(cfg.train.iterations == 150);

    run_ingest(cfg, dir + "/reviews.jsonl");
    json trained = json::parse(run_train_embeddings(cfg));
    CHECK(trained["dim"] == 16);
    size_t vocab = trained["vocab_size"].get<size_t>();
    CHECK(vocab >= 97);  // 75 context words, 2 twins, most of the 30 fillers
    CHECK(vocab <= 107);
    CHECK(trained["final_loss"].get<double>() < trained["initial_loss"].get<double>());

    json validated = json::parse(run_validate_embeddings(cfg));
    CHECK(validated["vocab_size"] == vocab);
    CHECK(validated["dim"] == 16);
    CHECK(validated["duplicates"] == 0);
}

TEST_CASE("unknown fixture kind is rejected") {
    TempDir tmp;
    CHECK(kind_of([&] { generate_synthetic("cake", tmp.file("fix"), 1); }) == ErrorKind::Config);
}
