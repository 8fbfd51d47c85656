// revrank command line tool. Talks to the library strictly through the
// public C interface so it doubles as a smoke test for that surface.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "revrank.h"

namespace {

int exit_code_for(revrank_status st) {
    switch (st) {
        case REVRANK_OK: return 0;
        case REVRANK_ERR_IO: return 1;
        case REVRANK_ERR_CONFIG: return 2;
        case REVRANK_ERR_DOMAIN: return 3;
        case REVRANK_ERR_INVALID: return 2;
        case REVRANK_ERR_INTERNAL: return 1;
    }
    return 1;
}

void print_payload(const char* text, std::FILE* stream) {
    if (!text || !*text) return;
    std::fputs(text, stream);
    size_t len = std::strlen(text);
    if (text[len - 1] != '\n') std::fputc('\n', stream);
}

int fail(revrank_session* session, revrank_status st) {
    std::fprintf(stderr, "error: %s\n", revrank_last_error(session));
    return exit_code_for(st);
}

struct JudgeState {
    bool eof = false;  // once stdin closes, defer everything left
};

revrank_judgment interactive_judge(const char* word, int negative_side, double ratio,
                                   uint64_t n_n, uint64_t n_p, void* user) {
    JudgeState* state = static_cast<JudgeState*>(user);
    if (state->eof) return REVRANK_JUDGE_DEFER;
    for (;;) {
        std::fprintf(stderr, "candidate [%s] %s ratio=%.4f (neg=%llu pos=%llu) accept/reject/defer [a/r/d]? ",
                     negative_side ? "neg" : "pos", word, ratio,
                     static_cast<unsigned long long>(n_n),
                     static_cast<unsigned long long>(n_p));
        std::string line;
        if (!std::getline(std::cin, line)) {
            state->eof = true;
            std::fprintf(stderr, "\n(stdin closed; deferring remaining candidates)\n");
            return REVRANK_JUDGE_DEFER;
        }
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        switch (line[pos]) {
            case 'a': case 'A': return REVRANK_JUDGE_ACCEPT;
            case 'r': case 'R': return REVRANK_JUDGE_REJECT;
            case 'd': case 'D': return REVRANK_JUDGE_DEFER;
            default: std::fprintf(stderr, "please answer a, r or d\n");
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"revrank: rank negative product reviews for attribute queries"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("-c,--config", config_path,
                   "Config file (falls back to REVRANK_CONFIG)");
    app.add_option("--set", overrides, "Override a config value, e.g. --set bm25.k1=1.5")
        ->take_all();

    std::string ingest_input;
    CLI::App* cmd_ingest = app.add_subcommand("ingest", "Append reviews from a JSONL file");
    cmd_ingest->add_option("input", ingest_input, "Input JSONL file")->required();

    bool interactive = false;
    CLI::App* cmd_lexicon =
        app.add_subcommand("lexicon", "Expand the seed lexicon against the corpus");
    cmd_lexicon->add_flag("-i,--interactive", interactive,
                          "Judge each candidate on stdin instead of auto-admitting");

    CLI::App* cmd_train =
        app.add_subcommand("train-embeddings", "Fit desk-scale embeddings on the corpus");
    CLI::App* cmd_load =
        app.add_subcommand("load-embeddings", "Validate the configured vectors file");
    CLI::App* cmd_index =
        app.add_subcommand("index", "Build the inverted index over negative reviews");

    std::string attribute;
    std::string method;
    uint64_t top_k = UINT64_MAX;
    CLI::App* cmd_rank = app.add_subcommand("rank", "Rank reviews for an attribute query");
    cmd_rank->add_option("-a,--attribute", attribute, "Attribute query text")->required();
    cmd_rank->add_option("-m,--method", method,
                         "bm25, glove, glove_sigmoid, glove_isigmoid, glove_msigmoid, "
                         "glove_imsigmoid (default: configured)");
    cmd_rank->add_option("-t,--top", top_k, "Result count (default: configured)");

    std::string methods_csv;
    std::string table_out;
    CLI::App* cmd_evaluate =
        app.add_subcommand("evaluate", "Score methods against annotations");
    cmd_evaluate->add_option("-m,--methods", methods_csv, "Comma-separated method list")
        ->required();
    cmd_evaluate->add_option("--table-out", table_out, "Also write the summary table here");

    std::string synth_kind;
    std::string synth_out;
    uint64_t synth_seed = 42;
    CLI::App* cmd_synth =
        app.add_subcommand("gen-synthetic", "Write a deterministic test fixture");
    cmd_synth->add_option("-k,--kind", synth_kind, "lexicon, ranking or train")->required();
    cmd_synth->add_option("-o,--out", synth_out, "Output directory")->required();
    cmd_synth->add_option("-s,--seed", synth_seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    revrank_session* session = nullptr;
    if (revrank_session_new(&session) != REVRANK_OK || !session) {
        std::fprintf(stderr, "error: cannot create session\n");
        return 1;
    }

    revrank_status st = REVRANK_OK;
    if (config_path.empty()) {
        const char* env = std::getenv("REVRANK_CONFIG");
        if (env && *env) config_path = env;
    }
    if (config_path.empty() && !cmd_synth->parsed()) {
        std::fprintf(stderr, "error: no config file (use --config or REVRANK_CONFIG)\n");
        revrank_session_free(session);
        return 2;
    }
    if (!config_path.empty()) {
        st = revrank_session_load_config(session, config_path.c_str());
        if (st != REVRANK_OK) {
            int code = fail(session, st);
            revrank_session_free(session);
            return code;
        }
    }
    for (const std::string& kv : overrides) {
        size_t eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
            revrank_session_free(session);
            return 2;
        }
        st = revrank_session_set(session, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
        if (st != REVRANK_OK) {
            int code = fail(session, st);
            revrank_session_free(session);
            return code;
        }
    }

    char* payload = nullptr;
    char* table = nullptr;
    int code = 0;

    if (cmd_ingest->parsed()) {
        st = revrank_ingest(session, ingest_input.c_str(), &payload);
        if (st == REVRANK_OK) print_payload(payload, stdout);
    } else if (cmd_lexicon->parsed()) {
        JudgeState judge_state;
        st = revrank_build_lexicon(session, interactive ? interactive_judge : nullptr,
                                   interactive ? &judge_state : nullptr, &payload);
        if (st == REVRANK_OK) print_payload(payload, stdout);
    } else if (cmd_train->parsed()) {
        st = revrank_train_embeddings(session, &payload);
        if (st == REVRANK_OK) print_payload(payload, stdout);
    } else if (cmd_load->parsed()) {
        st = revrank_validate_embeddings(session, &payload);
        if (st == REVRANK_OK) print_payload(payload, stdout);
    } else if (cmd_index->parsed()) {
        st = revrank_build_index(session, &payload);
        if (st == REVRANK_OK) print_payload(payload, stdout);
    } else if (cmd_rank->parsed()) {
        st = revrank_rank(session, attribute.c_str(), method.empty() ? nullptr : method.c_str(),
                          static_cast<size_t>(top_k), &payload);
        if (st == REVRANK_OK) print_payload(payload, stdout);
    } else if (cmd_evaluate->parsed()) {
        st = revrank_evaluate(session, methods_csv.c_str(), &payload, &table);
        if (st == REVRANK_OK) {
            print_payload(payload, stdout);
            print_payload(table, stderr);
            if (!table_out.empty()) {
                std::ofstream out(table_out);
                if (!out) {
                    std::fprintf(stderr, "error: cannot write table to %s\n", table_out.c_str());
                    code = 1;
                } else if (table) {
                    out << table;
                }
            }
        }
    } else if (cmd_synth->parsed()) {
        st = revrank_generate_synthetic(session, synth_kind.c_str(), synth_out.c_str(),
                                        synth_seed, &payload);
        if (st == REVRANK_OK) print_payload(payload, stdout);
    }

    if (st != REVRANK_OK) code = fail(session, st);
    revrank_string_free(payload);
    revrank_string_free(table);
    revrank_session_free(session);
    return code;
}
