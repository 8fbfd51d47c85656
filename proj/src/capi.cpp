#include "revrank.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "pipeline.hpp"
#include "synthetic.hpp"

struct revrank_session {
    revrank::PipelineConfig config;
    std::string last_error;
};

namespace {

revrank_status status_of(revrank::ErrorKind kind) {
    switch (kind) {
        case revrank::ErrorKind::Io: return REVRANK_ERR_IO;
        case revrank::ErrorKind::Config: return REVRANK_ERR_CONFIG;
        case revrank::ErrorKind::Domain: return REVRANK_ERR_DOMAIN;
    }
    return REVRANK_ERR_INTERNAL;
}

// Run fn inside the exception wall; fn returns a status itself so handlers
// can succeed with non-throwing validation too.
template <typename Fn>
revrank_status guarded(revrank_session* s, Fn&& fn) noexcept {
    if (!s) return REVRANK_ERR_INVALID;
    s->last_error.clear();
    try {
        return fn();
    } catch (const revrank::Error& e) {
        s->last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        s->last_error = "out of memory";
        return REVRANK_ERR_INTERNAL;
    } catch (const std::exception& e) {
        s->last_error = e.what();
        return REVRANK_ERR_INTERNAL;
    } catch (...) {
        s->last_error = "unknown internal error";
        return REVRANK_ERR_INTERNAL;
    }
}

// Copy into a malloc'd buffer released by revrank_string_free.
char* dup_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

revrank_status store_result(revrank_session* s, const std::string& text, char** out) {
    if (!out) return REVRANK_OK;  // caller does not want the payload
    *out = dup_string(text);
    if (!*out) {
        s->last_error = "out of memory";
        return REVRANK_ERR_INTERNAL;
    }
    return REVRANK_OK;
}

revrank_status invalid_arg(revrank_session* s, const char* msg) {
    if (s) s->last_error = msg;
    return REVRANK_ERR_INVALID;
}

}  // namespace

extern "C" {

const char* revrank_version(void) { return "0.1.0"; }

revrank_status revrank_session_new(revrank_session** out) {
    if (!out) return REVRANK_ERR_INVALID;
    *out = new (std::nothrow) revrank_session();
    return *out ? REVRANK_OK : REVRANK_ERR_INTERNAL;
}

void revrank_session_free(revrank_session* s) { delete s; }

const char* revrank_last_error(const revrank_session* s) {
    if (!s) return "null session";
    return s->last_error.c_str();
}

revrank_status revrank_session_load_config(revrank_session* s, const char* path) {
    return guarded(s, [&]() -> revrank_status {
        if (!path) return invalid_arg(s, "null config path");
        revrank::merge_config(s->config, path);
        return REVRANK_OK;
    });
}

revrank_status revrank_session_set(revrank_session* s, const char* key, const char* value) {
    return guarded(s, [&]() -> revrank_status {
        if (!key || !value) return invalid_arg(s, "null config key or value");
        revrank::set_value(s->config, key, value);
        return REVRANK_OK;
    });
}

revrank_status revrank_ingest(revrank_session* s, const char* input_path, char** stats_json) {
    return guarded(s, [&]() -> revrank_status {
        if (!input_path) return invalid_arg(s, "null input path");
        return store_result(s, revrank::run_ingest(s->config, input_path), stats_json);
    });
}

revrank_status revrank_build_lexicon(revrank_session* s, revrank_judge_fn judge, void* user,
                                     char** summary_json) {
    return guarded(s, [&]() -> revrank_status {
        revrank::JudgeFn wrapped;
        if (judge) {
            wrapped = [judge, user](const std::string& word, revrank::Side side, double ratio,
                                    uint64_t n_n, uint64_t n_p) {
                revrank_judgment verdict =
                    judge(word.c_str(), side == revrank::Side::Negative ? 1 : 0, ratio, n_n,
                          n_p, user);
                switch (verdict) {
                    case REVRANK_JUDGE_ACCEPT: return revrank::Judgment::Accept;
                    case REVRANK_JUDGE_REJECT: return revrank::Judgment::Reject;
                    case REVRANK_JUDGE_DEFER: return revrank::Judgment::Defer;
                }
                throw revrank::config_error("judge callback returned an invalid judgment");
            };
        }
        return store_result(s, revrank::run_build_lexicon(s->config, wrapped), summary_json);
    });
}

revrank_status revrank_train_embeddings(revrank_session* s, char** summary_json) {
    return guarded(s, [&]() -> revrank_status {
        return store_result(s, revrank::run_train_embeddings(s->config), summary_json);
    });
}

revrank_status revrank_validate_embeddings(revrank_session* s, char** summary_json) {
    return guarded(s, [&]() -> revrank_status {
        return store_result(s, revrank::run_validate_embeddings(s->config), summary_json);
    });
}

revrank_status revrank_build_index(revrank_session* s, char** summary_json) {
    return guarded(s, [&]() -> revrank_status {
        return store_result(s, revrank::run_build_index(s->config), summary_json);
    });
}

revrank_status revrank_rank(revrank_session* s, const char* attribute, const char* method,
                            size_t top_k, char** jsonl) {
    return guarded(s, [&]() -> revrank_status {
        if (!attribute) return invalid_arg(s, "null attribute");
        std::string method_name = method ? method : "";
        return store_result(s, revrank::run_rank(s->config, attribute, method_name, top_k),
                            jsonl);
    });
}

revrank_status revrank_evaluate(revrank_session* s, const char* methods_csv, char** report_json,
                                char** table_text) {
    return guarded(s, [&]() -> revrank_status {
        if (!methods_csv) return invalid_arg(s, "null methods list");
        revrank::EvaluateOutput out = revrank::run_evaluate(s->config, methods_csv);
        revrank_status st = store_result(s, out.report_json, report_json);
        if (st != REVRANK_OK) return st;
        st = store_result(s, out.table, table_text);
        if (st != REVRANK_OK && report_json && *report_json) {
            std::free(*report_json);
            *report_json = nullptr;
        }
        return st;
    });
}

revrank_status revrank_generate_synthetic(revrank_session* s, const char* kind,
                                          const char* out_dir, uint64_t seed,
                                          char** summary_json) {
    return guarded(s, [&]() -> revrank_status {
        if (!kind || !out_dir) return invalid_arg(s, "null fixture kind or output directory");
        return store_result(s, revrank::generate_synthetic(kind, out_dir, seed), summary_json);
    });
}

void revrank_string_free(char* str) { std::free(str); }

}  // extern "C"
