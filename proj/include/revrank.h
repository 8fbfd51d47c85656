#ifndef REVRANK_H
#define REVRANK_H

/*
 * revrank -- negative-review ranking library.
 *
 * C interface over the C++ core. All functions return a revrank_status;
 * REVRANK_OK means success. On failure, revrank_last_error() returns a
 * human-readable message for the last failing call on that session.
 * Strings returned through char** out-parameters are heap-allocated and
 * must be released with revrank_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#ifndef REVRANK_API
#  if defined(_WIN32) && defined(REVRANK_BUILD)
#    define REVRANK_API __declspec(dllexport)
#  elif defined(REVRANK_BUILD)
#    define REVRANK_API __attribute__((visibility("default")))
#  else
#    define REVRANK_API
#  endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum revrank_status {
    REVRANK_OK = 0,
    REVRANK_ERR_IO = 1,      /* unreadable/corrupt file, serialization mismatch */
    REVRANK_ERR_CONFIG = 2,  /* bad configuration, unknown names, bad usage */
    REVRANK_ERR_DOMAIN = 3,  /* contract violation on data (e.g. OOV attribute) */
    REVRANK_ERR_INVALID = 4, /* null handle / bad argument to the C API itself */
    REVRANK_ERR_INTERNAL = 10
} revrank_status;

/* Opaque session: holds the pipeline configuration and the error slot.
 * Sessions are not thread-safe; use one per thread. */
typedef struct revrank_session revrank_session;

REVRANK_API const char* revrank_version(void);

REVRANK_API revrank_status revrank_session_new(revrank_session** out);
REVRANK_API void revrank_session_free(revrank_session* s);

/* Message for the last failing call on this session. Owned by the session;
 * valid until the next call on it. Never NULL. */
REVRANK_API const char* revrank_last_error(const revrank_session* s);

/* Load a config file (flat TOML-style sections). Later loads merge over
 * earlier values. */
REVRANK_API revrank_status revrank_session_load_config(revrank_session* s,
                                                       const char* path);

/* Override one config value by dotted key, e.g. "paths.corpus" or
 * "corpus.min_len". */
REVRANK_API revrank_status revrank_session_set(revrank_session* s,
                                               const char* key,
                                               const char* value);

/* Clean, tokenize, filter and append reviews from a JSONL file to the
 * configured corpus store. *stats_json receives the ingest counters. */
REVRANK_API revrank_status revrank_ingest(revrank_session* s,
                                          const char* input_path,
                                          char** stats_json);

/* Candidate judgment for interactive lexicon expansion. */
typedef enum revrank_judgment {
    REVRANK_JUDGE_ACCEPT = 0,
    REVRANK_JUDGE_REJECT = 1,
    REVRANK_JUDGE_DEFER = 2
} revrank_judgment;

/* Called once per candidate; negative_side is 1 when judging for the
 * negative lexicon. Return the judgment. */
typedef revrank_judgment (*revrank_judge_fn)(const char* word,
                                             int negative_side,
                                             double ratio,
                                             uint64_t n_n,
                                             uint64_t n_p,
                                             void* user);

/* Expand the configured seed lexicon against the corpus store and write
 * the result to the configured lexicon path. judge == NULL selects auto
 * mode (threshold admission). */
REVRANK_API revrank_status revrank_build_lexicon(revrank_session* s,
                                                 revrank_judge_fn judge,
                                                 void* user,
                                                 char** summary_json);

/* Fit desk-scale embeddings on the corpus store and write them to the
 * configured vectors path. */
REVRANK_API revrank_status revrank_train_embeddings(revrank_session* s,
                                                    char** summary_json);

/* Parse and validate the configured vectors file without ranking. */
REVRANK_API revrank_status revrank_validate_embeddings(revrank_session* s,
                                                       char** summary_json);

/* Build the inverted index over the negative partition and write it to the
 * configured index path. */
REVRANK_API revrank_status revrank_build_index(revrank_session* s,
                                               char** summary_json);

/* Rank the corpus for an attribute query. method is one of: bm25, glove,
 * glove_sigmoid, glove_isigmoid, glove_msigmoid, glove_imsigmoid
 * (case-insensitive); NULL or "" selects the configured default.
 * *jsonl receives one JSON object per returned entry, newline-separated. */
REVRANK_API revrank_status revrank_rank(revrank_session* s,
                                        const char* attribute,
                                        const char* method,
                                        size_t top_k,
                                        char** jsonl);

/* Run the configured annotation files against a comma-separated method
 * list. *report_json receives the metric report; *table_text (optional,
 * may be NULL) receives the aligned methods-by-categories table. */
REVRANK_API revrank_status revrank_evaluate(revrank_session* s,
                                            const char* methods_csv,
                                            char** report_json,
                                            char** table_text);

/* Write a deterministic synthetic fixture ("lexicon", "ranking" or
 * "train") into out_dir. *summary_json receives the file manifest. */
REVRANK_API revrank_status revrank_generate_synthetic(revrank_session* s,
                                                      const char* kind,
                                                      const char* out_dir,
                                                      uint64_t seed,
                                                      char** summary_json);

REVRANK_API void revrank_string_free(char* str);

#ifdef __cplusplus
}
#endif

#endif /* REVRANK_H */
