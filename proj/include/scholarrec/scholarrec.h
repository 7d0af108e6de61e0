/*
 * Copyright 2026 The scholarrec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * scholarrec C API.
 *
 * Every fallible call returns an sr_status. On failure a human-readable
 * message is available from sr_last_error() on the calling thread until the
 * next failing call on that thread. Objects are opaque handles released with
 * their matching *_free function; strings returned through char** out
 * parameters are released with sr_string_free(). Loaded handles are
 * immutable and may be shared across threads for read-only calls.
 */
#ifndef SCHOLARREC_H
#define SCHOLARREC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SCHOLARREC_BUILDING)
#    define SR_API __declspec(dllexport)
#  else
#    define SR_API __declspec(dllimport)
#  endif
#else
#  define SR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sr_status {
  SR_OK = 0,
  SR_ERR_INVALID_ARGUMENT = 1,
  SR_ERR_PARSE = 2,
  SR_ERR_NOT_FOUND = 3,
  SR_ERR_NO_TEXT = 4,
  SR_ERR_IO = 5,
  SR_ERR_FORMAT = 6,
  SR_ERR_INTERNAL = 7
} sr_status;

typedef enum sr_engine {
  SR_ENGINE_CITATION = 1,
  SR_ENGINE_USAGE = 2
} sr_engine;

typedef struct sr_corpus sr_corpus;
typedef struct sr_index sr_index;
typedef struct sr_vector_store sr_vector_store;
typedef struct sr_workspace sr_workspace;
typedef struct sr_rec_list sr_rec_list;
typedef struct sr_service sr_service;

SR_API const char* sr_version(void);
SR_API const char* sr_last_error(void);
SR_API const char* sr_status_name(sr_status status);
SR_API void sr_string_free(char* s);

/* ---- corpus ------------------------------------------------------------ */

/* Validates the article file (and optional usage CSV, may be NULL), writes
 * canonical copies plus manifest.json into out_dir. manifest_json may be
 * NULL; otherwise it receives the manifest text. */
SR_API sr_status sr_ingest(const char* articles_path, const char* usage_path,
                           const char* out_dir, char** manifest_json);

SR_API sr_status sr_corpus_load(const char* articles_path, const char* usage_path,
                                sr_corpus** out);
/* Loads articles.jsonl and (if present) usage.csv from a data directory. */
SR_API sr_status sr_corpus_open(const char* data_dir, sr_corpus** out);
SR_API void sr_corpus_free(sr_corpus* corpus);
SR_API size_t sr_corpus_article_count(const sr_corpus* corpus);
SR_API uint64_t sr_corpus_fingerprint(const sr_corpus* corpus);
/* Sparsity of the citation matrix, or of the session matrix at `window`. */
SR_API sr_status sr_corpus_sparsity(const sr_corpus* corpus, sr_engine engine, int64_t window,
                                    double* out);

/* ---- similarity indices ------------------------------------------------ */

typedef struct sr_index_params {
  size_t k;                /* neighbourhood size; 0 = unlimited */
  size_t min_cooccurrence; /* usage only; citation indices use 1 */
  int64_t window;          /* usage session gap in seconds */
} sr_index_params;

SR_API void sr_index_params_default(sr_engine engine, sr_index_params* params);
SR_API sr_status sr_index_build(const sr_corpus* corpus, sr_engine engine,
                                const sr_index_params* params, sr_index** out);
SR_API sr_status sr_index_save(const sr_index* index, const char* path);
SR_API sr_status sr_index_load(const char* path, sr_index** out);
SR_API void sr_index_free(sr_index* index);
SR_API sr_engine sr_index_engine(const sr_index* index);
SR_API size_t sr_index_size(const sr_index* index);

/* Citation engine: profile = the seed's references. Usage engine: the seed
 * alone. corpus may be NULL for the usage engine. */
SR_API sr_status sr_recommend(const sr_index* index, const sr_corpus* corpus, const char* seed,
                              size_t n, sr_rec_list** out);
SR_API size_t sr_rec_list_size(const sr_rec_list* list);
SR_API const char* sr_rec_list_article(const sr_rec_list* list, size_t i);
SR_API double sr_rec_list_score(const sr_rec_list* list, size_t i);
SR_API size_t sr_rec_list_rank(const sr_rec_list* list, size_t i);
SR_API void sr_rec_list_free(sr_rec_list* list);

/* ---- semantic map -------------------------------------------------------- */

typedef struct sr_map_params {
  size_t dimension;    /* d */
  size_t seed_entries; /* s: non-zeros per random index vector, even */
  uint64_t rng_seed;
} sr_map_params;

SR_API void sr_map_params_default(sr_map_params* params);
SR_API sr_status sr_map_build(const sr_corpus* corpus, const sr_map_params* params,
                              sr_vector_store** out);
SR_API sr_status sr_vector_store_save(const sr_vector_store* store, const char* path);
SR_API sr_status sr_vector_store_load(const char* path, sr_vector_store** out);
SR_API void sr_vector_store_free(sr_vector_store* store);
/* Writes the pairwise similarity CSV over journals that have text. */
SR_API sr_status sr_map_export_csv(const sr_vector_store* store, const char* path);
SR_API sr_status sr_journal_similarity(const sr_vector_store* store, const char* a,
                                       const char* b, double* out);

/* ---- workspace: corpus + indices + vectors from one data directory ------ */

SR_API sr_status sr_workspace_open(const char* data_dir, sr_workspace** out);
SR_API void sr_workspace_free(sr_workspace* ws);
/* Same JSON bodies the HTTP service returns for /recommend, /compare and
 * /journals/similarity. */
SR_API sr_status sr_workspace_recommend_json(const sr_workspace* ws, const char* seed,
                                             sr_engine engine, size_t n, char** json);
SR_API sr_status sr_workspace_compare_json(const sr_workspace* ws, const char* seed, size_t n,
                                           char** json);
SR_API sr_status sr_workspace_journal_similarity_json(const sr_workspace* ws, const char* a,
                                                      const char* b, char** json);

/* ---- evaluation ---------------------------------------------------------- */

typedef struct sr_topn_params {
  size_t k;       /* neighbourhood size used when re-scoring; 0 = unlimited */
  size_t n_max;   /* recommendations requested per trial, >= 10 */
  int rotate_all; /* non-zero: remove every reference in turn */
} sr_topn_params;

SR_API void sr_topn_params_default(sr_topn_params* params);
SR_API sr_status sr_evaluate_topn(const sr_corpus* corpus, const char* const* seeds,
                                  size_t seed_count, const sr_topn_params* params, char** json);

/* Runs citation (A) vs usage (B) over the seeds and writes report.json and
 * per_seed.csv into out_dir. The workspace must hold both indices and the
 * vector store. report_json may be NULL. */
SR_API sr_status sr_evaluate_comparison(const sr_workspace* ws, const char* const* seeds,
                                        size_t seed_count, size_t n, const char* out_dir,
                                        char** report_json);

/* ---- synthetic data ------------------------------------------------------ */

typedef struct sr_fixture_params {
  size_t topics;
  size_t journals_per_topic;
  size_t articles;
  uint64_t rng_seed;
} sr_fixture_params;

SR_API void sr_fixture_params_default(sr_fixture_params* params);
/* Writes articles.jsonl, usage.csv and seeds.txt into out_dir. */
SR_API sr_status sr_generate_fixture(const sr_fixture_params* params, const char* out_dir);

/* ---- HTTP service -------------------------------------------------------- */

typedef struct sr_service_config {
  const char* host;        /* NULL = 127.0.0.1 */
  int port;                /* 0 = any free port */
  const char* data_dir;
  size_t default_n;        /* 0 = 10 */
  const char* cors_origin; /* NULL = "*" */
} sr_service_config;

SR_API sr_status sr_service_create(const sr_service_config* config, sr_service** out);
/* Binds and starts serving; artifacts load in the background (503 until
 * ready). Returns once the socket is bound. */
SR_API sr_status sr_service_start(sr_service* service);
SR_API int sr_service_port(const sr_service* service);
/* Answers a request target ("/path?query") in-process, without a socket. */
SR_API sr_status sr_service_handle(const sr_service* service, const char* target, int* http_status,
                                   char** body);
SR_API void sr_service_wait(sr_service* service);
SR_API void sr_service_stop(sr_service* service);
SR_API void sr_service_free(sr_service* service);

#ifdef __cplusplus
}
#endif

#endif /* SCHOLARREC_H */
