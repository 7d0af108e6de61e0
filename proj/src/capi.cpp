// Copyright 2026 The scholarrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scholarrec/scholarrec.h"

#include "citation_recommender.hpp"
#include "evaluation.hpp"
#include "fixture.hpp"
#include "semantic_map.hpp"
#include "service.hpp"
#include "usage_recommender.hpp"
#include "workspace.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

using namespace scholarrec;

struct sr_corpus {
  Corpus corpus;
};
struct sr_index {
  ItemSimilarityIndex index;
};
struct sr_vector_store {
  JournalVectorStore store;
};
struct sr_workspace {
  Workspace ws;
};
struct sr_rec_list {
  RecommendationList recs;
};
struct sr_service {
  std::unique_ptr<HttpService> http;
};

namespace {

thread_local std::string g_last_error;

sr_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return SR_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return SR_ERR_PARSE;
    case ErrorCode::NotFound: return SR_ERR_NOT_FOUND;
    case ErrorCode::NoText: return SR_ERR_NO_TEXT;
    case ErrorCode::Io: return SR_ERR_IO;
    case ErrorCode::Format: return SR_ERR_FORMAT;
  }
  return SR_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into a status and the thread-local
// message. Nothing may unwind across the C boundary.
template <typename Fn>
sr_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return SR_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return SR_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<ArticleId> seed_vector(const char* const* seeds, std::size_t count) {
  require(seeds != nullptr || count == 0, "seeds is NULL");
  std::vector<ArticleId> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    require(seeds[i] != nullptr, "NULL seed id");
    out.emplace_back(seeds[i]);
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
}

}  // namespace

extern "C" {

const char* sr_version(void) { return "1.0.0"; }

const char* sr_last_error(void) { return g_last_error.c_str(); }

const char* sr_status_name(sr_status status) {
  switch (status) {
    case SR_OK: return "ok";
    case SR_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SR_ERR_PARSE: return "parse_error";
    case SR_ERR_NOT_FOUND: return "not_found";
    case SR_ERR_NO_TEXT: return "no_text";
    case SR_ERR_IO: return "io_error";
    case SR_ERR_FORMAT: return "format_error";
    case SR_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

void sr_string_free(char* s) { std::free(s); }

sr_status sr_ingest(const char* articles_path, const char* usage_path, const char* out_dir,
                    char** manifest_json) {
  return guarded([&] {
    require(articles_path && out_dir, "articles_path and out_dir are required");
    std::optional<std::filesystem::path> usage;
    if (usage_path) usage = usage_path;
    const Corpus corpus = ingest(articles_path, usage, out_dir);
    if (manifest_json) *manifest_json = dup_string(scholarrec::manifest_json(corpus));
  });
}

sr_status sr_corpus_load(const char* articles_path, const char* usage_path, sr_corpus** out) {
  return guarded([&] {
    require(articles_path && out, "articles_path and out are required");
    auto articles = load_articles(articles_path);
    std::vector<UsageEvent> usage;
    if (usage_path) usage = load_usage(usage_path);
    *out = new sr_corpus{Corpus(std::move(articles), std::move(usage))};
  });
}

sr_status sr_corpus_open(const char* data_dir, sr_corpus** out) {
  return guarded([&] {
    require(data_dir && out, "data_dir and out are required");
    *out = new sr_corpus{load_corpus_dir(data_dir)};
  });
}

void sr_corpus_free(sr_corpus* corpus) { delete corpus; }

size_t sr_corpus_article_count(const sr_corpus* corpus) {
  return corpus ? corpus->corpus.articles().size() : 0;
}

uint64_t sr_corpus_fingerprint(const sr_corpus* corpus) {
  return corpus ? corpus->corpus.fingerprint() : 0;
}

sr_status sr_corpus_sparsity(const sr_corpus* corpus, sr_engine engine, int64_t window,
                             double* out) {
  return guarded([&] {
    require(corpus && out, "corpus and out are required");
    if (engine == SR_ENGINE_CITATION) {
      *out = sparsity(build_citation_matrix(corpus->corpus));
    } else {
      require(engine == SR_ENGINE_USAGE, "unknown engine");
      *out = sparsity(sessionize(corpus->corpus.usage(), window));
    }
  });
}

void sr_index_params_default(sr_engine engine, sr_index_params* params) {
  if (!params) return;
  params->k = kDefaultNeighborhood;
  params->min_cooccurrence = engine == SR_ENGINE_USAGE ? kDefaultMinCooccurrence : 1;
  params->window = kDefaultSessionWindow;
}

sr_status sr_index_build(const sr_corpus* corpus, sr_engine engine, const sr_index_params* params,
                         sr_index** out) {
  return guarded([&] {
    require(corpus && out, "corpus and out are required");
    sr_index_params p;
    sr_index_params_default(engine, &p);
    if (params) p = *params;
    if (engine == SR_ENGINE_CITATION) {
      *out = new sr_index{build_citation_index(corpus->corpus, p.k)};
    } else {
      require(engine == SR_ENGINE_USAGE, "unknown engine");
      *out = new sr_index{build_usage_index(corpus->corpus, {p.k, p.min_cooccurrence, p.window})};
    }
  });
}

sr_status sr_index_save(const sr_index* index, const char* path) {
  return guarded([&] {
    require(index && path, "index and path are required");
    save_index(path, index->index);
  });
}

sr_status sr_index_load(const char* path, sr_index** out) {
  return guarded([&] {
    require(path && out, "path and out are required");
    *out = new sr_index{load_index(path)};
  });
}

void sr_index_free(sr_index* index) { delete index; }

sr_engine sr_index_engine(const sr_index* index) {
  return index && index->index.metadata().provenance == Provenance::Usage ? SR_ENGINE_USAGE
                                                                          : SR_ENGINE_CITATION;
}

size_t sr_index_size(const sr_index* index) { return index ? index->index.size() : 0; }

sr_status sr_recommend(const sr_index* index, const sr_corpus* corpus, const char* seed, size_t n,
                       sr_rec_list** out) {
  return guarded([&] {
    require(index && seed && out, "index, seed and out are required");
    const Corpus* c = corpus ? &corpus->corpus : nullptr;
    if (index->index.metadata().provenance == Provenance::Citation) {
      require(c != nullptr, "the citation engine needs the corpus");
      *out = new sr_rec_list{recommend(seed, n, index->index, *c)};
    } else {
      *out = new sr_rec_list{recommend_by_usage(seed, n, index->index, c)};
    }
  });
}

size_t sr_rec_list_size(const sr_rec_list* list) { return list ? list->recs.size() : 0; }

const char* sr_rec_list_article(const sr_rec_list* list, size_t i) {
  return list && i < list->recs.size() ? list->recs[i].article.c_str() : nullptr;
}

double sr_rec_list_score(const sr_rec_list* list, size_t i) {
  return list && i < list->recs.size() ? list->recs[i].score : 0.0;
}

size_t sr_rec_list_rank(const sr_rec_list* list, size_t i) {
  return list && i < list->recs.size() ? list->recs[i].rank : 0;
}

void sr_rec_list_free(sr_rec_list* list) { delete list; }

void sr_map_params_default(sr_map_params* params) {
  if (!params) return;
  const RandomIndexConfig d;
  params->dimension = d.dimension;
  params->seed_entries = d.seed_entries;
  params->rng_seed = d.rng_seed;
}

sr_status sr_map_build(const sr_corpus* corpus, const sr_map_params* params,
                       sr_vector_store** out) {
  return guarded([&] {
    require(corpus && out, "corpus and out are required");
    RandomIndexConfig cfg;
    if (params) cfg = {params->dimension, params->seed_entries, params->rng_seed};
    *out = new sr_vector_store{build_journal_vectors(corpus->corpus, cfg)};
  });
}

sr_status sr_vector_store_save(const sr_vector_store* store, const char* path) {
  return guarded([&] {
    require(store && path, "store and path are required");
    save_vector_store(path, store->store);
  });
}

sr_status sr_vector_store_load(const char* path, sr_vector_store** out) {
  return guarded([&] {
    require(path && out, "path and out are required");
    *out = new sr_vector_store{load_vector_store(path)};
  });
}

void sr_vector_store_free(sr_vector_store* store) { delete store; }

sr_status sr_map_export_csv(const sr_vector_store* store, const char* path) {
  return guarded([&] {
    require(store && path, "store and path are required");
    const auto m = export_similarity_matrix(store->store);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, std::string("cannot write ") + path);
    write_similarity_csv(out, m);
  });
}

sr_status sr_journal_similarity(const sr_vector_store* store, const char* a, const char* b,
                                double* out) {
  return guarded([&] {
    require(store && a && b && out, "store, a, b and out are required");
    *out = journal_similarity(a, b, store->store);
  });
}

sr_status sr_workspace_open(const char* data_dir, sr_workspace** out) {
  return guarded([&] {
    require(data_dir && out, "data_dir and out are required");
    *out = new sr_workspace{open_workspace(data_dir)};
  });
}

void sr_workspace_free(sr_workspace* ws) { delete ws; }

sr_status sr_workspace_recommend_json(const sr_workspace* ws, const char* seed, sr_engine engine,
                                      size_t n, char** json) {
  return guarded([&] {
    require(ws && seed && json, "ws, seed and json are required");
    require(engine == SR_ENGINE_CITATION || engine == SR_ENGINE_USAGE, "unknown engine");
    const auto kind = engine == SR_ENGINE_CITATION ? EngineKind::Citation : EngineKind::Usage;
    *json = dup_string(recommend_payload(ws->ws, seed, kind, n));
  });
}

sr_status sr_workspace_compare_json(const sr_workspace* ws, const char* seed, size_t n,
                                    char** json) {
  return guarded([&] {
    require(ws && seed && json, "ws, seed and json are required");
    *json = dup_string(compare_payload(ws->ws, seed, n));
  });
}

sr_status sr_workspace_journal_similarity_json(const sr_workspace* ws, const char* a, const char* b,
                                               char** json) {
  return guarded([&] {
    require(ws && a && b && json, "ws, a, b and json are required");
    *json = dup_string(journal_similarity_payload(ws->ws, a, b));
  });
}

void sr_topn_params_default(sr_topn_params* params) {
  if (!params) return;
  const LeaveOneOutOptions d;
  params->k = d.k;
  params->n_max = d.n_max;
  params->rotate_all = d.rotate_all ? 1 : 0;
}

sr_status sr_evaluate_topn(const sr_corpus* corpus, const char* const* seeds, size_t seed_count,
                           const sr_topn_params* params, char** json) {
  return guarded([&] {
    require(corpus && json, "corpus and json are required");
    LeaveOneOutOptions opts;
    if (params) opts = {params->k, params->n_max, params->rotate_all != 0};
    const auto ids = seed_vector(seeds, seed_count);
    const auto result = leave_one_out(corpus->corpus, ids, opts);
    *json = dup_string(topn_to_json(result, opts));
  });
}

sr_status sr_evaluate_comparison(const sr_workspace* ws, const char* const* seeds,
                                 size_t seed_count, size_t n, const char* out_dir,
                                 char** report_json) {
  return guarded([&] {
    require(ws && out_dir, "ws and out_dir are required");
    require(n >= 1, "n must be >= 1");
    const Workspace& w = ws->ws;
    if (!w.citation || !w.usage || !w.vectors) {
      throw Error(ErrorCode::Io, "comparison needs citation.simidx, usage.simidx and journals.jvec");
    }
    const auto ids = seed_vector(seeds, seed_count);

    ComparisonConfig cfg;
    cfg.n = n;
    cfg.k = w.citation->metadata().k;
    cfg.min_cooccurrence = w.usage->metadata().min_cooccurrence;
    cfg.window = w.usage->metadata().window;
    cfg.map = w.vectors->config();

    const auto run = run_comparison(citation_engine(*w.citation, w.corpus, n),
                                    usage_engine(*w.usage, w.corpus, n), w.corpus, ids, *w.vectors,
                                    cfg);
    write_comparison_files(out_dir, run);
    if (report_json) {
      std::ostringstream s;
      write_report_json(s, run);
      *report_json = dup_string(s.str());
    }
  });
}

void sr_fixture_params_default(sr_fixture_params* params) {
  if (!params) return;
  const FixtureParams d;
  params->topics = d.topics;
  params->journals_per_topic = d.journals_per_topic;
  params->articles = d.articles;
  params->rng_seed = d.rng_seed;
}

sr_status sr_generate_fixture(const sr_fixture_params* params, const char* out_dir) {
  return guarded([&] {
    require(out_dir != nullptr, "out_dir is required");
    FixtureParams p;
    if (params) {
      p.topics = params->topics;
      p.journals_per_topic = params->journals_per_topic;
      p.articles = params->articles;
      p.rng_seed = params->rng_seed;
    }
    const Fixture fx = generate_fixture(p);
    const Corpus corpus(fx.articles, fx.usage);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::Io, std::string("cannot create ") + out_dir);
    const WorkspaceLayout layout{out_dir};
    std::ostringstream articles, usage, seeds;
    write_articles(articles, corpus);
    write_usage(usage, corpus);
    for (const auto& s : fx.seeds) seeds << s << '\n';
    write_text(layout.articles(), articles.str());
    write_text(layout.usage(), usage.str());
    write_text(layout.dir / "seeds.txt", seeds.str());
  });
}

sr_status sr_service_create(const sr_service_config* config, sr_service** out) {
  return guarded([&] {
    require(config && config->data_dir && out, "config with data_dir and out are required");
    ServiceConfig c;
    if (config->host) c.host = config->host;
    c.port = config->port;
    c.data_dir = config->data_dir;
    if (config->default_n) c.default_n = config->default_n;
    if (config->cors_origin) c.cors_origin = config->cors_origin;
    require(c.port >= 0 && c.port <= 65535, "port out of range");
    *out = new sr_service{std::make_unique<HttpService>(std::move(c))};
  });
}

sr_status sr_service_start(sr_service* service) {
  return guarded([&] {
    require(service != nullptr, "service is NULL");
    service->http->start();
  });
}

int sr_service_port(const sr_service* service) { return service ? service->http->port() : 0; }

sr_status sr_service_handle(const sr_service* service, const char* target, int* http_status,
                            char** body) {
  return guarded([&] {
    require(service && target && http_status && body, "all arguments are required");
    const auto r = service->http->router().handle_target(target);
    *http_status = r.status;
    *body = dup_string(r.body);
  });
}

void sr_service_wait(sr_service* service) {
  if (service) service->http->wait();
}

void sr_service_stop(sr_service* service) {
  if (service) service->http->stop();
}

void sr_service_free(sr_service* service) { delete service; }

}  // extern "C"
