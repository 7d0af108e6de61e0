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

#include "service.hpp"
#include "citation_recommender.hpp"
#include "evaluation.hpp"
#include "hashing.hpp"
#include "usage_recommender.hpp"

#include <httplib.h>
#include <json.hpp>

#include <charconv>

namespace scholarrec {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kMaxN = 1000;

const ItemSimilarityIndex& require(const std::optional<ItemSimilarityIndex>& index,
                                   const char* what) {
  if (!index) throw Error(ErrorCode::Io, std::string(what) + " index is not loaded");
  return *index;
}

const JournalVectorStore& require(const std::optional<JournalVectorStore>& store) {
  if (!store) throw Error(ErrorCode::Io, "journal vector store is not loaded");
  return *store;
}

Json similarity_or_null(const Workspace& ws, std::string_view seed, std::string_view rec) {
  if (!ws.vectors) return nullptr;
  try {
    return seed_to_recommendation_similarity(seed, rec, ws.corpus, *ws.vectors);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoText || e.code() == ErrorCode::NotFound) return nullptr;
    throw;
  }
}

Json render_list(const Workspace& ws, std::string_view seed, const RecommendationList& recs) {
  Json arr = Json::array();
  for (const auto& r : recs) {
    const Article* a = ws.corpus.find(r.article);
    Json item;
    item["article"] = r.article;
    item["title"] = a ? Json(a->title) : Json(nullptr);
    item["journal"] = a ? Json(a->journal) : Json(nullptr);
    item["score"] = r.score;
    item["rank"] = r.rank;
    item["seed_journal_similarity"] = similarity_or_null(ws, seed, r.article);
    arr.push_back(std::move(item));
  }
  return arr;
}

RecommendationList run_engine_for(const Workspace& ws, std::string_view seed, EngineKind engine,
                                  std::size_t n) {
  if (engine == EngineKind::Citation) {
    return recommend(seed, n, require(ws.citation, "citation"), ws.corpus);
  }
  return recommend_by_usage(seed, n, require(ws.usage, "usage"), &ws.corpus);
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string error_body(std::string_view code, std::string_view message) {
  Json j;
  j["code"] = code;
  j["message"] = message;
  return j.dump();
}

HttpResponse error_response(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NotFound: return {404, error_body("not_found", e.what())};
    case ErrorCode::NoText: return {422, error_body("no_text", e.what())};
    case ErrorCode::InvalidArgument: return {400, error_body("bad_request", e.what())};
    case ErrorCode::Io: return {503, error_body("unavailable", e.what())};
    default: return {500, error_body("internal", e.what())};
  }
}

std::string_view param(const QueryParams& q, std::string_view key) {
  auto it = q.find(key);
  if (it == q.end() || it->second.empty()) {
    throw Error(ErrorCode::InvalidArgument, "missing query parameter '" + std::string(key) + "'");
  }
  return it->second;
}

std::size_t parse_n(const QueryParams& q, std::size_t fallback) {
  auto it = q.find("n");
  if (it == q.end()) return fallback;
  const auto& s = it->second;
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || n == 0 || n > kMaxN) {
    throw Error(ErrorCode::InvalidArgument,
                "n must be an integer in [1, " + std::to_string(kMaxN) + "]");
  }
  return n;
}

}  // namespace

std::optional<EngineKind> parse_engine(std::string_view name) {
  if (name == "citation") return EngineKind::Citation;
  if (name == "usage") return EngineKind::Usage;
  return std::nullopt;
}

std::string recommend_payload(const Workspace& ws, std::string_view seed, EngineKind engine,
                              std::size_t n) {
  return render_list(ws, seed, run_engine_for(ws, seed, engine, n)).dump();
}

std::string compare_payload(const Workspace& ws, std::string_view seed, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  const auto& citation = require(ws.citation, "citation");
  const auto& usage = require(ws.usage, "usage");
  if (!ws.corpus.contains(seed) && !usage.find(seed)) {
    throw Error(ErrorCode::NotFound, "unknown article '" + std::string(seed) + "'");
  }

  const RecommendationList recs_c =
      ws.corpus.contains(seed) ? recommend(seed, n, citation, ws.corpus) : RecommendationList{};
  const RecommendationList recs_u = recommend_by_usage(seed, n, usage, &ws.corpus);

  Json j;
  j["seed"] = seed;
  j["n"] = n;
  j["citation"] = render_list(ws, seed, recs_c);
  j["usage"] = render_list(ws, seed, recs_u);

  std::optional<double> mean_c, mean_u;
  if (ws.vectors) {
    if (!recs_c.empty()) mean_c = mean_seed_similarity(seed, recs_c, ws.corpus, *ws.vectors);
    if (!recs_u.empty()) mean_u = mean_seed_similarity(seed, recs_u, ws.corpus, *ws.vectors);
  }
  j["mean_similarity"] = {{"citation", optional_json(mean_c)}, {"usage", optional_json(mean_u)}};

  Json winner = nullptr;
  if (!recs_c.empty() && !recs_u.empty()) {
    const auto verdict = diversity_compare(seed, recs_c, recs_u, require(ws.vectors), ws.corpus);
    switch (verdict.winner) {
      case DiversityWinner::A: winner = "citation"; break;
      case DiversityWinner::B: winner = "usage"; break;
      default: winner = to_string(verdict.winner); break;
    }
  }
  j["winner"] = winner;
  return j.dump();
}

std::string journal_similarity_payload(const Workspace& ws, std::string_view a,
                                       std::string_view b) {
  Json j;
  j["a"] = a;
  j["b"] = b;
  j["similarity"] = journal_similarity(a, b, require(ws.vectors));
  return j.dump();
}

void RecommenderService::attach(std::shared_ptr<const Workspace> ws) {
  std::lock_guard lock(mu_);
  ws_ = std::move(ws);
}

void RecommenderService::fail(std::string message) {
  std::lock_guard lock(mu_);
  load_error_ = std::move(message);
}

bool RecommenderService::ready() const { return workspace() != nullptr; }

std::shared_ptr<const Workspace> RecommenderService::workspace() const {
  std::lock_guard lock(mu_);
  return ws_;
}

HttpResponse RecommenderService::handle(std::string_view path, const QueryParams& query) const {
  const auto ws = workspace();

  if (path == "/healthz") {
    Json j;
    if (ws) {
      j["status"] = "ok";
      j["corpus_fingerprint"] = to_hex(ws->corpus.fingerprint());
      auto fp = [](const auto& artifact, auto get) {
        return artifact ? Json(to_hex(get(*artifact))) : Json(nullptr);
      };
      auto index_fp = [](const ItemSimilarityIndex& i) { return i.metadata().corpus_fingerprint; };
      j["citation_index"] = fp(ws->citation, index_fp);
      j["usage_index"] = fp(ws->usage, index_fp);
      j["vector_store"] =
          fp(ws->vectors, [](const JournalVectorStore& s) { return s.corpus_fingerprint(); });
    } else {
      std::lock_guard lock(mu_);
      j["status"] = load_error_.empty() ? "loading" : "error";
      if (!load_error_.empty()) j["message"] = load_error_;
    }
    return {200, j.dump()};
  }

  const bool known = path == "/recommend" || path == "/compare" || path == "/journals/similarity";
  if (!known) return {404, error_body("not_found", "no such endpoint: " + std::string(path))};

  if (!ws) {
    std::lock_guard lock(mu_);
    if (!load_error_.empty()) return {500, error_body("load_failed", load_error_)};
    return {503, error_body("loading", "indices are still loading")};
  }

  try {
    if (path == "/recommend") {
      const auto seed = param(query, "seed");
      const auto engine = parse_engine(param(query, "engine"));
      if (!engine) throw Error(ErrorCode::InvalidArgument, "engine must be 'citation' or 'usage'");
      const auto n = parse_n(query, default_n_);
      return {200, recommend_payload(*ws, seed, *engine, n)};
    }
    if (path == "/compare") {
      const auto seed = param(query, "seed");
      const auto n = parse_n(query, default_n_);
      return {200, compare_payload(*ws, seed, n)};
    }
    return {200, journal_similarity_payload(*ws, param(query, "a"), param(query, "b"))};
  } catch (const Error& e) {
    return error_response(e);
  } catch (const std::exception& e) {
    return {500, error_body("internal", e.what())};
  }
}

HttpResponse RecommenderService::handle_target(std::string_view target) const {
  const auto q = target.find('?');
  const std::string path(target.substr(0, q));
  QueryParams query;
  if (q != std::string_view::npos) {
    httplib::Params params;
    httplib::detail::parse_query_text(std::string(target.substr(q + 1)), params);
    for (auto& [k, v] : params) query.emplace(k, v);
  }
  return handle(path, query);
}

HttpService::HttpService(ServiceConfig config)
    : config_(std::move(config)),
      router_(std::make_shared<RecommenderService>(config_.default_n)),
      server_(std::make_unique<httplib::Server>()) {
  if (config_.default_n == 0 || config_.default_n > kMaxN) {
    throw Error(ErrorCode::InvalidArgument, "default n out of range");
  }
  server_->set_default_headers({{"Access-Control-Allow-Origin", config_.cors_origin}});
  server_->Get(".*", [router = router_](const httplib::Request& req, httplib::Response& res) {
    QueryParams query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const auto r = router->handle(req.path, query);
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  });
  server_->Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
}

HttpService::~HttpService() { stop(); }

void HttpService::start() {
  if (config_.port == 0) {
    port_ = server_->bind_to_any_port(config_.host);
  } else {
    port_ = server_->bind_to_port(config_.host, config_.port) ? config_.port : -1;
  }
  if (port_ <= 0) {
    throw Error(ErrorCode::Io, "cannot bind " + config_.host + ":" + std::to_string(config_.port));
  }
  listener_ = std::thread([this] { server_->listen_after_bind(); });
  loader_ = std::thread([router = router_, dir = config_.data_dir] {
    try {
      auto ws = std::make_shared<const Workspace>(open_workspace(dir));
      if (!ws->citation || !ws->usage || !ws->vectors) {
        throw Error(ErrorCode::Io, "data directory " + dir.string() +
                                       " needs citation.simidx, usage.simidx and journals.jvec");
      }
      router->attach(std::move(ws));
    } catch (const std::exception& e) {
      router->fail(e.what());
    }
  });
}

void HttpService::wait() {
  if (loader_.joinable()) loader_.join();
  if (listener_.joinable()) listener_.join();
}

void HttpService::stop() {
  if (server_) server_->stop();
  wait();
}

}  // namespace scholarrec
