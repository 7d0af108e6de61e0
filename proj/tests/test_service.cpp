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


#include "fixture.hpp"
#include "hashing.hpp"
#include "oracle.hpp"
#include "service.hpp"
#include "support.hpp"

#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <thread>

using namespace scholarrec;
using testing_support::TempDir;
using Json = nlohmann::json;

namespace {

// Synthetic corpus plus a text-less journal JX whose article Z1 cites a
// fixture article and a dangling id.
Corpus service_corpus() {
  FixtureParams params;
  params.articles = 200;
  params.sessions = 500;
  Fixture fx = generate_fixture(params);
  fx.articles.push_back(oracle::article("Z1", {fx.articles[0].id, fx.articles[2].id, "ghost"}, "JX"));
  fx.articles.push_back(oracle::article("Z2", {}, "JX"));
  return Corpus(fx.articles, fx.usage);
}

struct Loaded {
  TempDir dir{"service"};
  std::shared_ptr<const Workspace> ws;
  RecommenderService router;

  Loaded() {
    testing_support::write_workspace(dir.path(), service_corpus());
    ws = std::make_shared<const Workspace>(open_workspace(dir.path()));
    router.attach(ws);
  }
};

Loaded& loaded() {
  static Loaded instance;
  return instance;
}

std::string code_of(const HttpResponse& r) { return Json::parse(r.body).at("code"); }

}  // namespace

TEST_CASE("/recommend equals the library payload for both engines") {
  auto& l = loaded();
  int covered = 0;
  for (const auto& a : l.ws->corpus.articles()) {
    for (auto [name, kind] : {std::pair{"citation", EngineKind::Citation},
                              std::pair{"usage", EngineKind::Usage}}) {
      const auto r = l.router.handle_target("/recommend?seed=" + a.id + "&engine=" + name + "&n=7");
      REQUIRE(r.status == 200);
      CHECK(r.body == recommend_payload(*l.ws, a.id, kind, 7));
      covered += Json::parse(r.body).empty() ? 0 : 1;
    }
  }
  CHECK(covered > 0);

  const auto body = Json::parse(l.router.handle_target("/recommend?seed=A000&engine=usage").body);
  CHECK(body.size() <= 10);
  if (!body.empty()) {
    for (const char* key : {"article", "title", "journal", "score", "rank", "seed_journal_similarity"}) {
      CHECK(body[0].contains(key));
    }
  }
}

TEST_CASE("/recommend shows nulls for dangling and text-less recommendations") {
  auto& l = loaded();
  // Z1's journal has no text, so every similarity is null; ghost has no record.
  const auto r = l.router.handle_target("/recommend?seed=Z1&engine=citation&n=50");
  REQUIRE(r.status == 200);
  for (const auto& item : Json::parse(r.body)) CHECK(item["seed_journal_similarity"].is_null());
}

TEST_CASE("/recommend errors map to status codes with an error envelope") {
  auto& l = loaded();
  const auto unknown = l.router.handle_target("/recommend?seed=nope&engine=citation");
  CHECK(unknown.status == 404);
  CHECK(code_of(unknown) == "not_found");
  CHECK(Json::parse(unknown.body).contains("message"));
  CHECK(l.router.handle_target("/recommend?seed=nope&engine=usage").status == 404);
  for (const char* q : {"/recommend?seed=A000&engine=citation&n=0",
                        "/recommend?seed=A000&engine=citation&n=abc",
                        "/recommend?seed=A000&engine=citation&n=-3",
                        "/recommend?seed=A000&engine=citation&n=1001",
                        "/recommend?seed=A000&engine=other", "/recommend?seed=A000",
                        "/recommend?engine=usage", "/compare?seed=A000&n=0",
                        "/journals/similarity?a=J0-0"}) {
    const auto r = l.router.handle_target(q);
    CHECK_MESSAGE(r.status == 400, q);
    CHECK(code_of(r) == "bad_request");
  }
  CHECK(l.router.handle_target("/nowhere").status == 404);
}

TEST_CASE("/compare embeds both lists and the diversity verdict") {
  auto& l = loaded();
  int both = 0, one = 0;
  for (const auto& a : l.ws->corpus.articles()) {
    const auto r = l.router.handle_target("/compare?seed=" + a.id + "&n=10");
    REQUIRE(r.status == 200);
    CHECK(r.body == compare_payload(*l.ws, a.id, 10));
    const auto j = Json::parse(r.body);
    const bool c = !j["citation"].empty();
    const bool u = !j["usage"].empty();
    if (c && u) {
      ++both;
      CHECK(j["winner"].is_string());
    } else {
      one += c || u;
      CHECK(j["winner"].is_null());
    }
    CHECK(j["mean_similarity"].contains("citation"));
  }
  CHECK(both > 0);
  CHECK(one > 0);
  CHECK(l.router.handle_target("/compare?seed=nope").status == 404);
}

TEST_CASE("/journals/similarity matches the exported matrix") {
  auto& l = loaded();
  const auto m = export_similarity_matrix(*l.ws->vectors);
  for (std::size_t i = 0; i < m.journal_ids.size(); ++i) {
    for (std::size_t j = 0; j < m.journal_ids.size(); ++j) {
      const auto r = l.router.handle_target("/journals/similarity?a=" + m.journal_ids[i] +
                                            "&b=" + m.journal_ids[j]);
      REQUIRE(r.status == 200);
      CHECK(Json::parse(r.body)["similarity"].get<double>() == m.at(i, j));
    }
  }
  const auto self = l.router.handle_target("/journals/similarity?a=J0-0&b=J0-0");
  CHECK(Json::parse(self.body)["similarity"].get<double>() == 1.0);
  const auto mute = l.router.handle_target("/journals/similarity?a=J0-0&b=JX");
  CHECK(mute.status == 422);
  CHECK(code_of(mute) == "no_text");
  CHECK(l.router.handle_target("/journals/similarity?a=J0-0&b=J9").status == 404);
}

TEST_CASE("requests before loading get 503; failed loads get 500") {
  RecommenderService router;
  const auto waiting = router.handle_target("/recommend?seed=A000&engine=citation");
  CHECK(waiting.status == 503);
  CHECK(code_of(waiting) == "loading");
  CHECK(Json::parse(router.handle_target("/healthz").body)["status"] == "loading");
  router.fail("broken");
  CHECK(router.handle_target("/compare?seed=A000").status == 500);
  CHECK(Json::parse(router.handle_target("/healthz").body)["status"] == "error");
}

TEST_CASE("a workspace missing an artifact answers 503 for that engine") {
  auto& l = loaded();
  auto partial = std::make_shared<Workspace>(*l.ws);
  partial->usage.reset();
  RecommenderService router;
  router.attach(partial);
  CHECK(router.handle_target("/recommend?seed=A000&engine=citation").status == 200);
  const auto r = router.handle_target("/recommend?seed=A000&engine=usage");
  CHECK(r.status == 503);
  CHECK(code_of(r) == "unavailable");
}

TEST_CASE("healthz reports fingerprints") {
  auto& l = loaded();
  const auto j = Json::parse(l.router.handle_target("/healthz").body);
  CHECK(j["status"] == "ok");
  CHECK(j["corpus_fingerprint"] == to_hex(l.ws->corpus.fingerprint()));
  CHECK(j["citation_index"] == j["corpus_fingerprint"]);
  CHECK(j["vector_store"] == j["corpus_fingerprint"]);
}

TEST_CASE("HTTP round trip with CORS") {
  auto& l = loaded();
  ServiceConfig config;
  config.port = 0;
  config.data_dir = l.dir.path();
  config.cors_origin = "http://ui.example";
  HttpService service(config);
  service.start();
  REQUIRE(service.port() > 0);

  httplib::Client client("127.0.0.1", service.port());
  for (int i = 0; i < 200 && !service.router().ready(); ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  REQUIRE(service.router().ready());

  const auto r = client.Get("/recommend?seed=A000&engine=usage&n=5");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(r->body == recommend_payload(*l.ws, "A000", EngineKind::Usage, 5));
  CHECK(r->get_header_value("Access-Control-Allow-Origin") == "http://ui.example");
  CHECK(r->get_header_value("Content-Type").find("application/json") == 0);

  const auto missing = client.Get("/recommend?seed=nope&engine=usage");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(Json::parse(missing->body)["code"] == "not_found");

  const auto pre = client.Options("/compare");
  REQUIRE(pre);
  CHECK(pre->status == 204);
  service.stop();
}

TEST_CASE("the HTTP service refuses a data directory without indices") {
  TempDir dir("service-bare");
  const Corpus corpus(oracle::two_citers());
  std::ofstream(WorkspaceLayout{dir.path()}.articles()) << "";
  {
    std::ofstream a(WorkspaceLayout{dir.path()}.articles());
    write_articles(a, corpus);
  }
  ServiceConfig config;
  config.port = 0;
  config.data_dir = dir.path();
  HttpService service(config);
  service.start();
  for (int i = 0; i < 200; ++i) {
    const auto h = Json::parse(service.router().handle_target("/healthz").body);
    if (h["status"] != "loading") break;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  const auto r = service.router().handle_target("/recommend?seed=A&engine=citation");
  CHECK(r.status == 500);
  CHECK(code_of(r) == "load_failed");
  service.stop();
}
