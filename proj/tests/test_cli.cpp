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


// Drives the scholarrec binary as a subprocess.

#include "oracle.hpp"
#include "service.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <sys/wait.h>

using namespace scholarrec;
using testing_support::read_text;
using testing_support::TempDir;
using Json = nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;  // stdout, plus stderr when merged
};

Result run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string("'") + SCHOLARREC_CLI + "' " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_CASE("usage errors exit with code 2 and print usage") {
  const auto none = run("", true);
  CHECK(none.code == 2);
  CHECK(none.out.find("Subcommands:") != std::string::npos);

  const auto missing = run("recommend --data /tmp --engine citation", true);
  CHECK(missing.code == 2);
  CHECK(missing.out.find("--seed") != std::string::npos);
  CHECK(missing.out.find("Usage:") != std::string::npos);

  CHECK(run("recommend --data /tmp --seed A --engine magic").code == 2);
  CHECK(run("build-index --data /tmp --mode citation --k notanumber").code == 2);
  CHECK(run("evaluate --data /tmp --protocol other --seeds /dev/null --out /tmp").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("full pipeline: recommend output equals the service body") {
  TempDir dir("cli");
  const auto raw = dir.path() / "raw";
  const auto data = dir.path() / "data";
  REQUIRE(run("gen-fixture --articles 160 --out " + q(raw)).code == 0);
  REQUIRE(run("ingest --articles " + q(raw / "articles.jsonl") + " --usage " +
              q(raw / "usage.csv") + " --out " + q(data))
              .code == 0);
  REQUIRE(run("build-index --data " + q(data) + " --mode citation").code == 0);
  REQUIRE(run("build-index --data " + q(data) + " --mode usage --window 1800 --min-cooccurrence 2")
              .code == 0);
  REQUIRE(run("build-map --data " + q(data)).code == 0);
  CHECK(std::filesystem::exists(data / "journals.jvec"));
  CHECK(std::filesystem::exists(data / "journal_similarity.csv"));

  const Workspace ws = open_workspace(data);
  RecommenderService router;
  router.attach(std::make_shared<const Workspace>(ws));
  for (const char* seed : {"A000", "A001", "A017", "A100"}) {
    for (const char* engine : {"citation", "usage"}) {
      const auto r = run("recommend --data " + q(data) + " --seed " + seed + " --engine " + engine +
                         " --n 8");
      REQUIRE(r.code == 0);
      const auto http =
          router.handle_target(std::string("/recommend?seed=") + seed + "&engine=" + engine + "&n=8");
      CHECK(r.out == http.body + "\n");
    }
  }

  const auto unknown = run("recommend --data " + q(data) + " --seed nope --engine usage", true);
  CHECK(unknown.code == 1);
  CHECK(unknown.out.find("not_found") != std::string::npos);

  const auto report = dir.path() / "report";
  const auto cmp = run("evaluate --data " + q(data) + " --protocol comparison --seeds " +
                       q(raw / "seeds.txt") + " --out " + q(report));
  REQUIRE(cmp.code == 0);
  CHECK(Json::parse(read_text(report / "report.json"))["seeds_total"] == 160);
  CHECK(std::filesystem::exists(report / "per_seed.csv"));
}

TEST_CASE("evaluate --protocol topn on the clique recovers every reference") {
  TempDir dir("cli-clique");
  const Corpus corpus(oracle::clique());
  {
    std::ofstream a(dir.path() / "clique.jsonl");
    write_articles(a, corpus);
    std::ofstream s(dir.path() / "seeds.txt");
    for (const auto& article : corpus.articles()) s << article.id << '\n';
  }
  const auto data = dir.path() / "data";
  REQUIRE(run("ingest --articles " + q(dir.path() / "clique.jsonl") + " --out " + q(data)).code == 0);
  const auto r = run("evaluate --data " + q(data) + " --protocol topn --seeds " +
                     q(dir.path() / "seeds.txt") + " --out " + q(dir.path() / "topn"));
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["seeds_tested"] == 10);
  CHECK(j["hits_at"]["1"] == j["seeds_tested"]);
  CHECK(Json::parse(read_text(dir.path() / "topn" / "topn.json")) == j);
}

TEST_CASE("runtime failures exit with code 1") {
  TempDir dir("cli-fail");
  testing_support::write_text(dir.path() / "bad.jsonl", "{not json}\n");
  const auto r = run("ingest --articles " + q(dir.path() / "bad.jsonl") + " --out " +
                         q(dir.path() / "out"),
                     true);
  CHECK(r.code == 1);
  CHECK(r.out.find("line 1") != std::string::npos);
  CHECK(run("build-index --data " + q(dir.path() / "missing") + " --mode usage").code == 1);
}
