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


// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and time
// budgets are fixed below; the process exits non-zero if any line fails.

#include "citation_recommender.hpp"
#include "evaluation.hpp"
#include "fixture.hpp"
#include "hashing.hpp"
#include "interaction_matrix.hpp"
#include "oracle.hpp"
#include "scenarios.hpp"
#include "semantic_map.hpp"
#include "service.hpp"
#include "support.hpp"
#include "usage_recommender.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iterator>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

using namespace scholarrec;
using testing_support::read_text;
using testing_support::TempDir;
using Json = nlohmann::json;

namespace {

// ---- pinned tolerances and budgets ----------------------------------------
constexpr double kScoreTolerance = 1e-12;      // oracle score agreement
constexpr double kKernelTolerance = 1e-9;      // hand-computed similarities
constexpr double kSelfSimTolerance = 1e-9;     // journal self-similarity
constexpr double kMeanAbsCosBound = 0.05;      // disjoint journals, mean |cos|
constexpr double kP95AbsCosBound = 0.1;        // disjoint journals, 95th pct
constexpr double kMinCitationWinShare = 0.60;  // directional diversity wins
constexpr double kOracleBudgetSec = 10.0;
constexpr double kSemanticBudgetSec = 60.0;
constexpr double kDirectionalBudgetSec = 120.0;
constexpr std::size_t kOracleMatrices = 100;
constexpr std::size_t kMaxDim = 50;
constexpr std::size_t kMonteCarloPairs = 1000;
constexpr std::size_t kServiceSeeds = 20;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

bool same_lists(const RecommendationList& got, const RecommendationList& want, double tol) {
  if (got.size() != want.size()) return false;
  for (std::size_t r = 0; r < got.size(); ++r) {
    if (got[r].article != want[r].article || got[r].rank != want[r].rank) return false;
    if (!(std::abs(got[r].score - want[r].score) <= tol)) return false;
  }
  return true;
}

double neighbour_score(const ItemSimilarityIndex& index, const std::string& a,
                       const std::string& b) {
  const auto i = index.find(a);
  const auto j = index.find(b);
  if (!i || !j) return 0.0;
  for (const auto& nb : index.neighbors(*i)) {
    if (nb.item == *j) return nb.score;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

Outcome cf_oracle_equivalence() {
  Clock clock;
  std::mt19937_64 rng(20260101);
  std::size_t lists = 0, mismatches = 0;
  for (std::size_t m = 0; m < kOracleMatrices; ++m) {
    const std::size_t rows = 1 + rng() % kMaxDim;
    const std::size_t cols = 1 + rng() % kMaxDim;
    std::bernoulli_distribution link(0.03 + 0.3 * static_cast<double>(rng() % 100) / 100.0);
    if (m % 2 == 0) {
      // Citation-shaped: rows are citing articles, columns cited articles.
      std::vector<Article> articles;
      for (std::size_t r = 0; r < rows; ++r) {
        std::vector<ArticleId> refs;
        for (std::size_t c = 0; c < cols; ++c) {
          if (link(rng)) refs.push_back("c" + std::to_string(c));
        }
        articles.push_back(oracle::article("r" + std::to_string(r), refs));
      }
      const Corpus corpus(articles);
      const auto index = build_citation_index(corpus, kUnlimited);
      const auto dense = oracle::citation_matrix(articles);
      for (const auto& a : articles) {
        ++lists;
        const auto got = recommend(a.id, kMaxDim * 2, index, corpus);
        const auto want = oracle::profile_scores(dense, a.references, a.id, kMaxDim * 2);
        mismatches += same_lists(got, want, kScoreTolerance) ? 0 : 1;
      }
    } else {
      // Session-shaped: one event per link, sessions a day apart.
      std::vector<UsageEvent> log;
      for (std::size_t r = 0; r < rows; ++r) {
        std::int64_t t = static_cast<std::int64_t>(r) * 86400;
        for (std::size_t c = 0; c < cols; ++c) {
          if (link(rng)) log.push_back({"u" + std::to_string(r % 5), "i" + std::to_string(c), t += 30});
        }
      }
      const std::size_t min_cooc = 1 + m % 3;
      const auto index = build_usage_index(sessionize(log, kDefaultSessionWindow), kUnlimited, min_cooc);
      const auto dense = oracle::session_matrix(log, kDefaultSessionWindow);
      for (const auto& id : dense.items) {
        ++lists;
        const auto got = recommend_by_usage(id, kMaxDim * 2, index);
        const auto want = oracle::neighbour_scores(dense, id, kMaxDim * 2, min_cooc);
        mismatches += same_lists(got, want, kScoreTolerance) ? 0 : 1;
      }
    }
  }
  const double secs = clock.seconds();
  return {mismatches == 0 && secs < kOracleBudgetSec,
          std::to_string(kOracleMatrices) + " matrices, " + std::to_string(lists) + " ranked lists, " +
              std::to_string(mismatches) + " mismatches, " + fmt(secs) + " s (budget " +
              fmt(kOracleBudgetSec) + " s)"};
}

Outcome similarity_kernels() {
  const auto citation = build_citation_index(Corpus(oracle::two_citers()), kUnlimited);
  const double cd = neighbour_score(citation, "C", "D");
  const double ce = neighbour_score(citation, "C", "E");
  const auto usage = build_usage_index(sessionize(oracle::two_sessions(), kDefaultSessionWindow),
                                       kUnlimited, 1);
  const double xy = neighbour_score(usage, "x", "y");
  const bool ok = std::abs(cd - 1.0) <= kKernelTolerance &&
                  std::abs(ce - 0.7071067811865476) <= kKernelTolerance &&
                  std::abs(xy - 1.0) <= kKernelTolerance;
  return {ok, "sim(C,D)=" + fmt(cd) + " sim(C,E)=" + fmt(ce) + " sim(x,y)=" + fmt(xy)};
}

Outcome semantic_map_invariants() {
  Clock clock;
  const RandomIndexConfig config{4096, 16, 42};
  std::mt19937_64 rng(4242);
  auto word = [&](const std::string& prefix) {
    std::string w = prefix;
    for (int i = 0; i < 7; ++i) w += static_cast<char>('a' + rng() % 26);
    return w;
  };

  // 1000 disjoint-vocabulary journal pairs plus shuffled/duplicated twins.
  std::vector<Article> articles;
  std::vector<std::string> texts;
  for (std::size_t j = 0; j < 2 * kMonteCarloPairs; ++j) {
    std::string text;
    const std::string prefix = "v" + std::to_string(j) + "q";
    std::vector<std::string> tokens;
    for (int t = 0; t < 25; ++t) tokens.push_back(word(prefix));
    for (int t = 0; t < 10; ++t) tokens.push_back(tokens[rng() % tokens.size()]);
    for (const auto& t : tokens) text += t + " ";
    texts.push_back(text);
    articles.push_back(oracle::article("a" + std::to_string(j), {}, "J" + std::to_string(j), text));
  }
  // Multiset twin of J0 (tokens reversed, split over two articles) and a
  // scaled twin (every article duplicated).
  {
    std::istringstream in(texts[0]);
    std::vector<std::string> tokens{std::istream_iterator<std::string>(in), {}};
    std::reverse(tokens.begin(), tokens.end());
    std::string first, second;
    for (std::size_t i = 0; i < tokens.size(); ++i) (i % 2 ? first : second) += tokens[i] + " ";
    articles.push_back(oracle::article("twin1", {}, "TWIN", first));
    articles.push_back(oracle::article("twin2", {}, "TWIN", second));
    articles.push_back(oracle::article("dup1", {}, "DUP", texts[0]));
    articles.push_back(oracle::article("dup2", {}, "DUP", texts[0]));
  }
  const Corpus corpus(articles);
  const auto store = build_journal_vectors(corpus, config);

  double worst_self = 0.0;
  bool symmetric = true;
  std::vector<double> abs_cos;
  for (std::size_t p = 0; p < kMonteCarloPairs; ++p) {
    const auto a = "J" + std::to_string(2 * p);
    const auto b = "J" + std::to_string(2 * p + 1);
    worst_self = std::max(worst_self, std::abs(journal_similarity(a, a, store) - 1.0));
    const double ab = journal_similarity(a, b, store);
    symmetric = symmetric && ab == journal_similarity(b, a, store);
    abs_cos.push_back(std::abs(ab));
  }
  const auto* j0 = store.find("J0");
  const bool multiset = store.find("TWIN")->vector == j0->vector;
  const auto& dup = store.find("DUP")->vector;
  double scale_err = 0.0;
  for (std::size_t i = 0; i < dup.size(); ++i) scale_err = std::max(scale_err, std::abs(dup[i] - j0->vector[i]));
  const bool scaled = scale_err <= 1e-12;

  double mean = 0.0;
  for (double c : abs_cos) mean += c;
  mean /= static_cast<double>(abs_cos.size());
  std::sort(abs_cos.begin(), abs_cos.end());
  const double p95 = abs_cos[static_cast<std::size_t>(std::ceil(0.95 * abs_cos.size())) - 1];
  const double secs = clock.seconds();

  const bool ok = worst_self <= kSelfSimTolerance && symmetric && multiset && scaled &&
                  mean <= kMeanAbsCosBound && p95 <= kP95AbsCosBound && secs < kSemanticBudgetSec;
  return {ok, "self-sim err " + fmt(worst_self) + ", symmetric " + (symmetric ? "yes" : "no") +
                  ", multiset " + (multiset ? "yes" : "no") + ", scaling " + (scaled ? "yes" : "no") +
                  ", mean |cos| " + fmt(mean) + ", p95 " + fmt(p95) + ", " + fmt(secs) + " s"};
}

Outcome leave_one_out_protocol() {
  const auto clique = oracle::clique();
  std::vector<ArticleId> clique_seeds;
  for (const auto& a : clique) clique_seeds.push_back(a.id);
  const auto c = leave_one_out(Corpus(clique), clique_seeds);

  const auto uncited = oracle::uncited_elsewhere();
  std::vector<ArticleId> u_seeds;
  for (const auto& a : uncited) {
    if (a.id[0] == 'S') u_seeds.push_back(a.id);
  }
  const auto u = leave_one_out(Corpus(uncited), u_seeds);

  const bool ok = c.seeds_tested == 10 && c.hits_at.at(1) == c.seeds_tested &&
                  u.seeds_tested == u_seeds.size() && u.hits_at.at(10) == 0;
  return {ok, "clique top-1 " + std::to_string(c.hits_at.at(1)) + "/" +
                  std::to_string(c.seeds_tested) + ", uncited top-10 " +
                  std::to_string(u.hits_at.at(10)) + "/" + std::to_string(u.seeds_tested)};
}

Outcome comparison_accounting() {
  const auto s = scenario::accounting();
  const auto run = run_comparison(s.a, s.b, s.corpus, s.seeds, build_journal_vectors(s.corpus, {}));
  const auto& r = run.report;
  const bool ok = r.covered_a == 5 && r.covered_b == 4 && r.coverage_a == 0.5 &&
                  r.coverage_b == 0.4 && r.union_coverage == 0.7 && r.joint_seeds == 2;
  return {ok, "coverage " + fmt(r.coverage_a) + "/" + fmt(r.coverage_b) + ", union " +
                  fmt(r.union_coverage) + ", joint " + std::to_string(r.joint_seeds)};
}

Outcome directional_reproduction() {
  Clock clock;
  const FixtureParams params;  // defaults, rng_seed 42
  const Fixture fx = generate_fixture(params);
  const Corpus corpus(fx.articles, fx.usage);
  const auto citation = build_citation_index(corpus);
  const auto usage = build_usage_index(corpus, {});
  const auto store = build_journal_vectors(corpus, {});
  const auto run = run_comparison(citation_engine(citation, corpus, 10),
                                  usage_engine(usage, corpus, 10), corpus, fx.seeds, store);
  const auto& r = run.report;
  const double secs = clock.seconds();
  if (!r.mean_seed_similarity_a || !r.mean_seed_similarity_b || r.joint_seeds == 0) {
    return {false, "no comparable seeds"};
  }
  const double share = static_cast<double>(r.diversity_wins_a) / static_cast<double>(r.joint_seeds);
  const bool ok = *r.mean_seed_similarity_a < *r.mean_seed_similarity_b &&
                  share >= kMinCitationWinShare && secs < kDirectionalBudgetSec;
  return {ok, "mean sim citation " + fmt(*r.mean_seed_similarity_a) + " < usage " +
                  fmt(*r.mean_seed_similarity_b) + ", citation wins " +
                  std::to_string(r.diversity_wins_a) + "/" + std::to_string(r.joint_seeds) + " (" +
                  fmt(100 * share) + "%), " + fmt(secs) + " s"};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("'") + SCHOLARREC_CLI + "' " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

void cli_pipeline(const std::filesystem::path& root) {
  const auto raw = root / "raw";
  const auto data = root / "data";
  const auto report = root / "report";
  const std::vector<std::string> steps = {
      "gen-fixture --topics 2 --journals-per-topic 3 --articles 400 --rng-seed 42 --out " + q(raw),
      "ingest --articles " + q(raw / "articles.jsonl") + " --usage " + q(raw / "usage.csv") +
          " --out " + q(data),
      "build-index --data " + q(data) + " --mode citation --k 50",
      "build-index --data " + q(data) + " --mode usage --k 50 --window 1800 --min-cooccurrence 2",
      "build-map --data " + q(data) + " --dim 4096 --seeds 16 --rng-seed 42",
      "evaluate --data " + q(data) + " --protocol comparison --seeds " + q(raw / "seeds.txt") +
          " --n 10 --out " + q(report),
      "evaluate --data " + q(data) + " --protocol topn --seeds " + q(raw / "seeds.txt") +
          " --n 10 --out " + q(report),
  };
  for (const auto& step : steps) {
    if (run_cli(step) != 0) throw std::runtime_error("CLI step failed: " + step);
  }
}

Outcome determinism() {
  TempDir first("accept-det-1"), second("accept-det-2");
  cli_pipeline(first.path());
  cli_pipeline(second.path());
  const std::vector<std::string> files = {
      "data/citation.simidx", "data/usage.simidx",    "data/journals.jvec",
      "data/journal_similarity.csv", "report/report.json", "report/per_seed.csv",
      "report/topn.json"};
  std::size_t identical = 0;
  std::string differing;
  for (const auto& f : files) {
    const auto a = read_text(first.path() / f);
    const auto b = read_text(second.path() / f);
    if (!a.empty() && a == b) {
      ++identical;
    } else {
      differing += " " + f;
    }
  }
  return {identical == files.size(),
          std::to_string(identical) + "/" + std::to_string(files.size()) +
              " artifacts byte-identical" + (differing.empty() ? "" : ", differing:" + differing)};
}

Json library_list(const RecommendationList& recs) {
  Json out = Json::array();
  for (const auto& r : recs) out.push_back({{"article", r.article}, {"score", r.score}, {"rank", r.rank}});
  return out;
}

Json strip(const Json& items) {
  Json out = Json::array();
  for (const auto& i : items) {
    out.push_back({{"article", i["article"]}, {"score", i["score"]}, {"rank", i["rank"]}});
  }
  return out;
}

Outcome service_fidelity() {
  TempDir dir("accept-service");
  Fixture fx = generate_fixture(FixtureParams{});
  fx.articles.push_back(oracle::article("Z-MUTE", {fx.articles[0].id, fx.articles[1].id}, "J-MUTE"));
  const Corpus corpus(fx.articles, fx.usage);
  testing_support::write_workspace(dir.path(), corpus);
  const Workspace ws = open_workspace(dir.path());

  ServiceConfig config;
  config.port = 0;
  config.data_dir = dir.path();
  HttpService service(config);
  service.start();
  for (int i = 0; i < 500 && !service.router().ready(); ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  if (!service.router().ready()) return {false, "service did not load"};
  httplib::Client client("127.0.0.1", service.port());

  std::size_t checked = 0, mismatches = 0;
  auto get = [&](const std::string& target) -> std::pair<int, std::string> {
    const auto r = client.Get(target);
    if (!r) return {0, ""};
    return {r->status, r->body};
  };

  for (std::size_t k = 0; k < kServiceSeeds; ++k) {
    const auto& seed = fx.seeds[k * (fx.seeds.size() / kServiceSeeds)];
    const auto lib_c = recommend(seed, 10, *ws.citation, ws.corpus);
    const auto lib_u = recommend_by_usage(seed, 10, *ws.usage, &ws.corpus);

    for (auto [engine, lib] : {std::pair{"citation", &lib_c}, std::pair{"usage", &lib_u}}) {
      const auto [status, body] = get("/recommend?seed=" + seed + "&engine=" + engine + "&n=10");
      ++checked;
      const bool ok = status == 200 && strip(Json::parse(body)) == library_list(*lib);
      mismatches += ok ? 0 : 1;
    }

    const auto [status, body] = get("/compare?seed=" + seed + "&n=10");
    ++checked;
    bool ok = status == 200;
    if (ok) {
      const auto j = Json::parse(body);
      ok = strip(j["citation"]) == library_list(lib_c) &&
           strip(j["usage"]) == library_list(lib_u);
      if (!lib_c.empty() && !lib_u.empty()) {
        const auto v = diversity_compare(seed, lib_c, lib_u, *ws.vectors, ws.corpus);
        const std::string want = v.winner == DiversityWinner::A   ? "citation"
                                 : v.winner == DiversityWinner::B ? "usage"
                                                                  : to_string(v.winner);
        ok = ok && j["winner"] == want;
        ok = ok && (v.mean_a ? j["mean_similarity"]["citation"] == *v.mean_a
                             : j["mean_similarity"]["citation"].is_null());
      } else {
        ok = ok && j["winner"].is_null();
      }
    }
    mismatches += ok ? 0 : 1;
  }

  struct ErrorCase {
    std::string target;
    int status;
    std::string code;
  };
  const std::vector<ErrorCase> errors = {
      {"/recommend?seed=NO-SUCH-ARTICLE&engine=citation", 404, "not_found"},
      {"/compare?seed=NO-SUCH-ARTICLE", 404, "not_found"},
      {"/recommend?seed=" + fx.seeds[0] + "&engine=citation&n=0", 400, "bad_request"},
      {"/recommend?seed=" + fx.seeds[0] + "&engine=bogus", 400, "bad_request"},
      {"/journals/similarity?a=J0-0&b=J-MUTE", 422, "no_text"},
  };
  std::size_t error_ok = 0;
  for (const auto& e : errors) {
    const auto [status, body] = get(e.target);
    if (status == e.status && Json::parse(body).value("code", "") == e.code) ++error_ok;
  }
  service.stop();
  return {mismatches == 0 && error_ok == errors.size(),
          std::to_string(kServiceSeeds) + " seeds, " + std::to_string(checked - mismatches) + "/" +
              std::to_string(checked) + " bodies match library, " + std::to_string(error_ok) + "/" +
              std::to_string(errors.size()) + " error cases (404/400/422)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cf-oracle-equivalence", cf_oracle_equivalence},
      {"similarity-kernels", similarity_kernels},
      {"semantic-map-invariants", semantic_map_invariants},
      {"leave-one-out-protocol", leave_one_out_protocol},
      {"comparison-accounting", comparison_accounting},
      {"directional-diversity", directional_reproduction},
      {"cli-determinism", determinism},
      {"service-fidelity", service_fidelity},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
