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


// scholarrec command-line front end. Every subcommand goes through the C API
// in scholarrec/scholarrec.h; nothing here touches the C++ core directly.
//
// Exit codes: 0 success, 1 runtime error, 2 usage error.

#include "scholarrec/scholarrec.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

// Carries a failed C API call up to main(), which prints it and exits 1.
struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(sr_status status, const std::string& what) {
  if (status != SR_OK) {
    throw Failure(what + ": " + sr_status_name(status) + ": " + sr_last_error());
  }
}

struct StringDeleter {
  void operator()(char* s) const { sr_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct CorpusDeleter {
  void operator()(sr_corpus* c) const { sr_corpus_free(c); }
};
struct IndexDeleter {
  void operator()(sr_index* i) const { sr_index_free(i); }
};
struct StoreDeleter {
  void operator()(sr_vector_store* s) const { sr_vector_store_free(s); }
};
struct WorkspaceDeleter {
  void operator()(sr_workspace* w) const { sr_workspace_free(w); }
};
struct ServiceDeleter {
  void operator()(sr_service* s) const { sr_service_free(s); }
};

std::unique_ptr<sr_corpus, CorpusDeleter> open_corpus(const std::string& dir) {
  sr_corpus* c = nullptr;
  check(sr_corpus_open(dir.c_str(), &c), "loading corpus from " + dir);
  return std::unique_ptr<sr_corpus, CorpusDeleter>(c);
}

std::unique_ptr<sr_workspace, WorkspaceDeleter> open_workspace(const std::string& dir) {
  sr_workspace* w = nullptr;
  check(sr_workspace_open(dir.c_str(), &w), "opening workspace " + dir);
  return std::unique_ptr<sr_workspace, WorkspaceDeleter>(w);
}

sr_engine engine_of(const std::string& name) {
  return name == "usage" ? SR_ENGINE_USAGE : SR_ENGINE_CITATION;
}

// One article id per line; blank lines and '#' comments are ignored.
std::vector<std::string> read_seeds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure("cannot read seeds file " + path);
  std::vector<std::string> seeds;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    seeds.push_back(line.substr(start));
  }
  if (seeds.empty()) throw Failure("seeds file " + path + " lists no article ids");
  return seeds;
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Failure("cannot write " + path.string());
}

// ---------------------------------------------------------------------------

struct IngestOptions {
  std::string articles;
  std::string usage;
  std::string out;
};

void run_ingest(const IngestOptions& o) {
  char* manifest = nullptr;
  check(sr_ingest(o.articles.c_str(), o.usage.empty() ? nullptr : o.usage.c_str(), o.out.c_str(),
                  &manifest),
        "ingest");
  OwnedString owned(manifest);
  std::cout << owned.get() << '\n';
}

struct BuildIndexOptions {
  std::string data;
  std::string mode;
  std::optional<std::size_t> k;
  std::optional<long long> window;
  std::optional<std::size_t> min_cooccurrence;
  std::string output;
};

void run_build_index(const BuildIndexOptions& o) {
  const sr_engine engine = engine_of(o.mode);
  sr_index_params params;
  sr_index_params_default(engine, &params);
  if (o.k) params.k = *o.k;
  if (o.window) params.window = *o.window;
  if (o.min_cooccurrence) params.min_cooccurrence = *o.min_cooccurrence;

  const auto corpus = open_corpus(o.data);
  sr_index* raw = nullptr;
  check(sr_index_build(corpus.get(), engine, &params, &raw), "building " + o.mode + " index");
  std::unique_ptr<sr_index, IndexDeleter> index(raw);

  const std::string path =
      o.output.empty() ? (std::filesystem::path(o.data) / (o.mode + ".simidx")).string() : o.output;
  check(sr_index_save(index.get(), path.c_str()), "writing " + path);
  std::cerr << "wrote " << path << " (" << sr_index_size(index.get()) << " items)\n";
}

struct BuildMapOptions {
  std::string data;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> seeds;
  std::optional<unsigned long long> rng_seed;
};

void run_build_map(const BuildMapOptions& o) {
  sr_map_params params;
  sr_map_params_default(&params);
  if (o.dim) params.dimension = *o.dim;
  if (o.seeds) params.seed_entries = *o.seeds;
  if (o.rng_seed) params.rng_seed = *o.rng_seed;

  const auto corpus = open_corpus(o.data);
  sr_vector_store* raw = nullptr;
  check(sr_map_build(corpus.get(), &params, &raw), "building journal vectors");
  std::unique_ptr<sr_vector_store, StoreDeleter> store(raw);

  const std::filesystem::path dir(o.data);
  const std::string jvec = (dir / "journals.jvec").string();
  const std::string csv = (dir / "journal_similarity.csv").string();
  check(sr_vector_store_save(store.get(), jvec.c_str()), "writing " + jvec);
  check(sr_map_export_csv(store.get(), csv.c_str()), "writing " + csv);
  std::cerr << "wrote " << jvec << " and " << csv << '\n';
}

struct RecommendOptions {
  std::string data;
  std::string seed;
  std::string engine;
  std::size_t n = 10;
};

void run_recommend(const RecommendOptions& o) {
  const auto ws = open_workspace(o.data);
  char* json = nullptr;
  check(sr_workspace_recommend_json(ws.get(), o.seed.c_str(), engine_of(o.engine), o.n, &json),
        "recommend");
  OwnedString owned(json);
  std::cout << owned.get() << '\n';
}

struct EvaluateOptions {
  std::string data;
  std::string protocol;
  std::string seeds;
  std::size_t n = 10;
  std::string out;
  std::optional<std::size_t> k;
  bool rotate_all = false;
};

void run_evaluate(const EvaluateOptions& o) {
  const auto seeds = read_seeds(o.seeds);
  const auto ids = c_strings(seeds);
  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  if (ec) throw Failure("cannot create " + o.out + ": " + ec.message());

  if (o.protocol == "topn") {
    sr_topn_params params;
    sr_topn_params_default(&params);
    params.n_max = o.n;
    if (o.k) params.k = *o.k;
    params.rotate_all = o.rotate_all ? 1 : 0;
    const auto corpus = open_corpus(o.data);
    char* json = nullptr;
    check(sr_evaluate_topn(corpus.get(), ids.data(), ids.size(), &params, &json), "topn");
    OwnedString owned(json);
    write_file(std::filesystem::path(o.out) / "topn.json", std::string(owned.get()) + '\n');
    std::cout << owned.get() << '\n';
    return;
  }

  const auto ws = open_workspace(o.data);
  char* json = nullptr;
  check(sr_evaluate_comparison(ws.get(), ids.data(), ids.size(), o.n, o.out.c_str(), &json),
        "comparison");
  OwnedString owned(json);
  std::cout << owned.get();
}

struct FixtureOptions {
  std::string out;
  std::optional<std::size_t> topics;
  std::optional<std::size_t> journals_per_topic;
  std::optional<std::size_t> articles;
  std::optional<unsigned long long> rng_seed;
};

void run_gen_fixture(const FixtureOptions& o) {
  sr_fixture_params params;
  sr_fixture_params_default(&params);
  if (o.topics) params.topics = *o.topics;
  if (o.journals_per_topic) params.journals_per_topic = *o.journals_per_topic;
  if (o.articles) params.articles = *o.articles;
  if (o.rng_seed) params.rng_seed = *o.rng_seed;
  check(sr_generate_fixture(&params, o.out.c_str()), "gen-fixture");
  std::cerr << "wrote articles.jsonl, usage.csv and seeds.txt to " << o.out << '\n';
}

struct ServeOptions {
  std::string data;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t default_n = 10;
  std::string cors_origin = "*";
};

void run_serve(const ServeOptions& o) {
  sr_service_config config{o.host.c_str(), o.port, o.data.c_str(), o.default_n,
                           o.cors_origin.c_str()};
  sr_service* raw = nullptr;
  check(sr_service_create(&config, &raw), "serve");
  std::unique_ptr<sr_service, ServiceDeleter> service(raw);
  check(sr_service_start(service.get()), "serve");
  std::cerr << "listening on http://" << o.host << ':' << sr_service_port(service.get()) << '\n';
  sr_service_wait(service.get());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scholarrec: citation- and usage-based article recommendation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sr_version()));

  const auto engines = CLI::IsMember({"citation", "usage"});

  IngestOptions ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Validate inputs and write a data directory");
  c_ingest->add_option("--articles", ingest.articles, "Article records (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  c_ingest->add_option("--usage", ingest.usage, "Download log (CSV)")->check(CLI::ExistingFile);
  c_ingest->add_option("--out", ingest.out, "Data directory to write")->required();

  BuildIndexOptions index;
  auto* c_index = app.add_subcommand("build-index", "Build a similarity index (.simidx)");
  c_index->add_option("--data", index.data, "Data directory")->required();
  c_index->add_option("--mode", index.mode, "citation or usage")->required()->check(engines);
  c_index->add_option("--k", index.k, "Neighbourhood size, 0 = unlimited (default 50)");
  c_index->add_option("--window", index.window, "Usage session gap in seconds (default 1800)")
      ->check(CLI::PositiveNumber);
  c_index->add_option("--min-cooccurrence", index.min_cooccurrence,
                      "Minimum shared sessions for a usage pair (default 2)")
      ->check(CLI::PositiveNumber);
  c_index->add_option("--output", index.output, "Index file (default DATA/<mode>.simidx)");

  BuildMapOptions map;
  auto* c_map = app.add_subcommand("build-map", "Build journal vectors and the similarity CSV");
  c_map->add_option("--data", map.data, "Data directory")->required();
  c_map->add_option("--dim", map.dim, "Vector dimension (default 4096)")
      ->check(CLI::PositiveNumber);
  c_map->add_option("--seeds", map.seeds, "Non-zero entries per index vector (default 16)")
      ->check(CLI::PositiveNumber);
  c_map->add_option("--rng-seed", map.rng_seed, "Random seed (default 42)");

  RecommendOptions rec;
  auto* c_rec = app.add_subcommand("recommend", "Print recommendations for a seed as JSON");
  c_rec->add_option("--data", rec.data, "Data directory")->required();
  c_rec->add_option("--seed", rec.seed, "Seed article id")->required();
  c_rec->add_option("--engine", rec.engine, "citation or usage")->required()->check(engines);
  c_rec->add_option("--n", rec.n, "Number of recommendations")
      ->capture_default_str()
      ->check(CLI::Range(1, 1000));

  EvaluateOptions eval;
  auto* c_eval = app.add_subcommand("evaluate", "Run an evaluation protocol");
  c_eval->add_option("--data", eval.data, "Data directory")->required();
  c_eval->add_option("--protocol", eval.protocol, "topn or comparison")
      ->required()
      ->check(CLI::IsMember({"topn", "comparison"}));
  c_eval->add_option("--seeds", eval.seeds, "Seed ids, one per line")
      ->required()
      ->check(CLI::ExistingFile);
  c_eval->add_option("--n", eval.n, "Recommendations per seed (topn: list length, >= 10)")
      ->capture_default_str()
      ->check(CLI::Range(1, 1000));
  c_eval->add_option("--out", eval.out, "Report directory")->required();
  c_eval->add_option("--k", eval.k, "topn: neighbourhood size, 0 = unlimited (default 50)");
  c_eval->add_flag("--rotate-all", eval.rotate_all, "topn: remove every reference in turn");

  FixtureOptions fx;
  auto* c_fx = app.add_subcommand("gen-fixture", "Write a synthetic two-topic corpus");
  c_fx->add_option("--out", fx.out, "Directory for articles.jsonl, usage.csv, seeds.txt")
      ->required();
  c_fx->add_option("--topics", fx.topics, "Number of topics (default 2)")
      ->check(CLI::PositiveNumber);
  c_fx->add_option("--journals-per-topic", fx.journals_per_topic, "Journals per topic (default 3)")
      ->check(CLI::PositiveNumber);
  c_fx->add_option("--articles", fx.articles, "Number of articles (default 400)")
      ->check(CLI::PositiveNumber);
  c_fx->add_option("--rng-seed", fx.rng_seed, "Random seed (default 42)");

  ServeOptions serve;
  auto* c_serve = app.add_subcommand("serve", "Serve the JSON API over HTTP");
  c_serve->add_option("--data", serve.data, "Data directory")->required();
  c_serve->add_option("--host", serve.host, "Bind address")->capture_default_str();
  c_serve->add_option("--port", serve.port, "Port, 0 = any free port")
      ->capture_default_str()
      ->check(CLI::Range(0, 65535));
  c_serve->add_option("--default-n", serve.default_n, "n when a request omits it")
      ->capture_default_str()
      ->check(CLI::Range(1, 1000));
  c_serve->add_option("--cors-origin", serve.cors_origin, "Access-Control-Allow-Origin value")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    // Usage of the subcommand that failed to parse, or of the whole tool.
    const auto parsed = app.get_subcommands();
    std::cerr << '\n' << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitUsage;
  }

  try {
    if (*c_ingest) run_ingest(ingest);
    else if (*c_index) run_build_index(index);
    else if (*c_map) run_build_map(map);
    else if (*c_rec) run_recommend(rec);
    else if (*c_eval) run_evaluate(eval);
    else if (*c_fx) run_gen_fixture(fx);
    else if (*c_serve) run_serve(serve);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
