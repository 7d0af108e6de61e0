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

#include "workspace.hpp"
#include "hashing.hpp"
#include "interaction_matrix.hpp"

#include <json.hpp>

#include <fstream>

namespace scholarrec {

namespace {

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  writer(out);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

nlohmann::ordered_json matrix_stats(const SparseInteractionMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"links", m.link_count()},
          {"sparsity", sparsity(m)}};
}

}  // namespace

std::string manifest_json(const Corpus& corpus) {
  std::size_t references = 0, dangling = 0, with_text = 0;
  for (const auto& a : corpus.articles()) {
    references += a.references.size();
    for (const auto& r : a.references) dangling += !corpus.contains(r);
    with_text += a.full_text.has_value();
  }
  nlohmann::ordered_json j;
  j["corpus_fingerprint"] = to_hex(corpus.fingerprint());
  j["articles"] = corpus.articles().size();
  j["journals"] = corpus.journals().size();
  j["articles_with_full_text"] = with_text;
  j["references"] = references;
  j["dangling_references"] = dangling;
  j["usage_events"] = corpus.usage().size();
  j["citation_matrix"] = matrix_stats(build_citation_matrix(corpus));
  j["usage_matrix"] = matrix_stats(sessionize(corpus.usage(), kDefaultSessionWindow));
  j["usage_matrix"]["window"] = kDefaultSessionWindow;
  return j.dump(2);
}

Corpus ingest(const std::filesystem::path& articles,
              const std::optional<std::filesystem::path>& usage,
              const std::filesystem::path& out_dir) {
  auto records = load_articles(articles);
  std::vector<UsageEvent> events;
  if (usage) events = load_usage(*usage);
  Corpus corpus(std::move(records), std::move(events));

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + out_dir.string() + ": " + ec.message());
  const WorkspaceLayout layout{out_dir};
  write_file(layout.articles(), [&](std::ostream& o) { write_articles(o, corpus); });
  write_file(layout.usage(), [&](std::ostream& o) { write_usage(o, corpus); });
  write_file(layout.manifest(), [&](std::ostream& o) { o << manifest_json(corpus) << '\n'; });
  return corpus;
}

Corpus load_corpus_dir(const std::filesystem::path& dir) {
  const WorkspaceLayout layout{dir};
  auto articles = load_articles(layout.articles());
  std::vector<UsageEvent> events;
  if (std::filesystem::exists(layout.usage())) events = load_usage(layout.usage());
  return Corpus(std::move(articles), std::move(events));
}

Workspace open_workspace(const std::filesystem::path& dir) {
  const WorkspaceLayout layout{dir};
  Workspace ws;
  ws.corpus = load_corpus_dir(dir);
  if (std::filesystem::exists(layout.index(Provenance::Citation))) {
    ws.citation = load_index(layout.index(Provenance::Citation));
  }
  if (std::filesystem::exists(layout.index(Provenance::Usage))) {
    ws.usage = load_index(layout.index(Provenance::Usage));
  }
  if (std::filesystem::exists(layout.vectors())) ws.vectors = load_vector_store(layout.vectors());
  check_fingerprints(ws);
  return ws;
}

void check_fingerprints(const Workspace& ws) {
  const auto expected = ws.corpus.fingerprint();
  auto check = [&](std::uint64_t got, const char* what) {
    if (got != expected) {
      throw Error(ErrorCode::Format, std::string(what) + " was built from corpus " + to_hex(got) +
                                         ", loaded corpus is " + to_hex(expected));
    }
  };
  if (ws.citation) {
    if (ws.citation->metadata().provenance != Provenance::Citation) {
      throw Error(ErrorCode::Format, "citation.simidx holds a usage index");
    }
    check(ws.citation->metadata().corpus_fingerprint, "citation index");
  }
  if (ws.usage) {
    if (ws.usage->metadata().provenance != Provenance::Usage) {
      throw Error(ErrorCode::Format, "usage.simidx holds a citation index");
    }
    check(ws.usage->metadata().corpus_fingerprint, "usage index");
  }
  if (ws.vectors) check(ws.vectors->corpus_fingerprint(), "journal vector store");
}

}  // namespace scholarrec
