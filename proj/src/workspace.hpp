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

#pragma once

#include "corpus.hpp"
#include "semantic_map.hpp"
#include "similarity_index.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace scholarrec {

// Fixed artifact names inside a data directory. `ingest` writes the corpus
// files, `build-index` and `build-map` add the derived artifacts.
struct WorkspaceLayout {
  std::filesystem::path dir;

  std::filesystem::path articles() const { return dir / "articles.jsonl"; }
  std::filesystem::path usage() const { return dir / "usage.csv"; }
  std::filesystem::path manifest() const { return dir / "manifest.json"; }
  std::filesystem::path index(Provenance p) const {
    return dir / (std::string(to_string(p)) + ".simidx");
  }
  std::filesystem::path vectors() const { return dir / "journals.jvec"; }
  std::filesystem::path similarity_csv() const { return dir / "journal_similarity.csv"; }
};

// Validates the inputs, writes canonical articles.jsonl / usage.csv and a
// manifest.json with counts, sparsity and the corpus fingerprint.
Corpus ingest(const std::filesystem::path& articles, const std::optional<std::filesystem::path>& usage,
              const std::filesystem::path& out_dir);

std::string manifest_json(const Corpus& corpus);

// Loads the corpus files of a data directory (usage.csv optional).
Corpus load_corpus_dir(const std::filesystem::path& dir);

// Everything a read-only consumer needs. Derived artifacts are optional;
// when present their recorded fingerprint must match the corpus.
struct Workspace {
  Corpus corpus;
  std::optional<ItemSimilarityIndex> citation;
  std::optional<ItemSimilarityIndex> usage;
  std::optional<JournalVectorStore> vectors;
};

Workspace open_workspace(const std::filesystem::path& dir);

// Throws Format if any loaded artifact was built from a different corpus.
void check_fingerprints(const Workspace& ws);

}  // namespace scholarrec
