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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace scholarrec {

// Lowercases ASCII, splits on anything that is not an ASCII letter or digit
// (bytes >= 0x80 are kept as word characters so UTF-8 words survive), then
// drops tokens shorter than 3 bytes and built-in English stopwords.
std::vector<std::string> tokenize(std::string_view text);

bool is_stopword(std::string_view token);

struct RandomIndexConfig {
  std::size_t dimension = 4096;
  std::size_t seed_entries = 16;  // non-zeros per index vector
  std::uint64_t rng_seed = 42;

  // Requires dimension >= seed_entries >= 2 and seed_entries even.
  void validate() const;

  bool operator==(const RandomIndexConfig&) const = default;
};

struct SparseTermVector {
  std::vector<std::uint32_t> positions;  // ascending, distinct
  std::vector<double> values;            // +-1/sqrt(s), half of each sign
};

// Random-index vectors for terms. Stateless: a term's vector is a pure
// function of (term, rng_seed, dimension, seed_entries).
class TermVectorStore {
 public:
  explicit TermVectorStore(RandomIndexConfig config);

  const RandomIndexConfig& config() const noexcept { return config_; }
  SparseTermVector sparse(std::string_view term) const;
  std::vector<double> dense(std::string_view term) const;

 private:
  RandomIndexConfig config_;
};

struct JournalVector {
  JournalId journal;
  std::vector<double> vector;  // unit norm unless empty()
  std::size_t article_count = 0;  // members that contributed text
  std::size_t token_count = 0;

  bool empty() const noexcept { return token_count == 0; }
  bool operator==(const JournalVector&) const = default;
};

// Sum over every token of every member article's full text (with
// multiplicity) of the token's term vector, L2-normalized. Terms are
// accumulated in sorted order, so the result depends only on the multiset.
JournalVector journal_vector(std::string_view journal, const Corpus& corpus,
                             const TermVectorStore& terms);

class JournalVectorStore {
 public:
  JournalVectorStore() = default;
  JournalVectorStore(RandomIndexConfig config, std::uint64_t corpus_fingerprint,
                     std::vector<JournalVector> journals);

  const RandomIndexConfig& config() const noexcept { return config_; }
  std::uint64_t corpus_fingerprint() const noexcept { return fingerprint_; }
  const std::vector<JournalVector>& journals() const noexcept { return journals_; }
  const JournalVector* find(std::string_view journal) const;

  bool operator==(const JournalVectorStore&) const = default;

 private:
  RandomIndexConfig config_;
  std::uint64_t fingerprint_ = 0;
  std::vector<JournalVector> journals_;  // ascending journal id
};

JournalVectorStore build_journal_vectors(const Corpus& corpus, const RandomIndexConfig& config);

// Cosine of two journal vectors, clamped to [-1, 1]; exactly 1.0 for a = b.
// NotFound for an unknown journal, NoText when either has no text.
double journal_similarity(std::string_view a, std::string_view b,
                          const JournalVectorStore& store);

// Similarity of the journals the two articles were published in. NotFound
// when either article has no record in the corpus.
double seed_to_recommendation_similarity(std::string_view seed, std::string_view rec,
                                         const Corpus& corpus, const JournalVectorStore& store);

struct JournalSimilarityMatrix {
  std::vector<JournalId> journal_ids;
  std::vector<double> values;  // row-major, journal_ids.size() squared

  double at(std::size_t i, std::size_t j) const { return values[i * journal_ids.size() + j]; }
};

// Pairwise matrix over non-empty journals. Throws NoText if there are none.
JournalSimilarityMatrix export_similarity_matrix(const JournalVectorStore& store);
void write_similarity_csv(std::ostream& out, const JournalSimilarityMatrix& m);

// Binary store: magic "JVECSTOR", u32 version, d, s, rng_seed, fingerprint,
// then (journal id, counts, d doubles) records.
void write_vector_store(std::ostream& out, const JournalVectorStore& store);
JournalVectorStore read_vector_store(std::istream& in);
void save_vector_store(const std::filesystem::path& path, const JournalVectorStore& store);
JournalVectorStore load_vector_store(const std::filesystem::path& path);

}  // namespace scholarrec
