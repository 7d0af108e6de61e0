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

#include "semantic_map.hpp"
#include "binary_io.hpp"
#include "format.hpp"
#include "hashing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>

namespace scholarrec {

namespace {

// English function words. Kept sorted for binary search.
constexpr std::array<std::string_view, 122> kStopwords = {
    "about",   "above",   "after",   "again",   "against", "all",     "also",    "among",
    "and",     "any",     "are",     "because", "been",    "before",  "being",   "below",
    "between", "both",    "but",     "can",     "could",   "did",     "does",    "doing",
    "down",    "during",  "each",    "either",  "else",    "ever",    "every",   "few",
    "for",     "from",    "further", "had",     "has",     "have",    "having",  "her",
    "here",    "hers",    "herself", "him",     "himself", "his",     "how",     "however",
    "into",    "its",     "itself",  "just",    "least",   "less",    "may",     "might",
    "more",    "most",    "much",    "must",    "myself",  "neither", "nor",     "not",
    "now",     "off",     "once",    "one",     "only",    "other",   "ought",   "our",
    "ours",    "ourselves", "out",   "over",    "own",     "same",    "shall",   "she",
    "should",  "since",   "some",    "such",    "than",    "that",    "the",     "their",
    "theirs",  "them",    "themselves", "then", "there",   "therefore", "these", "they",
    "this",    "those",   "though",  "through", "thus",    "too",     "under",   "until",
    "upon",    "very",    "was",     "were",    "what",    "when",    "where",   "whether",
    "which",   "while",   "who",     "whom",    "whose",   "why",     "will",    "with",
    "within",  "would",
};

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

constexpr std::string_view kStoreMagic{"JVECSTOR", 8};
constexpr std::uint32_t kStoreVersion = 1;

}  // namespace

bool is_stopword(std::string_view token) {
  return std::binary_search(kStopwords.begin(), kStopwords.end(), token);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.size() >= 3 && !is_stopword(cur)) out.push_back(cur);
    cur.clear();
  };
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

void RandomIndexConfig::validate() const {
  if (seed_entries < 2 || seed_entries % 2 != 0 || dimension < seed_entries ||
      dimension > (1u << 24)) {
    throw Error(ErrorCode::InvalidArgument,
                "random index config requires dimension >= seeds >= 2 with seeds even (got d=" +
                    std::to_string(dimension) + ", s=" + std::to_string(seed_entries) + ")");
  }
}

TermVectorStore::TermVectorStore(RandomIndexConfig config) : config_(config) {
  config_.validate();
}

SparseTermVector TermVectorStore::sparse(std::string_view term) const {
  const std::size_t s = config_.seed_entries;
  SplitMix64 rng(fnv1a64(term) ^ SplitMix64(config_.rng_seed).next());

  std::vector<std::uint32_t> drawn;
  drawn.reserve(s);
  while (drawn.size() < s) {
    const auto p = static_cast<std::uint32_t>(rng.below(config_.dimension));
    if (std::find(drawn.begin(), drawn.end(), p) == drawn.end()) drawn.push_back(p);
  }

  // First half of the draws are positive, second half negative.
  const double mag = 1.0 / std::sqrt(static_cast<double>(s));
  std::vector<std::size_t> order(s);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return drawn[a] < drawn[b]; });

  SparseTermVector v;
  v.positions.reserve(s);
  v.values.reserve(s);
  for (auto k : order) {
    v.positions.push_back(drawn[k]);
    v.values.push_back(k < s / 2 ? mag : -mag);
  }
  return v;
}

std::vector<double> TermVectorStore::dense(std::string_view term) const {
  std::vector<double> out(config_.dimension, 0.0);
  const auto v = sparse(term);
  for (std::size_t i = 0; i < v.positions.size(); ++i) out[v.positions[i]] = v.values[i];
  return out;
}

JournalVector journal_vector(std::string_view journal, const Corpus& corpus,
                             const TermVectorStore& terms) {
  JournalVector jv;
  jv.journal = std::string(journal);
  jv.vector.assign(terms.config().dimension, 0.0);

  std::map<std::string, std::size_t> counts;
  for (auto idx : corpus.members(journal)) {
    const auto& text = corpus.articles()[idx].full_text;
    if (!text) continue;
    const auto tokens = tokenize(*text);
    if (tokens.empty()) continue;
    ++jv.article_count;
    jv.token_count += tokens.size();
    for (const auto& t : tokens) ++counts[t];
  }

  for (const auto& [term, count] : counts) {
    const auto tv = terms.sparse(term);
    const double weight = static_cast<double>(count);
    for (std::size_t i = 0; i < tv.positions.size(); ++i) {
      jv.vector[tv.positions[i]] += weight * tv.values[i];
    }
  }

  double norm2 = 0.0;
  for (double x : jv.vector) norm2 += x * x;
  if (norm2 > 0.0) {
    const double norm = std::sqrt(norm2);
    for (double& x : jv.vector) x /= norm;
  } else {
    // Exact cancellation is treated like absent text.
    jv.token_count = 0;
    jv.article_count = 0;
  }
  return jv;
}

JournalVectorStore::JournalVectorStore(RandomIndexConfig config, std::uint64_t corpus_fingerprint,
                                       std::vector<JournalVector> journals)
    : config_(config), fingerprint_(corpus_fingerprint), journals_(std::move(journals)) {
  config_.validate();
  std::sort(journals_.begin(), journals_.end(),
            [](const JournalVector& a, const JournalVector& b) { return a.journal < b.journal; });
  for (std::size_t i = 0; i < journals_.size(); ++i) {
    if (journals_[i].vector.size() != config_.dimension) {
      throw Error(ErrorCode::InvalidArgument, "journal vector has wrong dimension");
    }
    if (i > 0 && journals_[i - 1].journal == journals_[i].journal) {
      throw Error(ErrorCode::InvalidArgument, "duplicate journal " + journals_[i].journal);
    }
  }
}

const JournalVector* JournalVectorStore::find(std::string_view journal) const {
  auto it = std::lower_bound(journals_.begin(), journals_.end(), journal,
                             [](const JournalVector& v, std::string_view j) { return v.journal < j; });
  return it != journals_.end() && it->journal == journal ? &*it : nullptr;
}

JournalVectorStore build_journal_vectors(const Corpus& corpus, const RandomIndexConfig& config) {
  const TermVectorStore terms(config);
  std::vector<JournalVector> out;
  out.reserve(corpus.journals().size());
  for (const auto& j : corpus.journals()) out.push_back(journal_vector(j, corpus, terms));
  return JournalVectorStore(config, corpus.fingerprint(), std::move(out));
}

double journal_similarity(std::string_view a, std::string_view b, const JournalVectorStore& store) {
  const auto* va = store.find(a);
  const auto* vb = store.find(b);
  if (va == nullptr || vb == nullptr) {
    throw Error(ErrorCode::NotFound,
                "unknown journal '" + std::string(va == nullptr ? a : b) + "'");
  }
  if (va->empty() || vb->empty()) {
    throw Error(ErrorCode::NoText,
                "journal '" + std::string(va->empty() ? a : b) + "' has no full text");
  }
  if (a == b) return 1.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < va->vector.size(); ++i) dot += va->vector[i] * vb->vector[i];
  return std::clamp(dot, -1.0, 1.0);
}

double seed_to_recommendation_similarity(std::string_view seed, std::string_view rec,
                                         const Corpus& corpus, const JournalVectorStore& store) {
  const Article* s = corpus.find(seed);
  const Article* r = corpus.find(rec);
  if (s == nullptr || r == nullptr) {
    throw Error(ErrorCode::NotFound,
                "no article record for '" + std::string(s == nullptr ? seed : rec) + "'");
  }
  return journal_similarity(s->journal, r->journal, store);
}

JournalSimilarityMatrix export_similarity_matrix(const JournalVectorStore& store) {
  JournalSimilarityMatrix m;
  for (const auto& j : store.journals()) {
    if (!j.empty()) m.journal_ids.push_back(j.journal);
  }
  if (m.journal_ids.empty()) throw Error(ErrorCode::NoText, "no journal has full text");
  const std::size_t n = m.journal_ids.size();
  m.values.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = journal_similarity(m.journal_ids[i], m.journal_ids[j], store);
      m.values[i * n + j] = v;
      m.values[j * n + i] = v;
    }
  }
  return m;
}

void write_similarity_csv(std::ostream& out, const JournalSimilarityMatrix& m) {
  out << "journal";
  for (const auto& id : m.journal_ids) out << ',' << csv_escape(id);
  out << '\n';
  for (std::size_t i = 0; i < m.journal_ids.size(); ++i) {
    out << csv_escape(m.journal_ids[i]);
    for (std::size_t j = 0; j < m.journal_ids.size(); ++j) out << ',' << format_double(m.at(i, j));
    out << '\n';
  }
}

void write_vector_store(std::ostream& out, const JournalVectorStore& store) {
  using namespace binio;
  out.write(kStoreMagic.data(), static_cast<std::streamsize>(kStoreMagic.size()));
  put_u32(out, kStoreVersion);
  const auto& cfg = store.config();
  put_u64(out, cfg.dimension);
  put_u64(out, cfg.seed_entries);
  put_u64(out, cfg.rng_seed);
  put_u64(out, store.corpus_fingerprint());
  put_u64(out, store.journals().size());
  for (const auto& j : store.journals()) {
    put_str(out, j.journal);
    put_u64(out, j.article_count);
    put_u64(out, j.token_count);
    for (double x : j.vector) put_f64(out, x);
  }
}

JournalVectorStore read_vector_store(std::istream& in) {
  using namespace binio;
  expect_magic(in, kStoreMagic);
  if (get_u32(in) != kStoreVersion) throw Error(ErrorCode::Format, "unsupported vector store version");
  RandomIndexConfig cfg;
  cfg.dimension = get_u64(in);
  cfg.seed_entries = get_u64(in);
  cfg.rng_seed = get_u64(in);
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::Format, e.what());
  }
  const auto fingerprint = get_u64(in);
  const auto count = get_u64(in);
  if (count > (1ULL << 24)) throw Error(ErrorCode::Format, "journal count out of range");
  std::vector<JournalVector> journals(count);
  for (auto& j : journals) {
    j.journal = get_str(in);
    j.article_count = get_u64(in);
    j.token_count = get_u64(in);
    j.vector.resize(cfg.dimension);
    for (double& x : j.vector) x = get_f64(in);
  }
  return JournalVectorStore(cfg, fingerprint, std::move(journals));
}

void save_vector_store(const std::filesystem::path& path, const JournalVectorStore& store) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  write_vector_store(out, store);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

JournalVectorStore load_vector_store(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return read_vector_store(in);
}

}  // namespace scholarrec
