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

#include "interaction_matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace scholarrec {

enum class Provenance : std::uint8_t { Citation = 1, Usage = 2 };

const char* to_string(Provenance p) noexcept;

// k == kUnlimited keeps every non-zero neighbour.
inline constexpr std::size_t kUnlimited = 0;
inline constexpr std::size_t kDefaultNeighborhood = 50;

struct IndexParams {
  std::size_t k = kDefaultNeighborhood;
  std::size_t min_cooccurrence = 1;
};

// Build metadata persisted in the .simidx header.
struct IndexMetadata {
  Provenance provenance = Provenance::Citation;
  std::size_t k = kDefaultNeighborhood;
  std::size_t min_cooccurrence = 1;
  std::int64_t window = 0;  // session window, 0 for citation indices
  std::uint64_t corpus_fingerprint = 0;

  bool operator==(const IndexMetadata&) const = default;
};

struct Neighbor {
  std::uint32_t item;  // index into ItemSimilarityIndex::item_ids()
  double score;        // cosine, in (0, 1]

  bool operator==(const Neighbor&) const = default;
};

// Precomputed item-item cosine neighbourhoods. Item ids are ascending, so
// tie-breaking by item index is the same as tie-breaking by ArticleId.
class ItemSimilarityIndex {
 public:
  ItemSimilarityIndex() = default;
  ItemSimilarityIndex(IndexMetadata meta, std::vector<ArticleId> item_ids,
                      std::vector<std::vector<Neighbor>> neighbors);

  const IndexMetadata& metadata() const noexcept { return meta_; }
  const std::vector<ArticleId>& item_ids() const noexcept { return item_ids_; }
  std::size_t size() const noexcept { return item_ids_.size(); }

  std::optional<std::uint32_t> find(std::string_view id) const;
  std::span<const Neighbor> neighbors(std::uint32_t item) const noexcept {
    return neighbors_[item];
  }

  bool operator==(const ItemSimilarityIndex&) const = default;

 private:
  IndexMetadata meta_;
  std::vector<ArticleId> item_ids_;
  std::vector<std::vector<Neighbor>> neighbors_;
};

// Computes one item's ranked neighbour list. An optional masked link is
// treated as absent, which lets leave-one-out evaluation score a profile on
// the matrix minus one citation without rebuilding anything.
class NeighborScanner {
 public:
  struct MaskedLink {
    SparseInteractionMatrix::Index row;
    SparseInteractionMatrix::Index col;
  };

  NeighborScanner(const SparseInteractionMatrix& m, IndexParams params,
                  std::optional<MaskedLink> mask = std::nullopt);

  std::vector<Neighbor> scan(std::uint32_t item);

 private:
  bool masked(SparseInteractionMatrix::Index r, SparseInteractionMatrix::Index c) const {
    return mask_ && mask_->row == r && mask_->col == c;
  }
  std::size_t actor_count(std::uint32_t item) const;

  const SparseInteractionMatrix& m_;
  IndexParams params_;
  std::optional<MaskedLink> mask_;
  std::vector<std::uint32_t> shared_;
  std::vector<std::uint32_t> touched_;
};

// sim(i, j) = |A_i n A_j| / sqrt(|A_i| |A_j|) over the matrix columns. Pairs
// sharing fewer than params.min_cooccurrence actors are dropped before the
// top-k cut. Columns with no actors get an empty list.
ItemSimilarityIndex build_similarity_index(const SparseInteractionMatrix& m,
                                           const IndexParams& params,
                                           IndexMetadata meta = {});

// Binary .simidx: magic "SIMIDX\0\0", u32 version, then metadata and per-item
// neighbour lists, all little-endian.
void write_index(std::ostream& out, const ItemSimilarityIndex& index);
ItemSimilarityIndex read_index(std::istream& in);
void save_index(const std::filesystem::path& path, const ItemSimilarityIndex& index);
ItemSimilarityIndex load_index(const std::filesystem::path& path);

}  // namespace scholarrec
