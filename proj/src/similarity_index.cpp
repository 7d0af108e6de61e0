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

#include "similarity_index.hpp"
#include "binary_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace scholarrec {

namespace {

constexpr std::string_view kMagic{"SIMIDX\0\0", 8};
constexpr std::uint32_t kVersion = 1;

bool ranks_before(const Neighbor& a, const Neighbor& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.item < b.item;
}

}  // namespace

const char* to_string(Provenance p) noexcept {
  return p == Provenance::Citation ? "citation" : "usage";
}

ItemSimilarityIndex::ItemSimilarityIndex(IndexMetadata meta, std::vector<ArticleId> item_ids,
                                         std::vector<std::vector<Neighbor>> neighbors)
    : meta_(meta), item_ids_(std::move(item_ids)), neighbors_(std::move(neighbors)) {
  if (neighbors_.size() != item_ids_.size()) {
    throw Error(ErrorCode::InvalidArgument, "neighbour table size mismatch");
  }
  if (!std::is_sorted(item_ids_.begin(), item_ids_.end()) ||
      std::adjacent_find(item_ids_.begin(), item_ids_.end()) != item_ids_.end()) {
    throw Error(ErrorCode::InvalidArgument, "item ids must be strictly ascending");
  }
  for (std::size_t i = 0; i < neighbors_.size(); ++i) {
    for (const auto& n : neighbors_[i]) {
      if (n.item >= item_ids_.size() || n.item == i || !(n.score > 0.0) || n.score > 1.0) {
        throw Error(ErrorCode::InvalidArgument, "invalid neighbour entry for " + item_ids_[i]);
      }
    }
  }
}

std::optional<std::uint32_t> ItemSimilarityIndex::find(std::string_view id) const {
  auto it = std::lower_bound(item_ids_.begin(), item_ids_.end(), id);
  if (it == item_ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::uint32_t>(it - item_ids_.begin());
}

NeighborScanner::NeighborScanner(const SparseInteractionMatrix& m, IndexParams params,
                                 std::optional<MaskedLink> mask)
    : m_(m), params_(params), mask_(mask), shared_(m.cols(), 0) {
  if (params_.min_cooccurrence < 1) {
    throw Error(ErrorCode::InvalidArgument, "min_cooccurrence must be >= 1");
  }
  if (mask_ && !m_.contains(mask_->row, mask_->col)) {
    throw Error(ErrorCode::InvalidArgument, "masked link is not in the matrix");
  }
}

std::size_t NeighborScanner::actor_count(std::uint32_t item) const {
  const std::size_t n = m_.column(item).size();
  return mask_ && mask_->col == item ? n - 1 : n;
}

std::vector<Neighbor> NeighborScanner::scan(std::uint32_t item) {
  std::vector<Neighbor> list;
  const std::size_t size_i = actor_count(item);
  if (size_i == 0) return list;

  touched_.clear();
  for (auto r : m_.column(item)) {
    if (masked(r, item)) continue;
    for (auto j : m_.row(r)) {
      if (j == item || masked(r, j)) continue;
      if (shared_[j]++ == 0) touched_.push_back(j);
    }
  }

  for (auto j : touched_) {
    if (shared_[j] >= params_.min_cooccurrence) {
      const double denom = std::sqrt(static_cast<double>(size_i) * static_cast<double>(actor_count(j)));
      list.push_back({j, static_cast<double>(shared_[j]) / denom});
    }
    shared_[j] = 0;
  }

  if (params_.k != kUnlimited && list.size() > params_.k) {
    std::partial_sort(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(params_.k),
                      list.end(), ranks_before);
    list.resize(params_.k);
  } else {
    std::sort(list.begin(), list.end(), ranks_before);
  }
  return list;
}

ItemSimilarityIndex build_similarity_index(const SparseInteractionMatrix& m,
                                           const IndexParams& params, IndexMetadata meta) {
  meta.k = params.k;
  meta.min_cooccurrence = params.min_cooccurrence;
  NeighborScanner scanner(m, params);
  std::vector<std::vector<Neighbor>> neighbors(m.cols());
  for (std::uint32_t i = 0; i < m.cols(); ++i) neighbors[i] = scanner.scan(i);
  return ItemSimilarityIndex(meta, m.col_ids(), std::move(neighbors));
}

void write_index(std::ostream& out, const ItemSimilarityIndex& index) {
  using namespace binio;
  const auto& meta = index.metadata();
  out.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
  put_u32(out, kVersion);
  put_u8(out, static_cast<std::uint8_t>(meta.provenance));
  put_u64(out, meta.k);
  put_u64(out, meta.min_cooccurrence);
  put_i64(out, meta.window);
  put_u64(out, meta.corpus_fingerprint);
  put_u64(out, index.size());
  for (const auto& id : index.item_ids()) put_str(out, id);
  for (std::uint32_t i = 0; i < index.size(); ++i) {
    const auto list = index.neighbors(i);
    put_u32(out, static_cast<std::uint32_t>(list.size()));
    for (const auto& nb : list) {
      put_u32(out, nb.item);
      put_f64(out, nb.score);
    }
  }
}

ItemSimilarityIndex read_index(std::istream& in) {
  using namespace binio;
  expect_magic(in, kMagic);
  if (get_u32(in) != kVersion) throw Error(ErrorCode::Format, "unsupported .simidx version");
  IndexMetadata meta;
  const auto prov = get_u8(in);
  if (prov != 1 && prov != 2) throw Error(ErrorCode::Format, "unknown index provenance");
  meta.provenance = static_cast<Provenance>(prov);
  meta.k = get_u64(in);
  meta.min_cooccurrence = get_u64(in);
  meta.window = get_i64(in);
  meta.corpus_fingerprint = get_u64(in);
  const auto count = get_u64(in);
  if (count > (1ULL << 32)) throw Error(ErrorCode::Format, "item count out of range");

  std::vector<ArticleId> ids;
  ids.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) ids.push_back(get_str(in));
  std::vector<std::vector<Neighbor>> neighbors(count);
  for (auto& list : neighbors) {
    const auto len = get_u32(in);
    if (len > count) throw Error(ErrorCode::Format, "neighbour list longer than item count");
    list.reserve(len);
    for (std::uint32_t j = 0; j < len; ++j) {
      const auto item = get_u32(in);
      list.push_back({item, get_f64(in)});
    }
  }
  try {
    return ItemSimilarityIndex(meta, std::move(ids), std::move(neighbors));
  } catch (const Error& e) {
    throw Error(ErrorCode::Format, std::string("corrupt .simidx: ") + e.what());
  }
}

void save_index(const std::filesystem::path& path, const ItemSimilarityIndex& index) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  write_index(out, index);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

ItemSimilarityIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return read_index(in);
}

}  // namespace scholarrec
