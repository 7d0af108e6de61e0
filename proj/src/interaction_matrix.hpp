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
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace scholarrec {

// Boolean actor x item matrix in compressed-row form. Both engines feed on
// it: citing-article x cited-article, and session x downloaded-article.
class SparseInteractionMatrix {
 public:
  using Index = std::uint32_t;

  SparseInteractionMatrix() = default;

  // `links` may be in any order and contain duplicates; they are collapsed.
  // Throws InvalidArgument if a link is out of range or an id repeats.
  SparseInteractionMatrix(std::vector<std::string> row_ids, std::vector<ArticleId> col_ids,
                          std::vector<std::pair<Index, Index>> links);

  const std::vector<std::string>& row_ids() const noexcept { return row_ids_; }
  const std::vector<ArticleId>& col_ids() const noexcept { return col_ids_; }

  std::size_t rows() const noexcept { return row_ids_.size(); }
  std::size_t cols() const noexcept { return col_ids_.size(); }
  std::size_t link_count() const noexcept { return link_count_; }

  // Ascending column indices linked to `row`.
  std::span<const Index> row(Index r) const noexcept { return row_cols_[r]; }
  // Ascending row indices linked to `col` (the item's actor set).
  std::span<const Index> column(Index c) const noexcept { return col_rows_[c]; }

  bool contains(Index r, Index c) const;

 private:
  std::vector<std::string> row_ids_;
  std::vector<ArticleId> col_ids_;
  std::vector<std::vector<Index>> row_cols_;
  std::vector<std::vector<Index>> col_rows_;
  std::size_t link_count_ = 0;
};

// Rows are articles with at least one reference (ascending id); columns are
// every reference target, dangling ones included (ascending id).
SparseInteractionMatrix build_citation_matrix(const Corpus& corpus);

// Same as above over an explicit article list, used when a profile is masked.
SparseInteractionMatrix build_citation_matrix(std::span<const Article> articles);

inline constexpr std::int64_t kDefaultSessionWindow = 1800;

// Splits each actor's events into sessions at gaps strictly greater than
// `window` seconds. Session row ids are "<actor>#<n>" with n counting from 0.
// Throws InvalidArgument when window <= 0.
SparseInteractionMatrix sessionize(std::span<const UsageEvent> events,
                                   std::int64_t window = kDefaultSessionWindow);

// links / (rows * cols); zero for a degenerate matrix.
double sparsity(const SparseInteractionMatrix& m);

}  // namespace scholarrec
