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

#include "interaction_matrix.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace scholarrec {

namespace {

std::unordered_map<std::string, SparseInteractionMatrix::Index> index_of(
    const std::vector<std::string>& ids) {
  std::unordered_map<std::string, SparseInteractionMatrix::Index> out;
  out.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out.emplace(ids[i], static_cast<SparseInteractionMatrix::Index>(i));
  }
  return out;
}

}  // namespace

SparseInteractionMatrix::SparseInteractionMatrix(std::vector<std::string> row_ids,
                                                 std::vector<ArticleId> col_ids,
                                                 std::vector<std::pair<Index, Index>> links)
    : row_ids_(std::move(row_ids)), col_ids_(std::move(col_ids)) {
  if (row_ids_.size() > std::numeric_limits<Index>::max() ||
      col_ids_.size() > std::numeric_limits<Index>::max()) {
    throw Error(ErrorCode::InvalidArgument, "matrix dimensions exceed index range");
  }
  if (std::unordered_set<std::string>(row_ids_.begin(), row_ids_.end()).size() != row_ids_.size() ||
      std::unordered_set<std::string>(col_ids_.begin(), col_ids_.end()).size() != col_ids_.size()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate row or column id");
  }

  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());

  row_cols_.resize(row_ids_.size());
  col_rows_.resize(col_ids_.size());
  for (auto [r, c] : links) {
    if (r >= row_ids_.size() || c >= col_ids_.size()) {
      throw Error(ErrorCode::InvalidArgument, "link outside matrix bounds");
    }
    // Sorted (r, c) order keeps both adjacency lists ascending.
    row_cols_[r].push_back(c);
    col_rows_[c].push_back(r);
  }
  link_count_ = links.size();
}

bool SparseInteractionMatrix::contains(Index r, Index c) const {
  if (r >= row_cols_.size()) return false;
  const auto& cols = row_cols_[r];
  return std::binary_search(cols.begin(), cols.end(), c);
}

SparseInteractionMatrix build_citation_matrix(const Corpus& corpus) {
  return build_citation_matrix(corpus.articles());
}

SparseInteractionMatrix build_citation_matrix(std::span<const Article> articles) {
  std::vector<std::string> rows;
  std::vector<ArticleId> cols;
  for (const auto& a : articles) {
    if (a.references.empty()) continue;
    rows.push_back(a.id);
    cols.insert(cols.end(), a.references.begin(), a.references.end());
  }
  std::sort(rows.begin(), rows.end());
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());

  const auto row_index = index_of(rows);
  const auto col_index = index_of(cols);
  std::vector<std::pair<SparseInteractionMatrix::Index, SparseInteractionMatrix::Index>> links;
  for (const auto& a : articles) {
    if (a.references.empty()) continue;
    const auto r = row_index.at(a.id);
    for (const auto& ref : a.references) links.emplace_back(r, col_index.at(ref));
  }
  return SparseInteractionMatrix(std::move(rows), std::move(cols), std::move(links));
}

SparseInteractionMatrix sessionize(std::span<const UsageEvent> events, std::int64_t window) {
  if (window <= 0) throw Error(ErrorCode::InvalidArgument, "session window must be positive");

  std::vector<const UsageEvent*> sorted;
  sorted.reserve(events.size());
  for (const auto& e : events) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](const UsageEvent* a, const UsageEvent* b) {
    return std::tie(a->actor, a->timestamp, a->article) <
           std::tie(b->actor, b->timestamp, b->article);
  });

  std::vector<ArticleId> cols;
  cols.reserve(sorted.size());
  for (const auto* e : sorted) cols.push_back(e->article);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  const auto col_index = index_of(cols);

  std::vector<std::string> rows;
  std::vector<std::pair<SparseInteractionMatrix::Index, SparseInteractionMatrix::Index>> links;
  const UsageEvent* prev = nullptr;
  std::size_t session_no = 0;
  for (const auto* e : sorted) {
    const bool same_actor = prev != nullptr && prev->actor == e->actor;
    if (!same_actor) {
      session_no = 0;
      rows.push_back(e->actor + "#0");
    } else if (e->timestamp - prev->timestamp > window) {
      rows.push_back(e->actor + "#" + std::to_string(++session_no));
    }
    links.emplace_back(static_cast<SparseInteractionMatrix::Index>(rows.size() - 1),
                       col_index.at(e->article));
    prev = e;
  }
  return SparseInteractionMatrix(std::move(rows), std::move(cols), std::move(links));
}

double sparsity(const SparseInteractionMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return static_cast<double>(m.link_count()) /
         (static_cast<double>(m.rows()) * static_cast<double>(m.cols()));
}

}  // namespace scholarrec
