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

#include "citation_recommender.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace scholarrec {

ItemSimilarityIndex build_citation_index(const Corpus& corpus, std::size_t k) {
  IndexMetadata meta;
  meta.provenance = Provenance::Citation;
  meta.corpus_fingerprint = corpus.fingerprint();
  return build_similarity_index(build_citation_matrix(corpus), {k, 1}, meta);
}

RecommendationList recommend_for_profile(std::span<const ArticleId> profile,
                                         std::string_view seed, std::size_t n,
                                         const ItemSimilarityIndex& index) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");

  // Resolve the profile in ascending item order so every candidate's score
  // is summed in one fixed order.
  std::vector<std::uint32_t> items;
  for (const auto& id : profile) {
    if (auto i = index.find(id)) items.push_back(*i);
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());

  std::vector<bool> excluded(index.size(), false);
  for (auto i : items) excluded[i] = true;
  if (auto s = index.find(seed)) excluded[*s] = true;

  std::unordered_map<std::uint32_t, double> scores;
  for (auto i : items) {
    for (const auto& nb : index.neighbors(i)) {
      if (!excluded[nb.item]) scores[nb.item] += nb.score;
    }
  }

  std::vector<std::pair<std::uint32_t, double>> ranked(scores.begin(), scores.end());
  std::erase_if(ranked, [](const auto& p) { return !(p.second > 0.0); });
  auto before = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  const auto take = std::min(n, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                    ranked.end(), before);

  RecommendationList out;
  out.reserve(take);
  for (std::size_t r = 0; r < take; ++r) {
    out.push_back({index.item_ids()[ranked[r].first], ranked[r].second, r + 1});
  }
  return out;
}

RecommendationList recommend(std::string_view seed, std::size_t n,
                             const ItemSimilarityIndex& index, const Corpus& corpus) {
  const Article* article = corpus.find(seed);
  if (article == nullptr) {
    throw Error(ErrorCode::NotFound, "unknown article '" + std::string(seed) + "'");
  }
  return recommend_for_profile(article->references, seed, n, index);
}

}  // namespace scholarrec
