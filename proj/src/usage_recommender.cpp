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

#include "usage_recommender.hpp"

#include <algorithm>

namespace scholarrec {

ItemSimilarityIndex build_usage_index(const SparseInteractionMatrix& sessions, std::size_t k,
                                      std::size_t min_cooccurrence) {
  IndexMetadata meta;
  meta.provenance = Provenance::Usage;
  return build_similarity_index(sessions, {k, min_cooccurrence}, meta);
}

ItemSimilarityIndex build_usage_index(const Corpus& corpus, const UsageIndexParams& params) {
  IndexMetadata meta;
  meta.provenance = Provenance::Usage;
  meta.window = params.window;
  meta.corpus_fingerprint = corpus.fingerprint();
  return build_similarity_index(sessionize(corpus.usage(), params.window),
                                {params.k, params.min_cooccurrence}, meta);
}

RecommendationList recommend_by_usage(std::string_view seed, std::size_t n,
                                      const ItemSimilarityIndex& index, const Corpus* corpus) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  const auto item = index.find(seed);
  if (!item) {
    if (corpus != nullptr && corpus->contains(seed)) return {};
    throw Error(ErrorCode::NotFound, "unknown article '" + std::string(seed) + "'");
  }

  const auto list = index.neighbors(*item);
  const auto take = std::min(n, list.size());
  RecommendationList out;
  out.reserve(take);
  for (std::size_t r = 0; r < take; ++r) {
    out.push_back({index.item_ids()[list[r].item], list[r].score, r + 1});
  }
  return out;
}

}  // namespace scholarrec
