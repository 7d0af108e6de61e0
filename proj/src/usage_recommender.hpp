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
#include "recommendation.hpp"
#include "similarity_index.hpp"

#include <string_view>

namespace scholarrec {

inline constexpr std::size_t kDefaultMinCooccurrence = 2;

struct UsageIndexParams {
  std::size_t k = kDefaultNeighborhood;
  std::size_t min_cooccurrence = kDefaultMinCooccurrence;
  std::int64_t window = kDefaultSessionWindow;
};

// Co-download engine over a session x article matrix.
ItemSimilarityIndex build_usage_index(const SparseInteractionMatrix& sessions, std::size_t k,
                                      std::size_t min_cooccurrence);

// Sessionizes the corpus usage log and builds the index; the header records
// the window and corpus fingerprint.
ItemSimilarityIndex build_usage_index(const Corpus& corpus, const UsageIndexParams& params);

// The seed alone is the profile: returns its neighbour list cut to n. An
// article never downloaded gives an empty list; an id that is neither in the
// index nor in `corpus` (when given) throws NotFound.
RecommendationList recommend_by_usage(std::string_view seed, std::size_t n,
                                      const ItemSimilarityIndex& index,
                                      const Corpus* corpus = nullptr);

}  // namespace scholarrec
