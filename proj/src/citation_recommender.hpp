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

#include <span>
#include <string_view>

namespace scholarrec {

// Citation engine: every article with references is a "user" whose boolean
// ratings are the articles it cites. Items are cited articles.
ItemSimilarityIndex build_citation_index(const Corpus& corpus,
                                         std::size_t k = kDefaultNeighborhood);

// Scores every indexed item j as sum_{i in profile} sim(i, j), reading sim
// from the (possibly truncated) neighbour lists. `seed` and the profile
// members are never returned. Ties rank by ascending ArticleId.
RecommendationList recommend_for_profile(std::span<const ArticleId> profile,
                                         std::string_view seed, std::size_t n,
                                         const ItemSimilarityIndex& index);

// Profile = the seed article's reference list. Throws NotFound when the seed
// is not an article of `corpus`, InvalidArgument when n == 0.
RecommendationList recommend(std::string_view seed, std::size_t n,
                             const ItemSimilarityIndex& index, const Corpus& corpus);

}  // namespace scholarrec
