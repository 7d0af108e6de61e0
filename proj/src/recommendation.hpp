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

#include "common.hpp"

#include <cstddef>
#include <vector>

namespace scholarrec {

struct Recommendation {
  ArticleId article;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based

  bool operator==(const Recommendation&) const = default;
};

using RecommendationList = std::vector<Recommendation>;

}  // namespace scholarrec
