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

namespace scholarrec {

// Synthetic multi-topic corpus. Topics have disjoint core vocabularies plus
// a shared filler pool; each journal belongs to one topic. References cross
// topics with probability cross_topic_citation, while each download in a
// session stays in the session's topic with probability within_topic_session.
struct FixtureParams {
  std::size_t topics = 2;
  std::size_t journals_per_topic = 3;
  std::size_t articles = 400;
  std::uint64_t rng_seed = 42;

  double cross_topic_citation = 0.3;
  double within_topic_session = 0.9;
  double citation_coverage = 0.5;  // share of articles that carry references
  std::size_t min_references = 4;
  std::size_t max_references = 10;
  std::size_t sessions = 1200;
  std::size_t actors = 150;
  std::size_t min_session_length = 2;
  std::size_t max_session_length = 6;
  std::size_t tokens_per_article = 80;

  void validate() const;
};

struct Fixture {
  std::vector<Article> articles;
  std::vector<UsageEvent> usage;
  std::vector<ArticleId> seeds;  // every article id, ascending
  std::vector<std::size_t> topic_of;  // parallel to articles
};

Fixture generate_fixture(const FixtureParams& params);

}  // namespace scholarrec
