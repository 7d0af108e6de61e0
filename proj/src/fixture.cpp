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

#include "fixture.hpp"
#include "hashing.hpp"
#include "semantic_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace scholarrec {

namespace {

constexpr std::size_t kCoreWordsPerTopic = 60;
constexpr std::size_t kWordsPerJournal = 12;
constexpr std::size_t kSharedWords = 40;

constexpr const char* kSyllables[] = {
    "ka", "lo", "mi", "ne", "ru", "sa", "ti", "vo", "pe", "da", "gu", "ho",
    "ba", "ze", "fi", "mo", "ta", "re", "li", "nu", "co", "be", "xi", "wa",
};

// Weighted sampler over a fixed item list with Zipf-like weights, so a few
// articles are popular and the tail is rarely touched.
class PopularitySampler {
 public:
  PopularitySampler() = default;
  PopularitySampler(std::vector<std::size_t> items, SplitMix64& rng) : items_(std::move(items)) {
    for (std::size_t i = items_.size(); i > 1; --i) {
      std::swap(items_[i - 1], items_[rng.below(i)]);
    }
    double total = 0.0;
    for (std::size_t r = 0; r < items_.size(); ++r) {
      total += 1.0 / std::pow(static_cast<double>(r) + 4.0, 0.9);
      cumulative_.push_back(total);
    }
  }

  bool empty() const { return items_.empty(); }

  std::size_t draw(SplitMix64& rng) const {
    const double x = rng.unit() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    if (it == cumulative_.end()) --it;
    return items_[static_cast<std::size_t>(it - cumulative_.begin())];
  }

 private:
  std::vector<std::size_t> items_;
  std::vector<double> cumulative_;
};

std::string make_word(SplitMix64& rng) {
  std::string w;
  const auto syllables = 3 + rng.below(2);
  for (std::uint64_t i = 0; i < syllables; ++i) w += kSyllables[rng.below(std::size(kSyllables))];
  return w;
}

std::vector<std::string> draw_unique_words(std::size_t count, std::set<std::string>& used,
                                           SplitMix64& rng) {
  std::vector<std::string> out;
  while (out.size() < count) {
    auto w = make_word(rng);
    if (is_stopword(w) || !used.insert(w).second) continue;
    out.push_back(std::move(w));
  }
  return out;
}

std::string article_id(std::size_t i, std::size_t total) {
  const int width = static_cast<int>(std::to_string(total).size());
  char buf[32];
  std::snprintf(buf, sizeof buf, "A%0*zu", width, i);
  return buf;
}

std::size_t draw_other_topic(std::size_t topic, std::size_t topics, SplitMix64& rng) {
  const auto k = rng.below(topics - 1);
  return k >= topic ? k + 1 : k;
}

}  // namespace

void FixtureParams::validate() const {
  if (topics < 2) throw Error(ErrorCode::InvalidArgument, "fixture needs at least 2 topics");
  if (journals_per_topic < 1) throw Error(ErrorCode::InvalidArgument, "journals-per-topic must be >= 1");
  if (articles < 2 * topics * (max_references + 1)) {
    throw Error(ErrorCode::InvalidArgument,
                "too few articles: need at least " + std::to_string(2 * topics * (max_references + 1)));
  }
  if (min_references < 1 || min_references > max_references) {
    throw Error(ErrorCode::InvalidArgument, "bad reference count range");
  }
  if (min_session_length < 1 || min_session_length > max_session_length) {
    throw Error(ErrorCode::InvalidArgument, "bad session length range");
  }
  if (actors < 1) throw Error(ErrorCode::InvalidArgument, "need at least one actor");
}

Fixture generate_fixture(const FixtureParams& params) {
  params.validate();
  SplitMix64 rng(params.rng_seed);

  std::set<std::string> used;
  const auto shared = draw_unique_words(kSharedWords, used, rng);
  std::vector<std::vector<std::string>> topic_words(params.topics);
  for (auto& tw : topic_words) tw = draw_unique_words(kCoreWordsPerTopic, used, rng);
  const std::size_t journal_count = params.topics * params.journals_per_topic;
  std::vector<std::vector<std::string>> journal_words(journal_count);
  for (auto& jw : journal_words) jw = draw_unique_words(kWordsPerJournal, used, rng);

  Fixture fx;
  fx.articles.resize(params.articles);
  fx.topic_of.resize(params.articles);
  std::vector<std::vector<std::size_t>> by_topic(params.topics);

  for (std::size_t i = 0; i < params.articles; ++i) {
    const std::size_t topic = i % params.topics;
    const std::size_t local = rng.below(params.journals_per_topic);
    const std::size_t journal = topic * params.journals_per_topic + local;
    fx.topic_of[i] = topic;
    by_topic[topic].push_back(i);

    Article& a = fx.articles[i];
    a.id = article_id(i, params.articles);
    a.journal = "J" + std::to_string(topic) + "-" + std::to_string(local);
    a.year = 2000 + static_cast<int>(rng.below(12));

    // 40% topic core, 30% journal-specific, 30% shared filler.
    std::string text;
    for (std::size_t t = 0; t < params.tokens_per_article; ++t) {
      const double u = rng.unit();
      const auto& pool = u < 0.4 ? topic_words[topic] : u < 0.7 ? journal_words[journal] : shared;
      if (!text.empty()) text += ' ';
      text += pool[rng.below(pool.size())];
    }
    a.full_text = std::move(text);
    a.title = "On " + topic_words[topic][rng.below(kCoreWordsPerTopic)] + " and " +
              journal_words[journal][rng.below(kWordsPerJournal)];
  }

  std::vector<PopularitySampler> cite_pop(params.topics);
  std::vector<PopularitySampler> use_pop(params.topics);
  for (std::size_t t = 0; t < params.topics; ++t) {
    cite_pop[t] = PopularitySampler(by_topic[t], rng);
    use_pop[t] = PopularitySampler(by_topic[t], rng);
  }

  for (std::size_t i = 0; i < params.articles; ++i) {
    if (rng.unit() >= params.citation_coverage) continue;
    const auto want = params.min_references +
                      rng.below(params.max_references - params.min_references + 1);
    std::set<std::size_t> refs;
    std::size_t attempts = 0;
    while (refs.size() < want && attempts++ < 50 * want) {
      const bool cross = rng.unit() < params.cross_topic_citation;
      const auto topic = cross ? draw_other_topic(fx.topic_of[i], params.topics, rng) : fx.topic_of[i];
      const auto target = cite_pop[topic].draw(rng);
      if (target != i) refs.insert(target);
    }
    for (auto r : refs) fx.articles[i].references.push_back(fx.articles[r].id);
  }

  // Sessions are spread over actors; consecutive sessions of one actor are a
  // day apart, downloads inside a session are at most five minutes apart.
  std::vector<std::int64_t> clock(params.actors, 1'600'000'000);
  for (std::size_t s = 0; s < params.sessions; ++s) {
    const auto actor = rng.below(params.actors);
    const auto topic = rng.below(params.topics);
    const auto length = params.min_session_length +
                        rng.below(params.max_session_length - params.min_session_length + 1);
    std::int64_t& t = clock[actor];
    t += 86'400;
    for (std::size_t d = 0; d < length; ++d) {
      const bool stay = rng.unit() < params.within_topic_session;
      const auto dt = stay ? topic : draw_other_topic(topic, params.topics, rng);
      const auto article = use_pop[dt].draw(rng);
      fx.usage.push_back({"u" + std::to_string(actor), fx.articles[article].id, t});
      t += 30 + static_cast<std::int64_t>(rng.below(270));
    }
  }

  fx.seeds.reserve(params.articles);
  for (const auto& a : fx.articles) fx.seeds.push_back(a.id);
  return fx;
}

}  // namespace scholarrec
