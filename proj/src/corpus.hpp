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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scholarrec {

// A bibliographic record. `references` are the article's boolean "ratings"
// when the citation engine treats the article as a user.
struct Article {
  ArticleId id;
  std::string title;
  JournalId journal;
  int year = 0;
  std::vector<ArticleId> references;
  std::optional<std::string> full_text;

  bool operator==(const Article&) const = default;
};

struct UsageEvent {
  ActorId actor;
  ArticleId article;
  std::int64_t timestamp = 0;  // whole seconds since epoch

  bool operator==(const UsageEvent&) const = default;
};

// Parses the line-delimited JSON article format. Blank lines are skipped.
// Duplicate references within a record are collapsed (first occurrence wins);
// self-citations, duplicate ids and malformed records raise ErrorCode::Parse
// with the 1-based line number in the message.
std::vector<Article> parse_articles(std::istream& in);
std::vector<Article> load_articles(const std::filesystem::path& path);

// Parses the `actor,article,timestamp` CSV usage log.
std::vector<UsageEvent> parse_usage(std::istream& in);
std::vector<UsageEvent> load_usage(const std::filesystem::path& path);

// Immutable article collection plus usage log. Articles are held sorted by id;
// usage events sorted by (actor, timestamp, article).
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Article> articles, std::vector<UsageEvent> usage = {});

  const std::vector<Article>& articles() const noexcept { return articles_; }
  const std::vector<UsageEvent>& usage() const noexcept { return usage_; }

  const Article* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  // Distinct journal ids in ascending order.
  const std::vector<JournalId>& journals() const noexcept { return journals_; }
  // Indices into articles() of the members of `journal`, ascending by id.
  const std::vector<std::size_t>& members(std::string_view journal) const;

  // Hash of the canonical serialization; ties derived artifacts to this corpus.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  std::vector<Article> articles_;
  std::vector<UsageEvent> usage_;
  std::vector<JournalId> journals_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_journal_;
  std::uint64_t fingerprint_ = 0;
};

// Canonical writers: same corpus in, same bytes out.
void write_articles(std::ostream& out, const Corpus& corpus);
void write_usage(std::ostream& out, const Corpus& corpus);

// Splits one CSV record honouring RFC 4180 double-quote escaping.
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_escape(std::string_view field);

}  // namespace scholarrec
