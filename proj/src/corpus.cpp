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

#include "corpus.hpp"
#include "hashing.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace scholarrec {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
}

std::string require_string(const nlohmann::json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    parse_fail(line, std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return in;
}

}  // namespace

std::vector<Article> parse_articles(std::istream& in) {
  std::vector<Article> out;
  std::unordered_set<std::string> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_cr(raw);
    if (is_blank(line)) continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      parse_fail(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) parse_fail(line_no, "record must be a JSON object");

    Article a;
    a.id = require_string(obj, "id", line_no);
    if (a.id.empty()) parse_fail(line_no, "empty article id");
    a.title = require_string(obj, "title", line_no);
    a.journal = require_string(obj, "journal", line_no);
    if (a.journal.empty()) parse_fail(line_no, "empty journal id");

    auto year = obj.find("year");
    if (year == obj.end() || !year->is_number_integer()) {
      parse_fail(line_no, "field 'year' must be an integer");
    }
    a.year = year->get<int>();

    auto refs = obj.find("references");
    if (refs == obj.end() || !refs->is_array()) {
      parse_fail(line_no, "field 'references' must be an array");
    }
    std::unordered_set<std::string> ref_seen;
    for (const auto& r : *refs) {
      if (!r.is_string() || r.get_ref<const std::string&>().empty()) {
        parse_fail(line_no, "references must be non-empty strings");
      }
      const auto& ref = r.get_ref<const std::string&>();
      if (ref == a.id) parse_fail(line_no, "article '" + a.id + "' cites itself");
      if (ref_seen.insert(ref).second) a.references.push_back(ref);
    }

    if (auto text = obj.find("full_text"); text != obj.end() && !text->is_null()) {
      if (!text->is_string()) parse_fail(line_no, "field 'full_text' must be a string");
      a.full_text = text->get<std::string>();
    }

    if (!seen.insert(a.id).second) parse_fail(line_no, "duplicate article id '" + a.id + "'");
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Article> load_articles(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_articles(in);
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw Error(ErrorCode::Parse, "unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<UsageEvent> parse_usage(std::istream& in) {
  std::vector<UsageEvent> out;
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = strip_cr(raw);
    if (!header_seen) {
      if (line != "actor,article,timestamp") {
        parse_fail(line_no, "expected header 'actor,article,timestamp'");
      }
      header_seen = true;
      continue;
    }
    if (is_blank(line)) continue;

    std::vector<std::string> fields;
    try {
      fields = split_csv_line(line);
    } catch (const Error& e) {
      parse_fail(line_no, e.what());
    }
    if (fields.size() != 3) parse_fail(line_no, "expected 3 fields");
    if (fields[0].empty() || fields[1].empty()) parse_fail(line_no, "empty actor or article id");

    // Whole non-negative seconds only; "12.5", "-3" and "1e3" are rejected.
    const std::string& ts = fields[2];
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), value);
    if (ts.empty() || ts.front() == '-' || ec != std::errc() || ptr != ts.data() + ts.size()) {
      parse_fail(line_no, "timestamp must be a non-negative integer number of seconds");
    }
    out.push_back({std::move(fields[0]), std::move(fields[1]), value});
  }
  if (!header_seen) parse_fail(1, "missing header 'actor,article,timestamp'");
  return out;
}

std::vector<UsageEvent> load_usage(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_usage(in);
}

Corpus::Corpus(std::vector<Article> articles, std::vector<UsageEvent> usage)
    : articles_(std::move(articles)), usage_(std::move(usage)) {
  std::sort(articles_.begin(), articles_.end(),
            [](const Article& a, const Article& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < articles_.size(); ++i) {
    Article& a = articles_[i];
    if (a.id.empty()) throw Error(ErrorCode::InvalidArgument, "empty article id");
    if (a.journal.empty()) {
      throw Error(ErrorCode::InvalidArgument, "article '" + a.id + "' has no journal");
    }
    if (!by_id_.emplace(a.id, i).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate article id '" + a.id + "'");
    }
    std::unordered_set<std::string> refs;
    std::vector<ArticleId> unique;
    for (auto& r : a.references) {
      if (r == a.id) throw Error(ErrorCode::InvalidArgument, "article '" + a.id + "' cites itself");
      if (r.empty()) throw Error(ErrorCode::InvalidArgument, "empty reference in '" + a.id + "'");
      if (refs.insert(r).second) unique.push_back(std::move(r));
    }
    a.references = std::move(unique);
    by_journal_[a.journal].push_back(i);
  }
  journals_.reserve(by_journal_.size());
  for (const auto& [j, _] : by_journal_) journals_.push_back(j);
  std::sort(journals_.begin(), journals_.end());

  for (const auto& e : usage_) {
    if (e.actor.empty() || e.article.empty()) {
      throw Error(ErrorCode::InvalidArgument, "usage event with empty actor or article");
    }
    if (e.timestamp < 0) throw Error(ErrorCode::InvalidArgument, "negative usage timestamp");
  }
  std::sort(usage_.begin(), usage_.end(), [](const UsageEvent& a, const UsageEvent& b) {
    return std::tie(a.actor, a.timestamp, a.article) < std::tie(b.actor, b.timestamp, b.article);
  });

  std::ostringstream canon;
  write_articles(canon, *this);
  write_usage(canon, *this);
  fingerprint_ = fnv1a64(canon.str());
}

const Article* Corpus::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &articles_[it->second];
}

const std::vector<std::size_t>& Corpus::members(std::string_view journal) const {
  static const std::vector<std::size_t> none;
  auto it = by_journal_.find(std::string(journal));
  return it == by_journal_.end() ? none : it->second;
}

void write_articles(std::ostream& out, const Corpus& corpus) {
  for (const auto& a : corpus.articles()) {
    nlohmann::ordered_json j;
    j["id"] = a.id;
    j["title"] = a.title;
    j["journal"] = a.journal;
    j["year"] = a.year;
    j["references"] = a.references;
    if (a.full_text) j["full_text"] = *a.full_text;
    out << j.dump() << '\n';
  }
}

void write_usage(std::ostream& out, const Corpus& corpus) {
  out << "actor,article,timestamp\n";
  for (const auto& e : corpus.usage()) {
    out << csv_escape(e.actor) << ',' << csv_escape(e.article) << ',' << e.timestamp << '\n';
  }
}

}  // namespace scholarrec
