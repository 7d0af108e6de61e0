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
#include "oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace scholarrec;

namespace {

std::vector<Article> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_articles(in);
}

std::vector<UsageEvent> parse_log(const std::string& text) {
  std::istringstream in(text);
  return parse_usage(in);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("three well-formed records load with their journal registry") {
  const auto articles = parse(
      R"({"id":"a1","title":"One","journal":"J1","year":2001,"references":[]})"
      "\n"
      R"({"id":"a2","title":"Two","journal":"J2","year":2002,"references":["a1"]})"
      "\n\n"
      R"({"id":"a3","title":"Three","journal":"J1","year":2003,"references":["a1","a2"],"full_text":"text"})"
      "\n");
  const Corpus corpus(articles);
  CHECK(corpus.articles().size() == 3);
  CHECK(corpus.journals() == std::vector<JournalId>{"J1", "J2"});
  CHECK(corpus.members("J1").size() == 2);
  REQUIRE(corpus.find("a3") != nullptr);
  CHECK(corpus.find("a3")->full_text == std::optional<std::string>("text"));
  CHECK_FALSE(corpus.find("a1")->full_text.has_value());
}

TEST_CASE("a self-citation is rejected with its line number") {
  const std::string text =
      R"({"id":"a1","title":"One","journal":"J","year":2001,"references":[]})"
      "\n"
      R"({"id":"a2","title":"Two","journal":"J","year":2002,"references":["a2"]})"
      "\n";
  CHECK(code_of([&] { parse(text); }) == ErrorCode::Parse);
  CHECK(message_of([&] { parse(text); }).find("line 2") != std::string::npos);
}

TEST_CASE("a dangling reference survives ingest") {
  const auto articles = parse(
      R"({"id":"a1","title":"One","journal":"J","year":2001,"references":["ghost"]})"
      "\n"
      R"({"id":"a2","title":"Two","journal":"J","year":2002,"references":["a1"]})"
      "\n");
  const Corpus corpus(articles);
  CHECK(corpus.find("a1")->references == std::vector<ArticleId>{"ghost"});
  CHECK_FALSE(corpus.contains("ghost"));
}

TEST_CASE("malformed and duplicate records are errors") {
  const std::string good =
      R"({"id":"a1","title":"One","journal":"J","year":2001,"references":[]})";
  CHECK(code_of([&] { parse(good + "\n" + good + "\n"); }) == ErrorCode::Parse);
  CHECK(message_of([&] { parse(good + "\n{not json\n"); }).find("line 2") != std::string::npos);
  CHECK(code_of([&] { parse(R"({"id":"","title":"t","journal":"J","year":1,"references":[]})"); }) ==
        ErrorCode::Parse);
  CHECK(code_of([&] { parse(R"({"id":"a","title":"t","journal":"J","year":"x","references":[]})"); }) ==
        ErrorCode::Parse);
  CHECK(code_of([&] { parse(R"({"id":"a","title":"t","journal":"J","year":1})"); }) ==
        ErrorCode::Parse);
  CHECK(code_of([&] { parse(R"({"id":"a","title":"t","journal":"","year":1,"references":[]})"); }) ==
        ErrorCode::Parse);
}

TEST_CASE("repeated references collapse to one link") {
  const auto articles =
      parse(R"({"id":"a","title":"t","journal":"J","year":1,"references":["b","c","b"]})");
  CHECK(articles.front().references == std::vector<ArticleId>{"b", "c"});
}

TEST_CASE("usage log parsing") {
  const auto events = parse_log("actor,article,timestamp\nu1,a,100\n\"u,2\",b,0\n");
  REQUIRE(events.size() == 2);
  CHECK(events[1].actor == "u,2");
  CHECK(events[0].timestamp == 100);

  CHECK(code_of([] { parse_log("user,article,timestamp\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_log("actor,article,timestamp\nu,a,1.5\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_log("actor,article,timestamp\nu,a,-1\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_log("actor,article,timestamp\nu,a,1e3\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_log("actor,article,timestamp\nu,a\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_log("actor,article,timestamp\n,a,1\n"); }) == ErrorCode::Parse);
}

TEST_CASE("canonical serialization round-trips and ignores input order") {
  auto articles = oracle::two_citers();
  articles[0].full_text = "Quoted \"text\"\nwith a newline";
  const Corpus corpus(articles, oracle::two_sessions());

  std::ostringstream a_out, u_out;
  write_articles(a_out, corpus);
  write_usage(u_out, corpus);
  std::istringstream a_in(a_out.str()), u_in(u_out.str());
  const Corpus again(parse_articles(a_in), parse_usage(u_in));
  CHECK(again.articles() == corpus.articles());
  CHECK(again.usage() == corpus.usage());
  CHECK(again.fingerprint() == corpus.fingerprint());

  std::reverse(articles.begin(), articles.end());
  auto usage = oracle::two_sessions();
  std::reverse(usage.begin(), usage.end());
  CHECK(Corpus(articles, usage).fingerprint() == corpus.fingerprint());

  articles[0].title += "!";
  CHECK(Corpus(articles, usage).fingerprint() != corpus.fingerprint());
}

TEST_CASE("csv escaping round-trips awkward fields") {
  for (const std::string field : {"plain", "with,comma", "with \"quote\"", "", " padded "}) {
    const auto line = csv_escape(field) + "," + csv_escape("x");
    const auto cells = split_csv_line(line);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0] == field);
  }
}
