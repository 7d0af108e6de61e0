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


// Scratch directories and on-disk workspaces for tests.

#pragma once

#include "citation_recommender.hpp"
#include "semantic_map.hpp"
#include "usage_recommender.hpp"
#include "workspace.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

namespace testing_support {

// Removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("scholarrec-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::string str() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Writes the corpus files and every derived artifact with default settings.
inline void write_workspace(const std::filesystem::path& dir, const scholarrec::Corpus& corpus) {
  using namespace scholarrec;
  const WorkspaceLayout layout{dir};
  std::filesystem::create_directories(dir);
  {
    std::ofstream a(layout.articles(), std::ios::binary);
    write_articles(a, corpus);
    std::ofstream u(layout.usage(), std::ios::binary);
    write_usage(u, corpus);
  }
  save_index(layout.index(Provenance::Citation), build_citation_index(corpus));
  save_index(layout.index(Provenance::Usage), build_usage_index(corpus, {}));
  save_vector_store(layout.vectors(), build_journal_vectors(corpus, {}));
}

}  // namespace testing_support
