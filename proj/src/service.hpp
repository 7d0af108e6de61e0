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

#include "workspace.hpp"

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>

namespace httplib {
class Server;
}

namespace scholarrec {

enum class EngineKind { Citation, Usage };

std::optional<EngineKind> parse_engine(std::string_view name);

// JSON bodies shared by the HTTP endpoints and the CLI, so both emit the same
// bytes for the same request. They throw Error (NotFound, NoText, ...).
std::string recommend_payload(const Workspace& ws, std::string_view seed, EngineKind engine,
                              std::size_t n);
std::string compare_payload(const Workspace& ws, std::string_view seed, std::size_t n);
std::string journal_similarity_payload(const Workspace& ws, std::string_view a, std::string_view b);

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path data_dir;
  std::size_t default_n = 10;
  std::string cors_origin = "*";
};

struct HttpResponse {
  int status = 200;
  std::string body;
};

using QueryParams = std::map<std::string, std::string, std::less<>>;

// Request router over an immutable Workspace. Until a workspace is attached
// every endpoint except /healthz answers 503.
class RecommenderService {
 public:
  explicit RecommenderService(std::size_t default_n = 10) : default_n_(default_n) {}

  void attach(std::shared_ptr<const Workspace> ws);
  void fail(std::string message);
  bool ready() const;

  HttpResponse handle(std::string_view path, const QueryParams& query) const;
  // `target` is "path?query" with URL-encoded parameters.
  HttpResponse handle_target(std::string_view target) const;

 private:
  std::shared_ptr<const Workspace> workspace() const;

  std::size_t default_n_;
  mutable std::mutex mu_;
  std::shared_ptr<const Workspace> ws_;
  std::string load_error_;
};

// HTTP/1.1 front end. start() binds, spawns the listener, and loads the
// workspace on a background thread; requests during loading get 503.
class HttpService {
 public:
  explicit HttpService(ServiceConfig config);
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  void start();
  int port() const noexcept { return port_; }
  void wait();
  void stop();

  const RecommenderService& router() const noexcept { return *router_; }

 private:
  ServiceConfig config_;
  std::shared_ptr<RecommenderService> router_;
  std::unique_ptr<httplib::Server> server_;
  std::thread listener_;
  std::thread loader_;
  int port_ = 0;
};

}  // namespace scholarrec
