// Copyright 2026 The eco Authors.
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

// Completion service clients. The live client posts
//   {"prompt", "temperature", "max_tokens"}
// and reads {"text"}. Replay fixtures are JSON objects keyed by the SHA-256
// hex digest of the prompt; a value is either one text used for every sample
// or an array of texts indexed by sample.

#ifndef ECO_COMPLETION_H_
#define ECO_COMPLETION_H_

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eco/error.h"
#include "json.hpp"

namespace eco {

inline constexpr char kCredentialEnv[] = "ECO_COMPLETION_TOKEN";

struct CompletionRequest {
  std::string prompt;
  double temperature = 0.3;
  int max_tokens = 2048;

  // Throws std::invalid_argument unless temperature is in [0, 1] and
  // max_tokens is positive.
  void validate() const;
};

struct CompletionResponse {
  std::string text;
};

class TimeoutError : public Error {
 public:
  explicit TimeoutError(const std::string& msg) : Error("Timeout", msg) {}
};

class ServiceError : public Error {
 public:
  ServiceError(int status, const std::string& msg)
      : Error("ServiceError", msg), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

class ReplayMiss : public Error {
 public:
  explicit ReplayMiss(const std::string& key) : Error("ReplayMiss", key) {}
};

class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  // Must be safe to call from several threads at once.
  virtual CompletionResponse complete(const CompletionRequest& req,
                                      int sample_idx) = 0;
};

class HttpCompletionClient : public CompletionClient {
 public:
  // `url` is http://host[:port]/path or https://...
  HttpCompletionClient(std::string url, std::optional<std::string> credential,
                       std::chrono::milliseconds timeout =
                           std::chrono::seconds(120));
  CompletionResponse complete(const CompletionRequest& req,
                              int sample_idx) override;

 private:
  std::string origin_;
  std::string path_;
  std::optional<std::string> credential_;
  std::chrono::milliseconds timeout_;
};

class ReplayCompletionClient : public CompletionClient {
 public:
  explicit ReplayCompletionClient(nlohmann::json fixture);
  // A file, or a directory whose *.json files are merged. A key recorded
  // with different values in two files is an error.
  static ReplayCompletionClient load(const std::filesystem::path& path);

  CompletionResponse complete(const CompletionRequest& req,
                              int sample_idx) override;

 private:
  nlohmann::json fixture_;
};

// Forwards to another client and remembers every response in fixture form.
class RecordingCompletionClient : public CompletionClient {
 public:
  explicit RecordingCompletionClient(CompletionClient& inner) : inner_(inner) {}
  CompletionResponse complete(const CompletionRequest& req,
                              int sample_idx) override;

  nlohmann::json fixture() const;
  void save(const std::filesystem::path& path) const;

 private:
  CompletionClient& inner_;
  mutable std::mutex mu_;
  std::map<std::string, std::map<int, std::string>> seen_;
};

std::string prompt_key(std::string_view prompt);

// "replay:<path>" or an http(s) URL. The credential for live endpoints is
// read from kCredentialEnv.
std::unique_ptr<CompletionClient> make_client(std::string_view locator);

}  // namespace eco

#endif  // ECO_COMPLETION_H_
