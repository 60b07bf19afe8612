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

#include "eco/completion.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "eco/hashing.h"
#include "httplib.h"

namespace eco {
namespace {

using nlohmann::json;

json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("FixtureError", "cannot read " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error("FixtureError", p.string() + ": " + e.what());
  }
}

void check_fixture(const json& j, const std::string& where) {
  if (!j.is_object()) throw Error("FixtureError", where + ": not an object");
  for (const auto& [k, v] : j.items()) {
    const bool ok = v.is_string() ||
                    (v.is_array() && std::all_of(v.begin(), v.end(),
                                                 [](const json& e) {
                                                   return e.is_string();
                                                 }));
    if (!ok) throw Error("FixtureError", where + ": bad value for " + k);
  }
}

}  // namespace

void CompletionRequest::validate() const {
  if (!(temperature >= 0.0 && temperature <= 1.0)) {
    throw std::invalid_argument("temperature must be in [0, 1]");
  }
  if (max_tokens <= 0) throw std::invalid_argument("max_tokens must be > 0");
}

std::string prompt_key(std::string_view prompt) { return sha256_hex(prompt); }

HttpCompletionClient::HttpCompletionClient(
    std::string url, std::optional<std::string> credential,
    std::chrono::milliseconds timeout)
    : credential_(std::move(credential)), timeout_(timeout) {
  const size_t scheme = url.find("://");
  if (scheme == std::string::npos ||
      (url.compare(0, scheme, "http") != 0 &&
       url.compare(0, scheme, "https") != 0)) {
    throw std::invalid_argument("endpoint must be an http(s) URL: " + url);
  }
  const size_t slash = url.find('/', scheme + 3);
  origin_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url.substr(slash);
}

CompletionResponse HttpCompletionClient::complete(const CompletionRequest& req,
                                                  int /*sample_idx*/) {
  req.validate();
  httplib::Client cli(origin_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs =
      std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  cli.set_connection_timeout(secs.count(), usecs.count());
  cli.set_read_timeout(secs.count(), usecs.count());
  cli.set_write_timeout(secs.count(), usecs.count());
  httplib::Headers headers;
  if (credential_) headers.emplace("Authorization", "Bearer " + *credential_);

  const json body = {{"prompt", req.prompt},
                     {"temperature", req.temperature},
                     {"max_tokens", req.max_tokens}};
  auto res = cli.Post(path_, headers, body.dump(), "application/json");
  if (!res) {
    const auto err = res.error();
    if (err == httplib::Error::Read || err == httplib::Error::Write ||
        err == httplib::Error::ConnectionTimeout) {
      throw TimeoutError(origin_ + path_ + ": " + httplib::to_string(err));
    }
    throw ServiceError(0, origin_ + path_ + ": " + httplib::to_string(err));
  }
  if (res->status != 200) {
    throw ServiceError(res->status, "HTTP " + std::to_string(res->status));
  }
  try {
    const json reply = json::parse(res->body);
    return {reply.at("text").get<std::string>()};
  } catch (const json::exception& e) {
    throw ServiceError(res->status, std::string("malformed reply: ") + e.what());
  }
}

ReplayCompletionClient::ReplayCompletionClient(json fixture)
    : fixture_(std::move(fixture)) {
  check_fixture(fixture_, "fixture");
}

ReplayCompletionClient ReplayCompletionClient::load(
    const std::filesystem::path& path) {
  if (!std::filesystem::is_directory(path)) {
    return ReplayCompletionClient(read_json_file(path));
  }
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(path)) {
    if (e.is_regular_file() && e.path().extension() == ".json") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  json merged = json::object();
  for (const auto& f : files) {
    const json j = read_json_file(f);
    check_fixture(j, f.string());
    for (const auto& [k, v] : j.items()) {
      if (merged.contains(k) && merged[k] != v) {
        throw Error("FixtureError", "conflicting entries for " + k);
      }
      merged[k] = v;
    }
  }
  return ReplayCompletionClient(std::move(merged));
}

CompletionResponse ReplayCompletionClient::complete(
    const CompletionRequest& req, int sample_idx) {
  req.validate();
  const std::string key = prompt_key(req.prompt);
  auto it = fixture_.find(key);
  if (it == fixture_.end()) throw ReplayMiss(key);
  if (it->is_string()) return {it->get<std::string>()};
  if (sample_idx < 0 || static_cast<size_t>(sample_idx) >= it->size()) {
    throw ReplayMiss(key + "[" + std::to_string(sample_idx) + "]");
  }
  return {(*it)[sample_idx].get<std::string>()};
}

CompletionResponse RecordingCompletionClient::complete(
    const CompletionRequest& req, int sample_idx) {
  CompletionResponse res = inner_.complete(req, sample_idx);
  std::lock_guard<std::mutex> lock(mu_);
  seen_[prompt_key(req.prompt)][sample_idx] = res.text;
  return res;
}

json RecordingCompletionClient::fixture() const {
  std::lock_guard<std::mutex> lock(mu_);
  json out = json::object();
  for (const auto& [key, samples] : seen_) {
    json arr = json::array();
    for (const auto& [idx, text] : samples) {
      while (arr.size() < static_cast<size_t>(idx)) arr.push_back("");
      arr.push_back(text);
    }
    out[key] = std::move(arr);
  }
  return out;
}

void RecordingCompletionClient::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("IoError", "cannot write " + path.string());
  out << fixture().dump(2) << "\n";
}

std::unique_ptr<CompletionClient> make_client(std::string_view locator) {
  if (locator.starts_with("replay:")) {
    return std::make_unique<ReplayCompletionClient>(
        ReplayCompletionClient::load(std::string(locator.substr(7))));
  }
  std::optional<std::string> credential;
  if (const char* v = std::getenv(kCredentialEnv); v != nullptr && *v != '\0') {
    credential = v;
  }
  return std::make_unique<HttpCompletionClient>(std::string(locator),
                                                std::move(credential));
}

}  // namespace eco
