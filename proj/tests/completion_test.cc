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

#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "eco/hashing.h"
#include "httplib.h"
#include "test_util.h"

namespace eco {
namespace {

using nlohmann::json;

class FakeService {
 public:
  FakeService() {
    server_.Post("/v1/complete", [this](const httplib::Request& req,
                                        httplib::Response& res) {
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      const json body = json::parse(req.body);
      res.set_content(json{{"text", "echo:" + body["prompt"].get<std::string>()}}
                          .dump(),
                      "application/json");
    });
    server_.Post("/fail", [](const httplib::Request&, httplib::Response& res) {
      res.status = 503;
    });
    server_.Post("/slow", [](const httplib::Request&, httplib::Response& res) {
      std::this_thread::sleep_for(std::chrono::milliseconds(1500));
      res.set_content(R"({"text":"late"})", "application/json");
    });
    server_.Post("/garbage", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("not json", "text/plain");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeService() {
    server_.stop();
    thread_.join();
  }

  std::string url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

  std::string last_body_;
  std::string last_auth_;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST(CompletionRequest, ValidatesTemperature) {
  CompletionRequest req{"p"};
  EXPECT_DOUBLE_EQ(req.temperature, 0.3);
  EXPECT_NO_THROW(req.validate());
  req.temperature = 1.0;
  EXPECT_NO_THROW(req.validate());
  req.temperature = 1.01;
  EXPECT_THROW(req.validate(), std::invalid_argument);
  req.temperature = -0.1;
  EXPECT_THROW(req.validate(), std::invalid_argument);
}

TEST(HttpClient, PostsPromptAndReadsText) {
  FakeService svc;
  HttpCompletionClient client(svc.url("/v1/complete"), "secret");
  const CompletionResponse res = client.complete({"hello", 0.3, 64}, 0);
  EXPECT_EQ(res.text, "echo:hello");
  const json body = json::parse(svc.last_body_);
  EXPECT_EQ(body["prompt"], "hello");
  EXPECT_DOUBLE_EQ(body["temperature"].get<double>(), 0.3);
  EXPECT_EQ(body["max_tokens"], 64);
  EXPECT_EQ(svc.last_auth_, "Bearer secret");
}

TEST(HttpClient, ErrorStatusIsServiceError) {
  FakeService svc;
  HttpCompletionClient client(svc.url("/fail"), std::nullopt);
  try {
    client.complete({"x"}, 0);
    FAIL() << "expected ServiceError";
  } catch (const ServiceError& e) {
    EXPECT_EQ(e.status(), 503);
  }
  HttpCompletionClient garbage(svc.url("/garbage"), std::nullopt);
  EXPECT_THROW(garbage.complete({"x"}, 0), ServiceError);
}

TEST(HttpClient, SlowServiceTimesOut) {
  FakeService svc;
  HttpCompletionClient client(svc.url("/slow"), std::nullopt,
                              std::chrono::milliseconds(300));
  EXPECT_THROW(client.complete({"x"}, 0), TimeoutError);
}

TEST(HttpClient, RejectsNonHttpLocator) {
  EXPECT_THROW(HttpCompletionClient("ftp://x", std::nullopt),
               std::invalid_argument);
}

TEST(ReplayClient, HitsBySampleAndMissesExplicitly) {
  const json fixture = {{sha256_hex("p1"), "same"},
                        {sha256_hex("p2"), json::array({"s0", "s1"})}};
  ReplayCompletionClient client(fixture);
  EXPECT_EQ(client.complete({"p1"}, 0).text, "same");
  EXPECT_EQ(client.complete({"p1"}, 4).text, "same");
  EXPECT_EQ(client.complete({"p2"}, 1).text, "s1");
  EXPECT_THROW(client.complete({"p2"}, 2), ReplayMiss);
  EXPECT_THROW(client.complete({"unknown"}, 0), ReplayMiss);
}

TEST(ReplayClient, RejectsMalformedFixture) {
  EXPECT_THROW(ReplayCompletionClient(json::array()), Error);
  EXPECT_THROW(ReplayCompletionClient(json{{"k", 3}}), Error);
}

TEST(ReplayClient, LoadsDirectoryAndDetectsConflicts) {
  testing::TempDir dir;
  testing::write_file(dir / "a.json", json{{"k1", "a"}}.dump());
  testing::write_file(dir / "b.json", json{{"k2", "b"}, {"k1", "a"}}.dump());
  testing::write_file(dir / "notes.txt", "ignored");
  auto client = make_client("replay:" + dir.path().string());
  EXPECT_NO_THROW(ReplayCompletionClient::load(dir.path()));

  testing::write_file(dir / "c.json", json{{"k1", "other"}}.dump());
  EXPECT_THROW(ReplayCompletionClient::load(dir.path()), Error);
}

TEST(RecordingClient, RoundTripsThroughReplay) {
  const json fixture = {{sha256_hex("p"), json::array({"a", "b", "c"})}};
  ReplayCompletionClient inner(fixture);
  RecordingCompletionClient rec(inner);
  for (int i = 2; i >= 0; --i) rec.complete({"p"}, i);

  testing::TempDir dir;
  rec.save(dir / "rec.json");
  ReplayCompletionClient replay = ReplayCompletionClient::load(dir / "rec.json");
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(replay.complete({"p"}, i).text, inner.complete({"p"}, i).text);
  }
}

TEST(MakeClient, ReadsCredentialFromEnvironment) {
  FakeService svc;
  setenv(kCredentialEnv, "tok", 1);
  auto client = make_client(svc.url("/v1/complete"));
  client->complete({"q"}, 0);
  EXPECT_EQ(svc.last_auth_, "Bearer tok");
  unsetenv(kCredentialEnv);
  client = make_client(svc.url("/v1/complete"));
  client->complete({"q"}, 0);
  EXPECT_EQ(svc.last_auth_, "");
}

}  // namespace
}  // namespace eco
