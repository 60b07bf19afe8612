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

// Single-file configuration for the command-line pipeline.

#ifndef ECO_PIPELINE_CONFIG_H_
#define ECO_PIPELINE_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eco/edit_engine.h"
#include "eco/embedding_index.h"
#include "eco/error.h"
#include "eco/profile_prune.h"
#include "json.hpp"

namespace eco {

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error("ConfigError", msg) {}
};

struct PipelineConfig {
  std::vector<std::filesystem::path> corpus;    // manifests or directories
  std::vector<std::filesystem::path> profiles;  // folded stacks or JSON trees
  std::optional<std::filesystem::path> binaries;  // {"fn": binary count}
  PruneConfig prune;
  IndexConfig index;
  bool ranked = true;
  bool exact_search = false;
  PromptKind recipe = PromptKind::kZeroShot;
  std::optional<std::filesystem::path> shots;  // examples JSONL
  int shot_count = 3;
  GenerateOptions generate;
  std::optional<std::string> endpoint;
  std::optional<std::filesystem::path> replay;
  std::optional<std::string> build_cmd;
  std::optional<std::string> test_cmd;
  std::optional<std::string> bench_cmd;
  int timeout_s = 300;
  int bench_runs = 10;
};

// Relative paths resolve against `base_dir`. Unknown keys, missing paths,
// bad thresholds and an endpoint together with a replay path all throw
// ConfigError.
PipelineConfig config_from_json(const nlohmann::json& j,
                                const std::filesystem::path& base_dir);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const PipelineConfig& config);

// Completion locator for make_client: "replay:<path>", the endpoint URL, or
// nullopt when neither is set.
std::optional<std::string> completion_locator(const PipelineConfig& config);

}  // namespace eco

#endif  // ECO_PIPELINE_CONFIG_H_
