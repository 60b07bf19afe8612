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

#include "eco/pipeline_config.h"

#include <fstream>
#include <set>

namespace eco {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void check_keys(const json& j, std::string_view where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key " + std::string(where) + "." + key);
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, std::string_view where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for " + std::string(where) + "." + key);
  }
}

fs::path existing(const fs::path& base, const std::string& p) {
  fs::path full = fs::path(p).is_absolute() ? fs::path(p) : base / p;
  if (!fs::exists(full)) throw ConfigError("path does not exist: " + full.string());
  return full;
}

std::vector<fs::path> path_list(const json& j, const char* key, const fs::path& base) {
  std::vector<fs::path> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) throw ConfigError(std::string(key) + " must be a list");
  for (const json& p : j.at(key)) {
    if (!p.is_string()) throw ConfigError(std::string(key) + " entries must be strings");
    out.push_back(existing(base, p.get<std::string>()));
  }
  return out;
}

}  // namespace

PipelineConfig config_from_json(const json& j, const fs::path& base_dir) {
  check_keys(j, "config",
             {"corpus", "profiles", "binaries", "prune", "index", "ranking", "prompt",
              "completion", "commands"});
  PipelineConfig c;
  c.corpus = path_list(j, "corpus", base_dir);
  c.profiles = path_list(j, "profiles", base_dir);
  if (j.contains("binaries")) {
    c.binaries = existing(base_dir, j.at("binaries").get<std::string>());
  }
  if (j.contains("prune")) {
    const json& p = j.at("prune");
    check_keys(p, "prune", {"c_min", "c_max", "shared_binary_threshold"});
    read(p, "c_min", c.prune.c_min, "prune");
    read(p, "c_max", c.prune.c_max, "prune");
    read(p, "shared_binary_threshold", c.prune.shared_binary_threshold, "prune");
  }
  try {
    c.prune.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (j.contains("index")) {
    const json& x = j.at("index");
    check_keys(x, "index",
               {"num_partitions", "nprobe", "k", "min_cost_pct", "seed", "max_iterations"});
    read(x, "num_partitions", c.index.num_partitions, "index");
    read(x, "nprobe", c.index.nprobe, "index");
    read(x, "k", c.index.k, "index");
    read(x, "min_cost_pct", c.index.min_cost_pct, "index");
    read(x, "seed", c.index.seed, "index");
    read(x, "max_iterations", c.index.max_iterations, "index");
    if (c.index.num_partitions < 1 || c.index.nprobe < 1 || c.index.k < 1) {
      throw ConfigError("index sizes must be positive");
    }
  }
  if (j.contains("ranking")) {
    const json& r = j.at("ranking");
    check_keys(r, "ranking", {"ranked", "exact"});
    read(r, "ranked", c.ranked, "ranking");
    read(r, "exact", c.exact_search, "ranking");
  }
  if (j.contains("prompt")) {
    const json& p = j.at("prompt");
    check_keys(p, "prompt",
               {"recipe", "shots", "shot_count", "samples", "temperature", "max_tokens",
                "parallelism", "react_max_steps"});
    if (p.contains("recipe")) {
      try {
        c.recipe = prompt_kind_from_name(p.at("recipe").get<std::string>());
      } catch (const std::exception& e) {
        throw ConfigError(std::string("prompt.recipe: ") + e.what());
      }
    }
    if (p.contains("shots")) c.shots = existing(base_dir, p.at("shots").get<std::string>());
    read(p, "shot_count", c.shot_count, "prompt");
    read(p, "samples", c.generate.samples, "prompt");
    read(p, "temperature", c.generate.temperature, "prompt");
    read(p, "max_tokens", c.generate.max_tokens, "prompt");
    read(p, "parallelism", c.generate.parallelism, "prompt");
    read(p, "react_max_steps", c.generate.react_max_steps, "prompt");
    if (c.generate.samples < 1 || c.generate.parallelism < 1 || c.shot_count < 1) {
      throw ConfigError("prompt counts must be positive");
    }
  }
  if (j.contains("completion")) {
    const json& x = j.at("completion");
    check_keys(x, "completion", {"endpoint", "replay"});
    if (x.contains("endpoint")) c.endpoint = x.at("endpoint").get<std::string>();
    if (x.contains("replay")) c.replay = existing(base_dir, x.at("replay").get<std::string>());
    if (c.endpoint && c.replay) throw ConfigError("completion: endpoint and replay both set");
  }
  if (j.contains("commands")) {
    const json& x = j.at("commands");
    check_keys(x, "commands", {"build", "test", "bench", "timeout_s", "bench_runs"});
    if (x.contains("build")) c.build_cmd = x.at("build").get<std::string>();
    if (x.contains("test")) c.test_cmd = x.at("test").get<std::string>();
    if (x.contains("bench")) c.bench_cmd = x.at("bench").get<std::string>();
    read(x, "timeout_s", c.timeout_s, "commands");
    read(x, "bench_runs", c.bench_runs, "commands");
    if (c.timeout_s < 1 || c.bench_runs < 1) throw ConfigError("commands: counts must be positive");
  }
  return c;
}

PipelineConfig load_pipeline_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

json config_to_json(const PipelineConfig& c) {
  auto paths = [](const std::vector<fs::path>& ps) {
    json out = json::array();
    for (const fs::path& p : ps) out.push_back(p.string());
    return out;
  };
  json j = {
      {"corpus", paths(c.corpus)},
      {"profiles", paths(c.profiles)},
      {"prune",
       {{"c_min", c.prune.c_min},
        {"c_max", c.prune.c_max},
        {"shared_binary_threshold", c.prune.shared_binary_threshold}}},
      {"index",
       {{"num_partitions", c.index.num_partitions},
        {"nprobe", c.index.nprobe},
        {"k", c.index.k},
        {"min_cost_pct", c.index.min_cost_pct},
        {"seed", c.index.seed},
        {"max_iterations", c.index.max_iterations}}},
      {"ranking", {{"ranked", c.ranked}, {"exact", c.exact_search}}},
      {"prompt",
       {{"recipe", prompt_kind_name(c.recipe)},
        {"shot_count", c.shot_count},
        {"samples", c.generate.samples},
        {"temperature", c.generate.temperature},
        {"max_tokens", c.generate.max_tokens},
        {"parallelism", c.generate.parallelism},
        {"react_max_steps", c.generate.react_max_steps}}},
      {"commands", {{"timeout_s", c.timeout_s}, {"bench_runs", c.bench_runs}}},
  };
  if (c.binaries) j["binaries"] = c.binaries->string();
  if (c.shots) j["prompt"]["shots"] = c.shots->string();
  j["completion"] = json::object();
  if (c.endpoint) j["completion"]["endpoint"] = *c.endpoint;
  if (c.replay) j["completion"]["replay"] = c.replay->string();
  if (c.build_cmd) j["commands"]["build"] = *c.build_cmd;
  if (c.test_cmd) j["commands"]["test"] = *c.test_cmd;
  if (c.bench_cmd) j["commands"]["bench"] = *c.bench_cmd;
  return j;
}

std::optional<std::string> completion_locator(const PipelineConfig& config) {
  if (config.replay) return "replay:" + config.replay->string();
  if (config.endpoint) return *config.endpoint;
  return std::nullopt;
}

}  // namespace eco
