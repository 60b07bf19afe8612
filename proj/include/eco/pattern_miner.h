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

// Mining of performance-optimizing commits from git history into a database
// of before/after function examples.

#ifndef ECO_PATTERN_MINER_H_
#define ECO_PATTERN_MINER_H_

#include <filesystem>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "eco/corpus_ir.h"
#include "eco/error.h"
#include "json.hpp"

namespace eco {

enum class Category { kAlloc, kArgs, kCopy, kMap, kMove, kSort, kVector, kOther };

inline constexpr Category kAllCategories[] = {
    Category::kAlloc, Category::kArgs, Category::kCopy,   Category::kMap,
    Category::kMove,  Category::kSort, Category::kVector, Category::kOther};

std::string_view category_name(Category c);
// Case-insensitive. Throws std::invalid_argument for unknown names.
Category category_from_name(std::string_view name);

struct FileChange {
  std::string path;
  std::string before;  // empty when the file was added
  std::string after;   // empty when the file was deleted

  bool operator==(const FileChange&) const = default;
};

struct CommitHit {
  std::string commit_id;
  std::string message;
  std::vector<std::string> matched_keywords;
  std::vector<FileChange> files;  // C++ sources only
  std::optional<Category> category;  // from a curated feed tag

  bool operator==(const CommitHit&) const = default;
};

struct AntiPatternExample {
  std::string id;  // content hash
  Category category = Category::kOther;
  FunctionRecord before_fn;
  FunctionRecord after_fn;
  std::string diff;  // unified diff between the token sources
  std::string commit_id;

  bool operator==(const AntiPatternExample&) const = default;
};

// A case-insensitive substring, or a regex when written as "re:<pattern>".
struct KeywordRule {
  std::string text;
  bool is_regex = false;
  std::regex pattern;
};

class NotAGitRepo : public Error {
 public:
  explicit NotAGitRepo(const std::string& path) : Error("NotAGitRepo", path) {}
};

class RuleParseError : public Error {
 public:
  RuleParseError(int rule, const std::string& why)
      : Error("RuleParseError", "rule " + std::to_string(rule) + ": " + why),
        rule_(rule) {}
  int rule() const { return rule_; }

 private:
  int rule_;
};

std::vector<KeywordRule> default_rules();
// One rule per line; blank lines and lines starting with '#' are skipped.
// Rules are numbered from 1 in file order.
std::vector<KeywordRule> parse_rules(std::string_view text);
std::vector<KeywordRule> load_rules(const std::filesystem::path& path);

// The rules matching `message`, by their text.
std::vector<std::string> match_rules(std::string_view message,
                                     const std::vector<KeywordRule>& rules);

// Commits reachable from HEAD, oldest first, whose message matches a rule.
std::vector<CommitHit> scan_commits(const std::filesystem::path& repo,
                                    const std::vector<KeywordRule>& rules);

// Feed lines are "<commit-ish> [category]". Ids that do not resolve are
// reported through `warnings` and skipped.
std::vector<CommitHit> ingest_curated(const std::filesystem::path& repo,
                                      const std::filesystem::path& feed_file,
                                      std::vector<std::string>* warnings = nullptr);

// Category from the added and removed lines of a unified diff.
Category categorize_diff(std::string_view diff);

// One example per function whose token source changed, paired by file and
// name. Functions without a counterpart are skipped with a diagnostic.
std::vector<AntiPatternExample> build_examples(
    const std::vector<CommitHit>& hits,
    std::vector<std::string>* diagnostics = nullptr);

void to_json(nlohmann::json& j, const AntiPatternExample& e);
void from_json(const nlohmann::json& j, AntiPatternExample& e);

std::vector<AntiPatternExample> read_examples_jsonl(
    const std::filesystem::path& path);
void write_examples_jsonl(const std::filesystem::path& path,
                          const std::vector<AntiPatternExample>& examples);

}  // namespace eco

#endif  // ECO_PATTERN_MINER_H_
