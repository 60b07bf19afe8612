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

// Edit generation: prompt recipes, sampling a completion service, turning
// replies into scored proposals, the ReAct tool loop and conservative
// selection.

#ifndef ECO_EDIT_ENGINE_H_
#define ECO_EDIT_ENGINE_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "eco/completion.h"
#include "eco/error.h"
#include "eco/pattern_miner.h"
#include "eco/unified_diff.h"
#include "json.hpp"

namespace eco {

enum class PromptKind { kZeroShot, kFewShot, kCoT, kReAct };

// "zero-shot", "few-shot", "cot", "react".
std::string_view prompt_kind_name(PromptKind kind);
// Also accepts "ZeroShot", "zs", "FewShot", "fs", "CoT" and "ReAct", in any
// case. Throws std::invalid_argument otherwise.
PromptKind prompt_kind_from_name(std::string_view name);

class MissingShots : public Error {
 public:
  MissingShots() : Error("MissingShots", "few-shot recipe without examples") {}
};

class NoViableProposal : public Error {
 public:
  explicit NoViableProposal(const std::string& why)
      : Error("NoViableProposal", why) {}
};

struct PromptRecipe {
  PromptKind kind = PromptKind::kZeroShot;
  std::vector<AntiPatternExample> shots;  // few-shot only
  // "{category}" and "{description}" are substituted. Empty selects
  // kDefaultInstruction.
  std::string instruction_template;

  // Throws MissingShots, or std::invalid_argument for shots on another kind.
  void validate() const;
};

inline constexpr char kDefaultInstruction[] =
    "Optimize the following C++ code for performance by fixing the "
    "{category} anti-pattern ({description}). Keep the behavior identical "
    "and change as few lines as possible.";

inline constexpr char kDefaultTargetPath[] = "target.cc";

// One-line description of a category name, or a generic phrase for an
// unknown one.
std::string category_description(std::string_view category);

// ReAct prompts name `target_path` instead of inlining the code and end with
// an open "Thought:" line. Throws std::invalid_argument for empty code.
std::string render_prompt(const PromptRecipe& recipe, std::string_view target_code,
                          std::string_view category,
                          std::string_view target_path = kDefaultTargetPath);

enum class ProposalStatus {
  kCandidate,
  kRejectedBuild,
  kRejectedEmpty,
  kRejectedOther,  // service failure or failed self-review
  kSelected,
};

std::string_view proposal_status_name(ProposalStatus s);
ProposalStatus proposal_status_from_name(std::string_view name);

struct EditProposal {
  int sample_idx = 0;
  std::string raw_text;
  std::vector<DiffHunk> hunks;  // as parsed, applied or not
  int valid_hunks = 0;
  int invalid_hunks = 0;
  int modified_lines = 0;  // over valid hunks
  double codebleu_vs_baseline = 0.0;
  ProposalStatus status = ProposalStatus::kCandidate;
  std::string edited_code;
  std::string note;

  bool operator==(const EditProposal&) const = default;
};

void to_json(nlohmann::json& j, const EditProposal& p);
void from_json(const nlohmann::json& j, EditProposal& p);

// Same code tokens, ignoring layout and comments.
bool is_formatting_only(std::string_view original, std::string_view edited);

// Parses and applies the diff in `raw_text`. Proposals that leave the code
// token-identical, including those with no applicable hunk, are
// kRejectedEmpty.
EditProposal evaluate_response(std::string_view original, std::string raw_text,
                               int sample_idx);

struct GenerateOptions {
  int samples = 5;
  double temperature = 0.3;
  int max_tokens = 2048;
  int parallelism = 5;
  int react_max_steps = 8;
  std::string target_path = kDefaultTargetPath;
};

// Samples the recipe `samples` times, concurrently up to `parallelism`.
// Timeouts and service errors become kRejectedOther proposals; other errors,
// replay misses included, propagate. Results are ordered by sample_idx.
std::vector<EditProposal> generate_proposals(CompletionClient& client,
                                             const PromptRecipe& recipe,
                                             std::string_view target_code,
                                             std::string_view category,
                                             const GenerateOptions& options = {});

using Workspace = std::map<std::string, std::string>;

// Runs Thought/Action/Observe steps against an in-memory copy of
// `workspace`. Actions are "cat <path>", "patch [path]" followed by a diff,
// and "finish". The proposal is the delta of `target_path`.
EditProposal react_loop(CompletionClient& client, const std::string& prompt,
                        const Workspace& workspace,
                        const std::string& target_path, int sample_idx,
                        const GenerateOptions& options = {});

// Picks the valid, non-empty proposal with the highest CodeBLEU, then the
// fewest modified lines, then the lowest sample index. The result has status
// kSelected.
EditProposal select_conservative(const std::vector<EditProposal>& proposals);

struct ReviewResult {
  bool passed = false;
  std::vector<std::string> answers;  // "yes", "no" or "" per question
  std::string raw_text;
};

const std::vector<std::string>& review_questions();
std::string render_review_prompt(std::string_view original,
                                 std::string_view edited);
// Answers are read from lines like "2. yes"; every question must be answered
// yes to pass.
ReviewResult parse_review(std::string raw_text);
ReviewResult self_review(CompletionClient& client, std::string_view original,
                         std::string_view edited, int sample_idx,
                         const GenerateOptions& options = {});
// A failed review turns a candidate or selected proposal into
// kRejectedOther.
void apply_review(EditProposal& proposal, const ReviewResult& review);

}  // namespace eco

#endif  // ECO_EDIT_ENGINE_H_
