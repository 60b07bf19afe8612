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

#include "eco/edit_engine.h"

#include <algorithm>
#include <cctype>
#include <optional>
#include <regex>
#include <stdexcept>
#include <tuple>

#include "eco/codebleu.h"
#include "eco/corpus_ir.h"
#include "eco/parallel.h"

namespace eco {
namespace {

using nlohmann::json;

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (size_t pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

std::string with_newline(std::string_view s) {
  std::string out(s);
  if (!out.empty() && out.back() != '\n') out += '\n';
  return out;
}

std::string fenced(std::string_view lang, std::string_view body) {
  return "```" + std::string(lang) + "\n" + with_newline(body) + "```\n";
}

constexpr char kDiffRequest[] =
    "Reply with a unified diff of the code above. Start each hunk with an "
    "\"@@ -start,count +start,count @@\" header and prefix every line with "
    "' ', '-' or '+'.\n";

constexpr char kStepByStep[] =
    "Let's think step by step. First, find where the code shows the "
    "anti-pattern. Second, describe the change that removes it. Third, write "
    "that change as a unified diff.\n";

std::string instruction(const PromptRecipe& recipe, std::string_view category) {
  std::string text = recipe.instruction_template.empty()
                         ? std::string(kDefaultInstruction)
                         : recipe.instruction_template;
  replace_all(text, "{category}", category);
  replace_all(text, "{description}", category_description(category));
  return with_newline(text);
}

json hunk_to_json(const DiffHunk& h) {
  json lines = json::array();
  for (const HunkLine& l : h.lines) lines.push_back({std::string(1, l.op), l.text});
  return {{"old_start", h.old_start}, {"new_start", h.new_start}, {"lines", lines}};
}

DiffHunk hunk_from_json(const json& j) {
  DiffHunk h;
  h.old_start = j.at("old_start").get<int>();
  h.new_start = j.at("new_start").get<int>();
  for (const json& l : j.at("lines")) {
    const std::string op = l.at(0).get<std::string>();
    if (op.size() != 1) throw std::invalid_argument("bad hunk line op");
    h.lines.push_back({op[0], l.at(1).get<std::string>()});
  }
  return h;
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Model text up to a self-written "Observe:" line.
std::string cut_at_observe(const std::string& text) {
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t eol = text.find('\n', pos);
    const std::string line =
        trim(std::string_view(text).substr(pos, eol == std::string::npos
                                                    ? std::string::npos
                                                    : eol - pos));
    if (line.starts_with("Observe:")) return text.substr(0, pos);
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  return text;
}

struct Action {
  std::string name;
  std::string arg;
  std::string body;  // text after the action line
};

std::optional<Action> find_action(const std::string& text) {
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string line = trim(std::string_view(text).substr(pos, eol - pos));
    if (line.starts_with("Action:")) {
      const std::string rest = trim(std::string_view(line).substr(7));
      const size_t sp = rest.find_first_of(" \t");
      Action a;
      a.name = rest.substr(0, sp);
      if (sp != std::string::npos) a.arg = trim(std::string_view(rest).substr(sp));
      a.body = eol < text.size() ? text.substr(eol + 1) : "";
      return a;
    }
    pos = eol + 1;
  }
  return std::nullopt;
}

EditProposal rejected_other(int sample_idx, const std::string& why) {
  EditProposal p;
  p.sample_idx = sample_idx;
  p.status = ProposalStatus::kRejectedOther;
  p.note = why;
  return p;
}

}  // namespace

std::string_view prompt_kind_name(PromptKind kind) {
  switch (kind) {
    case PromptKind::kZeroShot: return "zero-shot";
    case PromptKind::kFewShot: return "few-shot";
    case PromptKind::kCoT: return "cot";
    case PromptKind::kReAct: return "react";
  }
  return "zero-shot";
}

PromptKind prompt_kind_from_name(std::string_view name) {
  const std::string n = lower(name);
  if (n == "zero-shot" || n == "zeroshot" || n == "zs") return PromptKind::kZeroShot;
  if (n == "few-shot" || n == "fewshot" || n == "fs") return PromptKind::kFewShot;
  if (n == "cot") return PromptKind::kCoT;
  if (n == "react") return PromptKind::kReAct;
  throw std::invalid_argument("unknown prompt recipe: " + std::string(name));
}

void PromptRecipe::validate() const {
  if (kind == PromptKind::kFewShot && shots.empty()) throw MissingShots();
  if (kind != PromptKind::kFewShot && !shots.empty()) {
    throw std::invalid_argument("only few-shot recipes take examples");
  }
}

std::string category_description(std::string_view category) {
  static const std::map<std::string, std::string> kText = {
      {"alloc", "allocating a new object where an existing one could be reused"},
      {"args", "calling an API in a way that copies its arguments"},
      {"copy", "copying an object where a reference or a move would do"},
      {"map", "repeating lookups or insertions on the same map key"},
      {"move", "copying an object at its last use instead of moving it"},
      {"sort", "using a sorted or stable container where order is not needed"},
      {"vector", "growing a vector without reserving its final size"},
  };
  auto it = kText.find(lower(category));
  return it != kText.end() ? it->second : "a known performance anti-pattern";
}

std::string render_prompt(const PromptRecipe& recipe, std::string_view target_code,
                          std::string_view category, std::string_view target_path) {
  recipe.validate();
  if (target_code.empty()) throw std::invalid_argument("empty target code");
  std::string out = instruction(recipe, category);
  switch (recipe.kind) {
    case PromptKind::kZeroShot:
      out += "\nCode:\n" + fenced("cpp", target_code) + "\n" + kDiffRequest;
      break;
    case PromptKind::kFewShot: {
      out += "\nHere are " + std::to_string(recipe.shots.size()) +
             " example code edits that fix this anti-pattern.\n";
      for (size_t i = 0; i < recipe.shots.size(); ++i) {
        const AntiPatternExample& s = recipe.shots[i];
        out += "\nExample " + std::to_string(i + 1) + "\nBefore:\n" +
               fenced("cpp", token_source(s.before_fn)) + "Diff:\n" +
               fenced("diff", s.diff);
      }
      out += "\nNow edit this code.\n\nCode:\n" + fenced("cpp", target_code) +
             "\n" + kDiffRequest;
      break;
    }
    case PromptKind::kCoT:
      out += "\nCode:\n" + fenced("cpp", target_code) + "\n" + kStepByStep +
             kDiffRequest;
      break;
    case PromptKind::kReAct:
      out += "\nThe workspace contains the file " + std::string(target_path) +
             ". Work in steps. Each step is one Thought line and one Action "
             "line, after which you receive an Observe line.\n"
             "Actions:\n"
             "  cat <path>     show a file\n"
             "  patch [path]   apply the unified diff written after this line\n"
             "  finish         stop; the patched files are the answer\n"
             "\nThought:";
      break;
  }
  return out;
}

std::string_view proposal_status_name(ProposalStatus s) {
  switch (s) {
    case ProposalStatus::kCandidate: return "Candidate";
    case ProposalStatus::kRejectedBuild: return "RejectedBuild";
    case ProposalStatus::kRejectedEmpty: return "RejectedEmpty";
    case ProposalStatus::kRejectedOther: return "RejectedOther";
    case ProposalStatus::kSelected: return "Selected";
  }
  return "Candidate";
}

ProposalStatus proposal_status_from_name(std::string_view name) {
  for (ProposalStatus s :
       {ProposalStatus::kCandidate, ProposalStatus::kRejectedBuild,
        ProposalStatus::kRejectedEmpty, ProposalStatus::kRejectedOther,
        ProposalStatus::kSelected}) {
    if (proposal_status_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown proposal status: " + std::string(name));
}

void to_json(json& j, const EditProposal& p) {
  json hunks = json::array();
  for (const DiffHunk& h : p.hunks) hunks.push_back(hunk_to_json(h));
  j = {{"sample_idx", p.sample_idx},
       {"status", proposal_status_name(p.status)},
       {"valid_hunks", p.valid_hunks},
       {"invalid_hunks", p.invalid_hunks},
       {"modified_lines", p.modified_lines},
       {"codebleu", p.codebleu_vs_baseline},
       {"hunks", hunks},
       {"edited_code", p.edited_code},
       {"raw_text", p.raw_text},
       {"note", p.note}};
}

void from_json(const json& j, EditProposal& p) {
  p = EditProposal{};
  p.sample_idx = j.at("sample_idx").get<int>();
  p.status = proposal_status_from_name(j.at("status").get<std::string>());
  p.valid_hunks = j.at("valid_hunks").get<int>();
  p.invalid_hunks = j.at("invalid_hunks").get<int>();
  p.modified_lines = j.at("modified_lines").get<int>();
  p.codebleu_vs_baseline = j.at("codebleu").get<double>();
  for (const json& h : j.at("hunks")) p.hunks.push_back(hunk_from_json(h));
  p.edited_code = j.value("edited_code", "");
  p.raw_text = j.value("raw_text", "");
  p.note = j.value("note", "");
}

bool is_formatting_only(std::string_view original, std::string_view edited) {
  const auto a = code_tokens(original);
  const auto b = code_tokens(edited);
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const Token& x, const Token& y) { return x.text == y.text; });
}

EditProposal evaluate_response(std::string_view original, std::string raw_text,
                               int sample_idx) {
  EditProposal p;
  p.sample_idx = sample_idx;
  p.raw_text = std::move(raw_text);
  p.hunks = parse_diff(p.raw_text);
  const ApplyResult applied = apply_hunks(original, p.hunks);
  p.valid_hunks = applied.applied;
  p.invalid_hunks = applied.failed;
  for (size_t i = 0; i < p.hunks.size(); ++i) {
    if (applied.hunk_applied[i]) p.modified_lines += p.hunks[i].modified();
  }
  p.edited_code = applied.text;
  p.codebleu_vs_baseline = codebleu(original, p.edited_code);
  if (p.valid_hunks == 0 || is_formatting_only(original, p.edited_code)) {
    p.status = ProposalStatus::kRejectedEmpty;
  }
  return p;
}

std::vector<EditProposal> generate_proposals(CompletionClient& client,
                                             const PromptRecipe& recipe,
                                             std::string_view target_code,
                                             std::string_view category,
                                             const GenerateOptions& options) {
  if (options.samples < 1) throw std::invalid_argument("samples must be >= 1");
  const std::string prompt =
      render_prompt(recipe, target_code, category, options.target_path);
  CompletionRequest req{prompt, options.temperature, options.max_tokens};
  req.validate();
  const Workspace workspace = {{options.target_path, std::string(target_code)}};

  std::vector<EditProposal> out(options.samples);
  parallel_for(options.samples, options.parallelism, [&](int i) {
    try {
      if (recipe.kind == PromptKind::kReAct) {
        out[i] = react_loop(client, prompt, workspace, options.target_path, i,
                            options);
      } else {
        out[i] = evaluate_response(target_code, client.complete(req, i).text, i);
      }
    } catch (const TimeoutError& e) {
      out[i] = rejected_other(i, e.what());
    } catch (const ServiceError& e) {
      out[i] = rejected_other(i, e.what());
    }
  });
  return out;
}

EditProposal react_loop(CompletionClient& client, const std::string& prompt,
                        const Workspace& workspace,
                        const std::string& target_path, int sample_idx,
                        const GenerateOptions& options) {
  auto target = workspace.find(target_path);
  if (target == workspace.end()) {
    throw std::invalid_argument("workspace lacks " + target_path);
  }
  const std::string original = target->second;
  Workspace files = workspace;
  std::string transcript = prompt;
  int failed_hunks = 0;

  for (int step = 0; step < options.react_max_steps; ++step) {
    const std::string reply = cut_at_observe(
        client.complete({transcript, options.temperature, options.max_tokens},
                        sample_idx)
            .text);
    transcript += (reply.starts_with(" ") ? "" : " ") + with_newline(reply);
    const std::optional<Action> action = find_action(reply);
    std::string observe;
    if (!action) {
      observe = "error: no Action line";
    } else if (action->name == "finish") {
      break;
    } else if (action->name == "cat") {
      auto it = files.find(action->arg);
      observe = it == files.end() ? "error: no such file: " + action->arg
                                  : "\n" + with_newline(it->second);
    } else if (action->name == "patch") {
      const std::string path = action->arg.empty() ? target_path : action->arg;
      auto it = files.find(path);
      const std::vector<DiffHunk> hunks = parse_diff(action->body);
      if (it == files.end()) {
        observe = "error: no such file: " + path;
      } else if (hunks.empty()) {
        observe = "error: no diff hunks found";
      } else {
        const ApplyResult r = apply_hunks(it->second, hunks);
        it->second = r.text;
        failed_hunks += r.failed;
        observe = "applied " + std::to_string(r.applied) + " of " +
                  std::to_string(hunks.size()) + " hunks";
        if (r.failed > 0) observe += "; " + std::to_string(r.failed) + " failed";
      }
    } else {
      observe = "error: DisallowedAction(" + action->name + ")";
    }
    if (!observe.starts_with("\n")) observe = " " + observe + "\n";
    transcript += "Observe:" + observe + "Thought:";
  }

  EditProposal p;
  p.sample_idx = sample_idx;
  p.raw_text = transcript.substr(prompt.size());
  p.edited_code = files.at(target_path);
  p.hunks = diff_hunks(original, p.edited_code);
  p.valid_hunks = static_cast<int>(p.hunks.size());
  p.invalid_hunks = failed_hunks;
  p.modified_lines = modified_line_count(p.hunks);
  p.codebleu_vs_baseline = codebleu(original, p.edited_code);
  if (p.hunks.empty() || is_formatting_only(original, p.edited_code)) {
    p.status = ProposalStatus::kRejectedEmpty;
  }
  return p;
}

EditProposal select_conservative(const std::vector<EditProposal>& proposals) {
  if (proposals.empty()) throw NoViableProposal("no proposals");
  const EditProposal* best = nullptr;
  for (const EditProposal& p : proposals) {
    const bool viable = (p.status == ProposalStatus::kCandidate ||
                         p.status == ProposalStatus::kSelected) &&
                        p.valid_hunks > 0;
    if (!viable) continue;
    if (best == nullptr ||
        std::make_tuple(-p.codebleu_vs_baseline, p.modified_lines, p.sample_idx) <
            std::make_tuple(-best->codebleu_vs_baseline, best->modified_lines,
                            best->sample_idx)) {
      best = &p;
    }
  }
  if (best == nullptr) {
    throw NoViableProposal(std::to_string(proposals.size()) +
                           " proposals, none valid and non-empty");
  }
  EditProposal out = *best;
  out.status = ProposalStatus::kSelected;
  return out;
}

const std::vector<std::string>& review_questions() {
  static const std::vector<std::string> kQuestions = {
      "Does the edited code behave the same as the original for every input?",
      "Does the edited code compile without new includes or build changes?",
      "Is the edited code free of new copies, allocations and repeated "
      "lookups?",
      "Is the edited code at least as fast as the original?",
  };
  return kQuestions;
}

std::string render_review_prompt(std::string_view original,
                                 std::string_view edited) {
  std::string out =
      "Review this C++ code change. Answer each question with yes or no, one "
      "answer per line in the form \"<number>. yes\".\n\nDiff:\n" +
      fenced("diff", unified_diff(original, edited)) + "\nQuestions:\n";
  const auto& qs = review_questions();
  for (size_t i = 0; i < qs.size(); ++i) {
    out += std::to_string(i + 1) + ". " + qs[i] + "\n";
  }
  return out;
}

ReviewResult parse_review(std::string raw_text) {
  static const std::regex kAnswer(R"(^\s*(\d+)\s*[.):]\s*(yes|no)\b)",
                                  std::regex::icase);
  ReviewResult r;
  r.answers.assign(review_questions().size(), "");
  for (const std::string& line : split_lines(raw_text)) {
    std::smatch m;
    if (!std::regex_search(line, m, kAnswer)) continue;
    const size_t idx = std::stoul(m[1].str());
    if (idx >= 1 && idx <= r.answers.size() && r.answers[idx - 1].empty()) {
      r.answers[idx - 1] = lower(m[2].str());
    }
  }
  r.passed = std::all_of(r.answers.begin(), r.answers.end(),
                         [](const std::string& a) { return a == "yes"; });
  r.raw_text = std::move(raw_text);
  return r;
}

ReviewResult self_review(CompletionClient& client, std::string_view original,
                         std::string_view edited, int sample_idx,
                         const GenerateOptions& options) {
  const CompletionRequest req{render_review_prompt(original, edited),
                              options.temperature, options.max_tokens};
  return parse_review(client.complete(req, sample_idx).text);
}

void apply_review(EditProposal& proposal, const ReviewResult& review) {
  if (review.passed) return;
  if (proposal.status != ProposalStatus::kCandidate &&
      proposal.status != ProposalStatus::kSelected) {
    return;
  }
  proposal.status = ProposalStatus::kRejectedOther;
  std::string failed;
  for (size_t i = 0; i < review.answers.size(); ++i) {
    if (review.answers[i] != "yes") {
      failed += (failed.empty() ? "" : ",") + std::to_string(i + 1);
    }
  }
  proposal.note = "self-review failed on question " + failed;
}

}  // namespace eco
