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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <random>

#include "eco/codebleu.h"
#include "eco/corpus_ir.h"
#include "eco/hashing.h"
#include "edit_pool.h"
#include "scripted_client.h"

namespace eco {
namespace {

using ::testing::HasSubstr;
using ::testing::Not;
using nlohmann::json;
using testing::ScriptedClient;

constexpr char kSnippet[] =
    "std::vector<int> out;\nfor (int x : in) out.push_back(x);\nreturn out;\n";

AntiPatternExample shot(const std::string& before, const std::string& after,
                        const std::string& tag) {
  AntiPatternExample e;
  e.id = tag;
  e.category = Category::kMap;
  e.before_fn.tokens = lex(before);
  e.after_fn.tokens = lex(after);
  e.diff = unified_diff(token_source(e.before_fn), token_source(e.after_fn));
  return e;
}

TEST(RenderPrompt, ZeroShotHasCodeAndDiffRequest) {
  const std::string p = render_prompt({PromptKind::kZeroShot}, kSnippet, "Vector");
  EXPECT_THAT(p, HasSubstr(kSnippet));
  EXPECT_THAT(p, HasSubstr("unified diff"));
  EXPECT_THAT(p, HasSubstr("Vector anti-pattern (growing a vector"));
  EXPECT_THAT(p, Not(HasSubstr("step by step")));
}

TEST(RenderPrompt, FewShotPlacesShotsBeforeTarget) {
  PromptRecipe r{PromptKind::kFewShot,
                 {shot("if (m.count(k)) v = m[k];\n",
                       "if (auto it = m.find(k); it != m.end()) v = it->second;\n",
                       "s1"),
                  shot("m[k] = m[k] + 1;\n", "++m[k];\n", "s2")}};
  const std::string p = render_prompt(r, kSnippet, "Map");
  const size_t target = p.find(kSnippet);
  ASSERT_NE(target, std::string::npos);
  for (const AntiPatternExample& s : r.shots) {
    const size_t before = p.find(token_source(s.before_fn));
    const size_t diff = p.find(s.diff);
    ASSERT_NE(before, std::string::npos);
    ASSERT_NE(diff, std::string::npos);
    EXPECT_LT(before, diff);
    EXPECT_LT(diff, target);
  }
  EXPECT_LT(p.find("Example 1"), p.find("Example 2"));
  EXPECT_THAT(p, HasSubstr("Here are 2 example"));
}

TEST(RenderPrompt, CoTAddsStepByStep) {
  const std::string p = render_prompt({PromptKind::kCoT}, kSnippet, "Copy");
  EXPECT_THAT(p, HasSubstr("step by step"));
  EXPECT_THAT(p, HasSubstr(kSnippet));
  EXPECT_LT(p.find(kSnippet), p.find("step by step"));
}

TEST(RenderPrompt, ReActEndsAwaitingThought) {
  const std::string p =
      render_prompt({PromptKind::kReAct}, kSnippet, "Vector", "bench.cc");
  EXPECT_TRUE(p.ends_with("Thought:"));
  EXPECT_THAT(p, HasSubstr("bench.cc"));
  EXPECT_THAT(p, HasSubstr("cat <path>"));
  EXPECT_THAT(p, HasSubstr("patch"));
  EXPECT_THAT(p, HasSubstr("finish"));
  EXPECT_THAT(p, Not(HasSubstr(kSnippet)));
}

TEST(RenderPrompt, RecipeInvariants) {
  EXPECT_THROW(render_prompt({PromptKind::kFewShot}, kSnippet, "Map"),
               MissingShots);
  PromptRecipe zs{PromptKind::kZeroShot, {shot("a;\n", "b;\n", "s")}};
  EXPECT_THROW(render_prompt(zs, kSnippet, "Map"), std::invalid_argument);
  EXPECT_THROW(render_prompt({PromptKind::kZeroShot}, "", "Map"),
               std::invalid_argument);
}

TEST(RenderPrompt, CustomInstructionTemplate) {
  PromptRecipe r{PromptKind::kZeroShot, {}, "Fix {category}: {description}."};
  const std::string p = render_prompt(r, kSnippet, "Move");
  EXPECT_TRUE(p.starts_with(
      "Fix Move: copying an object at its last use instead of moving it.\n"));
}

TEST(PromptKind, NamesRoundTrip) {
  for (PromptKind k : {PromptKind::kZeroShot, PromptKind::kFewShot,
                       PromptKind::kCoT, PromptKind::kReAct}) {
    EXPECT_EQ(prompt_kind_from_name(prompt_kind_name(k)), k);
  }
  EXPECT_EQ(prompt_kind_from_name("ReAct"), PromptKind::kReAct);
  EXPECT_EQ(prompt_kind_from_name("FS"), PromptKind::kFewShot);
  EXPECT_THROW(prompt_kind_from_name("tot"), std::invalid_argument);
}

TEST(EvaluateResponse, OneLineEdit) {
  const EditProposal p = evaluate_response(
      testing::kPoolOriginal, testing::pool_one_line_reply(), 3);
  EXPECT_EQ(p.sample_idx, 3);
  EXPECT_EQ(p.valid_hunks, 1);
  EXPECT_EQ(p.invalid_hunks, 0);
  EXPECT_EQ(p.modified_lines, 1);
  EXPECT_EQ(p.edited_code, testing::pool_one_line_edit());
  EXPECT_EQ(p.status, ProposalStatus::kCandidate);
  EXPECT_DOUBLE_EQ(p.codebleu_vs_baseline,
                   codebleu(testing::kPoolOriginal, p.edited_code));
}

TEST(EvaluateResponse, ProseOnlyIsEmpty) {
  const EditProposal p = evaluate_response(
      testing::kPoolOriginal, "I think the code is already fine.", 0);
  EXPECT_TRUE(p.hunks.empty());
  EXPECT_EQ(p.valid_hunks + p.invalid_hunks, 0);
  EXPECT_EQ(p.edited_code, testing::kPoolOriginal);
  EXPECT_EQ(p.status, ProposalStatus::kRejectedEmpty);
}

TEST(EvaluateResponse, ModifiedLinesCountOnlyValidHunks) {
  const std::string reply = testing::pool_one_line_reply() +
                            testing::pool_non_applying_reply();
  const EditProposal p = evaluate_response(testing::kPoolOriginal, reply, 0);
  EXPECT_EQ(p.hunks.size(), 2u);
  EXPECT_EQ(p.valid_hunks, 1);
  EXPECT_EQ(p.invalid_hunks, 1);
  EXPECT_EQ(p.modified_lines, 1);
}

TEST(SelectConservative, FixturePool) {
  const std::vector<std::string> replies = {
      testing::pool_formatting_reply(), testing::pool_one_line_reply(),
      testing::pool_rewrite_reply(), testing::pool_non_applying_reply()};
  std::vector<EditProposal> pool;
  for (size_t i = 0; i < replies.size(); ++i) {
    pool.push_back(evaluate_response(testing::kPoolOriginal, replies[i], i));
  }
  EXPECT_EQ(pool[0].status, ProposalStatus::kRejectedEmpty);
  EXPECT_GT(pool[0].valid_hunks, 0);
  EXPECT_EQ(pool[2].status, ProposalStatus::kCandidate);
  EXPECT_EQ(pool[2].modified_lines, 15);
  EXPECT_EQ(pool[3].valid_hunks, 0);
  EXPECT_EQ(pool[3].invalid_hunks, 1);

  const EditProposal chosen = select_conservative(pool);
  EXPECT_EQ(chosen.sample_idx, 1);
  EXPECT_EQ(chosen.status, ProposalStatus::kSelected);
  EXPECT_EQ(chosen.modified_lines, 1);
}

EditProposal fake(int idx, double cb, int lines, int valid = 1) {
  EditProposal p;
  p.sample_idx = idx;
  p.codebleu_vs_baseline = cb;
  p.modified_lines = lines;
  p.valid_hunks = valid;
  return p;
}

TEST(SelectConservative, MaxCodeBleuThenFewestLinesThenIndex) {
  EXPECT_EQ(select_conservative({fake(0, 0.90, 15), fake(1, 0.98, 1)}).sample_idx,
            1);
  EXPECT_EQ(select_conservative({fake(0, 0.9, 4), fake(1, 0.9, 2)}).sample_idx, 1);
  EXPECT_EQ(select_conservative({fake(2, 0.9, 2), fake(1, 0.9, 2)}).sample_idx, 1);
}

TEST(SelectConservative, NoViableProposal) {
  EXPECT_THROW(select_conservative({}), NoViableProposal);
  EXPECT_THROW(select_conservative({fake(0, 1.0, 0, 0), fake(1, 1.0, 0, 0)}),
               NoViableProposal);
  EditProposal rejected = fake(0, 0.99, 1);
  rejected.status = ProposalStatus::kRejectedBuild;
  EXPECT_THROW(select_conservative({rejected}), NoViableProposal);
}

TEST(SelectConservative, NeverPicksEmptyOrInvalid) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> cb(0.0, 1.0);
  std::uniform_int_distribution<int> small(0, 3);
  for (int round = 0; round < 500; ++round) {
    std::vector<EditProposal> pool;
    for (int i = 0; i < 5; ++i) {
      EditProposal p = fake(i, cb(rng), small(rng), small(rng));
      if (small(rng) == 0) p.status = ProposalStatus::kRejectedEmpty;
      pool.push_back(p);
    }
    try {
      const EditProposal s = select_conservative(pool);
      EXPECT_GT(s.valid_hunks, 0);
      EXPECT_NE(pool[s.sample_idx].status, ProposalStatus::kRejectedEmpty);
    } catch (const NoViableProposal&) {
      for (const auto& p : pool) {
        EXPECT_TRUE(p.valid_hunks == 0 ||
                    p.status == ProposalStatus::kRejectedEmpty);
      }
    }
  }
}

TEST(GenerateProposals, FiveSamplesOrderedAndDeterministic) {
  const std::string prompt =
      render_prompt({PromptKind::kZeroShot}, testing::kPoolOriginal, "Vector");
  json replies = json::array();
  replies.push_back(testing::pool_rewrite_reply());
  replies.push_back(testing::pool_one_line_reply());
  replies.push_back(testing::pool_formatting_reply());
  replies.push_back(testing::pool_non_applying_reply());
  replies.push_back("no diff here");
  ReplayCompletionClient client(json{{sha256_hex(prompt), replies}});

  GenerateOptions opts;
  opts.parallelism = 3;
  const auto a = generate_proposals(client, {PromptKind::kZeroShot},
                                    testing::kPoolOriginal, "Vector", opts);
  ASSERT_EQ(a.size(), 5u);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(a[i].sample_idx, i);
  EXPECT_EQ(a[1].modified_lines, 1);
  EXPECT_EQ(a[4].status, ProposalStatus::kRejectedEmpty);

  opts.parallelism = 1;
  const auto b = generate_proposals(client, {PromptKind::kZeroShot},
                                    testing::kPoolOriginal, "Vector", opts);
  EXPECT_EQ(json(a).dump(), json(b).dump());
  EXPECT_EQ(select_conservative(a).sample_idx, 1);
}

TEST(GenerateProposals, PassesTemperatureAndMapsServiceErrors) {
  ScriptedClient client({{0, {testing::pool_one_line_reply()}}, {1, {}}});
  GenerateOptions opts;
  opts.samples = 2;
  const auto out = generate_proposals(client, {PromptKind::kCoT},
                                      testing::kPoolOriginal, "Vector", opts);
  EXPECT_EQ(out[0].status, ProposalStatus::kCandidate);
  EXPECT_EQ(out[1].status, ProposalStatus::kRejectedOther);
  EXPECT_THAT(out[1].note, HasSubstr("ServiceError"));
  EXPECT_DOUBLE_EQ(client.requests(0).at(0).temperature, 0.3);
  EXPECT_THAT(client.requests(0).at(0).prompt, HasSubstr("step by step"));
}

TEST(GenerateProposals, ReplayMissPropagates) {
  ReplayCompletionClient client(json::object());
  EXPECT_THROW(generate_proposals(client, {PromptKind::kZeroShot},
                                  testing::kPoolOriginal, "Vector"),
               ReplayMiss);
}

std::string patch_reply(const std::string& diff) { return testing::react_patch_reply(diff); }

TEST(ReactLoop, CatPatchFinish) {
  const std::string diff =
      unified_diff(testing::kPoolOriginal, testing::pool_one_line_edit());
  ScriptedClient client({{0,
                          {" Let's examine the code.\nAction: cat target.cc\n",
                           patch_reply(diff),
                           " Done.\nAction: finish\n"}}});
  const Workspace ws = {{"target.cc", testing::kPoolOriginal},
                        {"other.h", "int x;\n"}};
  const std::string prompt =
      render_prompt({PromptKind::kReAct}, testing::kPoolOriginal, "Vector");
  const EditProposal p = react_loop(client, prompt, ws, "target.cc", 0);

  EXPECT_EQ(p.edited_code, testing::pool_one_line_edit());
  EXPECT_EQ(p.hunks, parse_diff(diff));
  EXPECT_EQ(p.valid_hunks, 1);
  EXPECT_EQ(p.invalid_hunks, 0);
  EXPECT_EQ(p.modified_lines, 1);
  EXPECT_EQ(p.status, ProposalStatus::kCandidate);

  const auto reqs = client.requests(0);
  ASSERT_EQ(reqs.size(), 3u);
  EXPECT_EQ(reqs[0].prompt, prompt);
  EXPECT_THAT(reqs[1].prompt, HasSubstr("Observe:\n" +
                                        std::string(testing::kPoolOriginal)));
  EXPECT_THAT(reqs[2].prompt, HasSubstr("Observe: applied 1 of 1 hunks"));
  EXPECT_TRUE(reqs[2].prompt.ends_with("Thought:"));
  EXPECT_EQ(ws.at("target.cc"), testing::kPoolOriginal);
}

TEST(ReactLoop, FailedPatchAndDisallowedActionAreObserved) {
  const std::string good =
      unified_diff(testing::kPoolOriginal, testing::pool_one_line_edit());
  ScriptedClient client(
      {{0,
        {" Remove the build.\nAction: rm -rf build\n",
         patch_reply("@@ -1,2 +1,3 @@\n nothing here\n+x\n matches\n"),
         patch_reply(good), " Good.\nAction: finish\nObserve: fake\n"}}});
  const EditProposal p =
      react_loop(client, "P\nThought:", {{"t.cc", testing::kPoolOriginal}},
                 "t.cc", 0);
  const auto reqs = client.requests(0);
  ASSERT_EQ(reqs.size(), 4u);
  EXPECT_THAT(reqs[1].prompt, HasSubstr("Observe: error: DisallowedAction(rm)"));
  EXPECT_THAT(reqs[2].prompt, HasSubstr("applied 0 of 1 hunks; 1 failed"));
  EXPECT_EQ(p.edited_code, testing::pool_one_line_edit());
  EXPECT_EQ(p.invalid_hunks, 1);
  EXPECT_THAT(p.raw_text, Not(HasSubstr("fake")));
}

TEST(ReactLoop, MaxStepsWithoutPatchIsEmpty) {
  std::vector<std::string> replies(20, " Thinking.\nAction: cat t.cc\n");
  ScriptedClient client({{0, replies}});
  const EditProposal p =
      react_loop(client, "P\nThought:", {{"t.cc", "int a;\n"}}, "t.cc", 0);
  EXPECT_EQ(client.requests(0).size(), 8u);
  EXPECT_TRUE(p.hunks.empty());
  EXPECT_EQ(p.status, ProposalStatus::kRejectedEmpty);
  EXPECT_EQ(p.edited_code, "int a;\n");
}

TEST(ReactLoop, MissingTargetIsAnError) {
  ScriptedClient client({});
  EXPECT_THROW(react_loop(client, "P", {{"a.cc", "x"}}, "b.cc", 0),
               std::invalid_argument);
}

TEST(SelfReview, ParsesAnswersAndDowngrades) {
  const ReviewResult ok = parse_review("1. yes\n2) Yes\n3: yes\n4. yes, faster");
  EXPECT_TRUE(ok.passed);
  const ReviewResult bad = parse_review("1. yes\n2. no\n4. yes\n");
  EXPECT_FALSE(bad.passed);
  EXPECT_EQ(bad.answers, (std::vector<std::string>{"yes", "no", "", "yes"}));

  EditProposal p = fake(0, 0.9, 1);
  apply_review(p, ok);
  EXPECT_EQ(p.status, ProposalStatus::kCandidate);
  apply_review(p, bad);
  EXPECT_EQ(p.status, ProposalStatus::kRejectedOther);
  EXPECT_EQ(p.note, "self-review failed on question 2,3");
  EXPECT_EQ(p.edited_code, "");
}

TEST(SelfReview, SinglePassThroughClient) {
  const std::string prompt =
      render_review_prompt(testing::kPoolOriginal, testing::pool_one_line_edit());
  for (const std::string& q : review_questions()) {
    EXPECT_THAT(prompt, HasSubstr(q));
  }
  ReplayCompletionClient client(
      json{{sha256_hex(prompt), "1. yes\n2. yes\n3. yes\n4. yes\n"}});
  EXPECT_TRUE(self_review(client, testing::kPoolOriginal,
                          testing::pool_one_line_edit(), 0)
                  .passed);
}

TEST(EditProposal, JsonRoundTrip) {
  EditProposal p = evaluate_response(
      testing::kPoolOriginal,
      testing::pool_one_line_reply() + testing::pool_non_applying_reply(), 2);
  p.note = "n";
  const EditProposal back = json(p).get<EditProposal>();
  EXPECT_EQ(back, p);
}

}  // namespace
}  // namespace eco
