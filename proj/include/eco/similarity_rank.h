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

// Syntactic re-ranking of retrieved candidates:
//   S(Q, C) = (B + R + T + F) / 4
// with BLEU, ROUGE-L, type-set overlap and control-flow keyword cosine. The
// query is always the reference side.

#ifndef ECO_SIMILARITY_RANK_H_
#define ECO_SIMILARITY_RANK_H_

#include <set>
#include <string>
#include <vector>

#include "eco/corpus_ir.h"
#include "eco/embedding_index.h"
#include "json.hpp"

namespace eco {

// Sentence BLEU up to 4-grams with clipped counts and the standard brevity
// penalty. Orders above the unigram are smoothed by adding one to matches and
// totals; orders longer than the candidate are left out. No unigram match,
// or an empty candidate, scores 0.
double bleu(const NormalizedTokens& q, const NormalizedTokens& c);

// LCS F1. Both empty scores 1, exactly one empty scores 0.
double rouge_l(const NormalizedTokens& q, const NormalizedTokens& c);

// |tq ∩ tc| / max(|tq ∪ tc|, 1).
double type_overlap(const std::set<std::string>& tq,
                    const std::set<std::string>& tc);

// Counts of control-flow keywords only.
BowVector flow_bow(const NormalizedTokens& tokens);

// Cosine over the control-flow keyword coordinates; 0 when either side has
// none.
double flow_cosine(const BowVector& q, const BowVector& c);

struct RankedCandidate {
  std::string id;
  double ann_distance = 0.0;
  double b = 0.0;
  double r = 0.0;
  double t = 0.0;
  double f = 0.0;
  double s = 0.0;

  bool operator==(const RankedCandidate&) const = default;
};

RankedCandidate syntactic_score(const FunctionRecord& q,
                                const FunctionRecord& c);

struct Candidate {
  FunctionRecord record;
  double ann_distance = 0.0;
};

// Descending by s, then ascending ann_distance, then id.
std::vector<RankedCandidate> rank(const FunctionRecord& query,
                                  const std::vector<Candidate>& candidates);

// A pseudo-function made of the removed and context lines of a diff, used
// as the query side when searching by code diff.
FunctionRecord query_from_diff(const std::string& diff,
                               const std::string& id = "diff");

nlohmann::json ranked_to_json(const std::vector<RankedCandidate>& ranked);

}  // namespace eco

#endif  // ECO_SIMILARITY_RANK_H_
