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

// Retrieval evaluation: AP@k and MAP@k, a seeded corpus with known
// relevance, and the ranked/unranked, function/diff query comparison.

#ifndef ECO_EVAL_HARNESS_H_
#define ECO_EVAL_HARNESS_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "eco/corpus_ir.h"
#include "eco/embedding_index.h"
#include "eco/pattern_miner.h"
#include "json.hpp"

namespace eco {

// (sum of precision@i over relevant hits at ranks i <= k) / min(|relevant|, k).
// An empty relevant set scores 0. Throws std::invalid_argument for k < 1.
double average_precision_at_k(const std::vector<std::string>& ranked,
                              const std::set<std::string>& relevant, int k);

// Mean of AP@k over paired rankings and relevant sets.
double mean_average_precision(const std::vector<std::vector<std::string>>& rankings,
                              const std::vector<std::set<std::string>>& relevant,
                              int k);

enum class QueryKind { kFunction, kCodeDiff };
std::string_view query_kind_name(QueryKind kind);  // "Function", "CodeDiff"

struct EvalQuery {
  std::string query_id;
  QueryKind kind = QueryKind::kFunction;
  std::set<std::string> relevant_ids;
  std::string self_id;           // database id of the query's own function
  FunctionRecord function;       // function queries
  AntiPatternExample example;    // diff queries
};

struct SeedSpec {
  std::map<Category, int> counts = {
      {Category::kCopy, 4}, {Category::kMap, 4}, {Category::kVector, 4}};
  int distractors = 48;
  std::uint64_t seed = 1;
};

struct EvalCorpus {
  std::vector<FunctionRecord> database;
  // One planted pair per entry: the before function in the database and
  // the fix as a diff.
  std::vector<AntiPatternExample> pairs;
  std::vector<std::string> distractor_ids;
};

// Renamed, lightly reordered and commented variants of per-category
// templates plus pattern-free distractors. Throws std::invalid_argument
// when a category has fewer than 2 pairs.
EvalCorpus build_seeded_corpus(const SeedSpec& spec);

// One query per planted pair; relevant ids are the other planted functions
// of the same category.
std::vector<EvalQuery> make_queries(const EvalCorpus& corpus, QueryKind kind);

struct RetrievalConfig {
  bool ranked = false;
  int ann_k = 500;
  bool exact = true;
  IndexConfig index;
};

// Candidate ids for one query, best first, without the query's own function.
std::vector<std::string> retrieve(const VectorIndex& index,
                                  const std::map<std::string, FunctionRecord>& records,
                                  const EvalQuery& query,
                                  const RetrievalConfig& config);

double map_at_k(const EvalCorpus& corpus, const std::vector<EvalQuery>& queries,
                const RetrievalConfig& config, int k);

struct EvalRow {
  std::string model = "BOW";
  QueryKind query = QueryKind::kFunction;
  bool ranked = false;
  std::map<int, double> map_at;  // by k
};

// Rows for {function, diff} x {unranked, ranked}.
std::vector<EvalRow> evaluate(const EvalCorpus& corpus, const std::vector<int>& ks,
                              const RetrievalConfig& base = {});

std::string eval_table_csv(const std::vector<EvalRow>& rows, const std::vector<int>& ks);
std::string eval_table_text(const std::vector<EvalRow>& rows, const std::vector<int>& ks);
nlohmann::json eval_rows_to_json(const std::vector<EvalRow>& rows);

}  // namespace eco

#endif  // ECO_EVAL_HARNESS_H_
