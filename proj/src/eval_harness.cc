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

#include "eco/eval_harness.h"

#include <algorithm>
#include <random>
#include <regex>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "eco/parallel.h"
#include "eco/similarity_rank.h"
#include "eco/unified_diff.h"
#include "seed_templates.h"

namespace eco {
namespace {

using nlohmann::json;

constexpr const char* kWords[] = {
    "items", "values", "acc",   "buf",   "result", "out",   "key",  "idx",
    "count", "tmp",    "data",  "entry", "total",  "src",   "dst",  "cache",
    "table", "list",   "pos",   "limit", "flag",   "sum",   "node", "elem",
    "cur",   "rows",   "cells", "state", "stats",  "input", "ids",  "score"};
constexpr const char* kVerbs[] = {"Compute", "Collect", "Build", "Count",
                                  "Lookup",  "Scale",   "Merge", "Load",
                                  "Render",  "Update",  "Fetch", "Index"};
constexpr const char* kNouns[] = {"Totals", "Items",   "Rows",  "Keys",
                                  "Scores", "Names",   "Weights", "Buckets",
                                  "Spans",  "Records", "Labels", "Offsets"};

template <typename T, size_t N>
const T& pick(std::mt19937_64& rng, const T (&arr)[N]) {
  return arr[std::uniform_int_distribution<size_t>(0, N - 1)(rng)];
}

bool chance(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

struct Variant {
  std::string before;
  std::string after;
};

Variant render_variant(std::string_view text, const std::string& fn_name,
                       std::mt19937_64& rng) {
  std::vector<std::string> lines;
  for (std::string& l : split_lines(text)) {
    if (!l.empty() && l.back() == '\n') l.pop_back();
    lines.push_back(std::move(l));
  }
  size_t body_start = 0;
  while (body_start < lines.size() &&
         (lines[body_start].starts_with("-|") || lines[body_start].starts_with("+|")) &&
         lines[body_start].ends_with("{")) {
    ++body_start;
  }
  body_start = std::max<size_t>(body_start, 1);
  std::vector<std::string> preamble;
  const int blocks = std::uniform_int_distribution<int>(1, 2)(rng);
  for (int b = 0; b < blocks; ++b) {
    for (std::string& l : split_lines(pick(rng, seed::kPreamble))) {
      if (!l.empty() && l.back() == '\n') l.pop_back();
      preamble.push_back(std::move(l));
    }
  }
  lines.insert(lines.begin() + body_start, preamble.begin(), preamble.end());

  std::vector<std::string> out;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i] == "@FILL") {
      const int n = std::uniform_int_distribution<int>(0, 2)(rng);
      std::vector<std::string> fill;
      for (int f = 0; f < n; ++f) fill.push_back(pick(rng, seed::kFiller));
      std::shuffle(fill.begin(), fill.end(), rng);
      out.insert(out.end(), fill.begin(), fill.end());
      continue;
    }
    const bool body = i > 0 && i + 1 < lines.size();
    if (body && chance(rng, 0.12)) out.push_back(pick(rng, seed::kComments));
    out.push_back(lines[i]);
  }

  std::map<char, std::string> names;
  std::set<std::string> used;
  for (char c : std::string("abcdefghxyz")) {
    std::string n;
    do {
      n = pick(rng, kWords);
      if (chance(rng, 0.4)) n += "_" + std::string(pick(rng, kWords));
    } while (!used.insert(n).second);
    names[c] = n;
  }
  static const std::regex kPlaceholder(R"(\$([A-Za-z]))");
  auto rename = [&](const std::string& line) {
    std::string result;
    auto begin = std::sregex_iterator(line.begin(), line.end(), kPlaceholder);
    size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
      result += line.substr(last, it->position() - last);
      const char c = (*it)[1].str()[0];
      result += c == 'F' ? fn_name : names.at(c);
      last = it->position() + it->length();
    }
    return result + line.substr(last);
  };

  Variant v;
  for (const std::string& l : out) {
    const bool only_before = l.starts_with("-|");
    const bool only_after = l.starts_with("+|");
    const std::string text_line = rename(only_before || only_after ? l.substr(2) : l);
    if (!only_after) v.before += text_line + "\n";
    if (!only_before) v.after += text_line + "\n";
  }
  return v;
}

FunctionRecord single_function(const std::string& source, const std::string& file) {
  std::vector<FunctionRecord> fns = extract_functions(source, file);
  if (fns.size() != 1) {
    throw std::logic_error("seed template yields " + std::to_string(fns.size()) +
                           " functions in " + file);
  }
  return annotate_types(std::move(fns[0]));
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

double average_precision_at_k(const std::vector<std::string>& ranked,
                              const std::set<std::string>& relevant, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (relevant.empty()) return 0.0;
  std::set<std::string> seen;
  double sum = 0.0;
  int hits = 0;
  const size_t limit = std::min<size_t>(ranked.size(), k);
  for (size_t i = 0; i < limit; ++i) {
    if (relevant.contains(ranked[i]) && seen.insert(ranked[i]).second) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(std::min<size_t>(relevant.size(), k));
}

double mean_average_precision(const std::vector<std::vector<std::string>>& rankings,
                              const std::vector<std::set<std::string>>& relevant,
                              int k) {
  if (rankings.empty() || rankings.size() != relevant.size()) {
    throw std::invalid_argument("need one relevant set per ranking");
  }
  double sum = 0.0;
  for (size_t i = 0; i < rankings.size(); ++i) {
    sum += average_precision_at_k(rankings[i], relevant[i], k);
  }
  return sum / static_cast<double>(rankings.size());
}

std::string_view query_kind_name(QueryKind kind) {
  return kind == QueryKind::kFunction ? "Function" : "CodeDiff";
}

EvalCorpus build_seeded_corpus(const SeedSpec& spec) {
  if (spec.distractors < 0) throw std::invalid_argument("negative distractor count");
  std::mt19937_64 rng(spec.seed);
  EvalCorpus corpus;
  std::set<std::string> fn_names;
  auto fresh_name = [&] {
    std::string n;
    do {
      n = std::string(pick(rng, kVerbs)) + pick(rng, kNouns);
      if (chance(rng, 0.5)) n += std::to_string(std::uniform_int_distribution<int>(2, 99)(rng));
    } while (!fn_names.insert(n).second);
    return n;
  };

  for (const auto& [category, count] : spec.counts) {
    if (count < 2) {
      throw std::invalid_argument("category " + std::string(category_name(category)) +
                                  " needs at least 2 pairs");
    }
    std::vector<const seed::PatternTemplate*> templates;
    for (const auto& t : seed::kPatterns) {
      if (t.category == category) templates.push_back(&t);
    }
    if (templates.empty()) {
      throw std::invalid_argument("no templates for category " +
                                  std::string(category_name(category)));
    }
    for (int j = 0; j < count; ++j) {
      const Variant v = render_variant(templates[j % templates.size()]->text,
                                       fresh_name(), rng);
      const std::string file =
          "seeded/" + lower(category_name(category)) + "_" + std::to_string(j) + ".cc";
      AntiPatternExample ex;
      ex.before_fn = single_function(v.before, file);
      ex.after_fn = single_function(v.after, file);
      ex.id = ex.before_fn.id;
      ex.category = category;
      ex.diff = unified_diff(v.before, v.after, "a/" + file, "b/" + file);
      ex.commit_id = "seed" + std::to_string(spec.seed);
      corpus.database.push_back(ex.before_fn);
      corpus.pairs.push_back(std::move(ex));
    }
  }
  constexpr size_t kNumDistractors = std::size(seed::kDistractors);
  for (int j = 0; j < spec.distractors; ++j) {
    const Variant v =
        render_variant(seed::kDistractors[j % kNumDistractors], fresh_name(), rng);
    FunctionRecord r =
        single_function(v.before, "seeded/distractor_" + std::to_string(j) + ".cc");
    corpus.distractor_ids.push_back(r.id);
    corpus.database.push_back(std::move(r));
  }
  return corpus;
}

std::vector<EvalQuery> make_queries(const EvalCorpus& corpus, QueryKind kind) {
  std::vector<EvalQuery> out;
  for (const AntiPatternExample& ex : corpus.pairs) {
    EvalQuery q;
    q.query_id = ex.id + (kind == QueryKind::kFunction ? "#fn" : "#diff");
    q.kind = kind;
    q.self_id = ex.before_fn.id;
    for (const AntiPatternExample& other : corpus.pairs) {
      if (other.category == ex.category && other.before_fn.id != q.self_id) {
        q.relevant_ids.insert(other.before_fn.id);
      }
    }
    if (kind == QueryKind::kFunction) {
      q.function = ex.before_fn;
    } else {
      q.example = ex;
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<std::string> retrieve(const VectorIndex& index,
                                  const std::map<std::string, FunctionRecord>& records,
                                  const EvalQuery& query,
                                  const RetrievalConfig& config) {
  const BowVector qv = query.kind == QueryKind::kFunction
                           ? embed_function(query.function)
                           : embed_diff_query(query.example);
  const std::vector<Neighbor> hits =
      query_topk(index, qv, config.ann_k + 1, config.exact);
  std::vector<Candidate> candidates;
  std::vector<std::string> ids;
  for (const Neighbor& n : hits) {
    if (n.id == query.self_id) continue;
    if (static_cast<int>(ids.size()) == config.ann_k) break;
    ids.push_back(n.id);
    if (config.ranked) candidates.push_back({records.at(n.id), n.distance});
  }
  if (!config.ranked) return ids;

  const FunctionRecord q = query.kind == QueryKind::kFunction
                               ? query.function
                               : query_from_diff(query.example.diff, query.query_id);
  ids.clear();
  for (const RankedCandidate& c : rank(q, candidates)) ids.push_back(c.id);
  return ids;
}

namespace {

struct Prepared {
  VectorIndex index;
  std::map<std::string, FunctionRecord> records;
};

Prepared prepare(const EvalCorpus& corpus, const RetrievalConfig& config) {
  Prepared p;
  std::vector<IndexEntry> entries;
  for (const FunctionRecord& r : corpus.database) {
    entries.push_back({r.id, embed_function(r), std::nullopt});
    p.records.emplace(r.id, r);
  }
  p.index = build_index(std::move(entries), config.index);
  return p;
}

std::vector<std::vector<std::string>> all_rankings(const Prepared& p,
                                                   const std::vector<EvalQuery>& queries,
                                                   const RetrievalConfig& config) {
  std::vector<std::vector<std::string>> rankings(queries.size());
  const int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  parallel_for(static_cast<int>(queries.size()), threads, [&](int i) {
    rankings[i] = retrieve(p.index, p.records, queries[i], config);
  });
  return rankings;
}

std::vector<std::set<std::string>> relevant_sets(const std::vector<EvalQuery>& queries) {
  std::vector<std::set<std::string>> out;
  for (const EvalQuery& q : queries) out.push_back(q.relevant_ids);
  return out;
}

}  // namespace

double map_at_k(const EvalCorpus& corpus, const std::vector<EvalQuery>& queries,
                const RetrievalConfig& config, int k) {
  if (queries.empty()) throw std::invalid_argument("no queries");
  const Prepared p = prepare(corpus, config);
  return mean_average_precision(all_rankings(p, queries, config),
                                relevant_sets(queries), k);
}

std::vector<EvalRow> evaluate(const EvalCorpus& corpus, const std::vector<int>& ks,
                              const RetrievalConfig& base) {
  const Prepared p = prepare(corpus, base);
  std::vector<EvalRow> rows;
  for (QueryKind kind : {QueryKind::kFunction, QueryKind::kCodeDiff}) {
    const std::vector<EvalQuery> queries = make_queries(corpus, kind);
    const auto relevant = relevant_sets(queries);
    for (bool ranked : {false, true}) {
      RetrievalConfig cfg = base;
      cfg.ranked = ranked;
      const auto rankings = all_rankings(p, queries, cfg);
      EvalRow row;
      row.query = kind;
      row.ranked = ranked;
      for (int k : ks) row.map_at[k] = mean_average_precision(rankings, relevant, k);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string eval_table_csv(const std::vector<EvalRow>& rows, const std::vector<int>& ks) {
  std::string out = "Model,Query,Ranked";
  for (int k : ks) out += fmt::format(",MAP@{}", k);
  out += "\n";
  for (const EvalRow& r : rows) {
    out += fmt::format("{},{},{}", r.model, query_kind_name(r.query),
                       r.ranked ? "yes" : "no");
    for (int k : ks) out += fmt::format(",{:.4f}", r.map_at.at(k));
    out += "\n";
  }
  return out;
}

std::string eval_table_text(const std::vector<EvalRow>& rows, const std::vector<int>& ks) {
  std::string out = fmt::format("{:<6} {:<9} {:<7}", "Model", "Query", "Ranked");
  for (int k : ks) out += fmt::format(" {:>8}", fmt::format("MAP@{}", k));
  out += "\n";
  for (const EvalRow& r : rows) {
    out += fmt::format("{:<6} {:<9} {:<7}", r.model, query_kind_name(r.query),
                       r.ranked ? "yes" : "no");
    for (int k : ks) out += fmt::format(" {:>8.4f}", r.map_at.at(k));
    out += "\n";
  }
  return out;
}

json eval_rows_to_json(const std::vector<EvalRow>& rows) {
  json out = json::array();
  for (const EvalRow& r : rows) {
    json m = json::object();
    for (const auto& [k, v] : r.map_at) m[std::to_string(k)] = v;
    out.push_back({{"model", r.model},
                   {"query", query_kind_name(r.query)},
                   {"ranked", r.ranked},
                   {"map_at", m}});
  }
  return out;
}

}  // namespace eco
