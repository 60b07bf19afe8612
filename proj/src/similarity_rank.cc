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

#include "eco/similarity_rank.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "eco/unified_diff.h"

namespace eco {
namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, int> ngram_counts(const NormalizedTokens& t, size_t n) {
  std::map<Ngram, int> counts;
  for (size_t i = 0; i + n <= t.size(); ++i) {
    ++counts[Ngram(t.begin() + i, t.begin() + i + n)];
  }
  return counts;
}

size_t lcs_length(const NormalizedTokens& a, const NormalizedTokens& b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

double bleu(const NormalizedTokens& q, const NormalizedTokens& c) {
  if (c.empty() || q.empty()) return 0.0;
  const size_t max_n = std::min<size_t>(4, c.size());
  double log_sum = 0.0;
  for (size_t n = 1; n <= max_n; ++n) {
    const auto cand = ngram_counts(c, n);
    const auto ref = ngram_counts(q, n);
    double matched = 0.0, total = 0.0;
    for (const auto& [gram, count] : cand) {
      total += count;
      auto it = ref.find(gram);
      if (it != ref.end()) matched += std::min(count, it->second);
    }
    if (n == 1 && matched == 0.0) return 0.0;
    if (n > 1) {
      matched += 1.0;
      total += 1.0;
    }
    log_sum += std::log(matched / total);
  }
  const double bp =
      c.size() > q.size()
          ? 1.0
          : std::exp(1.0 - static_cast<double>(q.size()) / c.size());
  return std::clamp(bp * std::exp(log_sum / max_n), 0.0, 1.0);
}

double rouge_l(const NormalizedTokens& q, const NormalizedTokens& c) {
  if (q.empty() && c.empty()) return 1.0;
  if (q.empty() || c.empty()) return 0.0;
  const double lcs = static_cast<double>(lcs_length(q, c));
  if (lcs == 0.0) return 0.0;
  const double p = lcs / c.size();
  const double r = lcs / q.size();
  return 2.0 * p * r / (p + r);
}

double type_overlap(const std::set<std::string>& tq,
                    const std::set<std::string>& tc) {
  size_t inter = 0;
  for (const std::string& t : tq) inter += tc.count(t);
  const size_t uni = tq.size() + tc.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(std::max<size_t>(uni, 1));
}

BowVector flow_bow(const NormalizedTokens& tokens) {
  std::map<std::string, double> counts;
  for (const std::string& t : tokens) {
    if (is_control_keyword(t)) counts[t] += 1.0;
  }
  return BowVector(std::move(counts));
}

double flow_cosine(const BowVector& q, const BowVector& c) {
  auto restrict = [](const BowVector& v) {
    std::map<std::string, double> kept;
    for (const auto& [term, w] : v.counts()) {
      if (is_control_keyword(term)) kept[term] = w;
    }
    return BowVector(std::move(kept));
  };
  const BowVector rq = restrict(q);
  const BowVector rc = restrict(c);
  if (rq.empty() || rc.empty()) return 0.0;
  return 1.0 - cosine_distance(rq, rc);
}

RankedCandidate syntactic_score(const FunctionRecord& q,
                                const FunctionRecord& c) {
  const NormalizedTokens nq = normalize(q.tokens);
  const NormalizedTokens nc = normalize(c.tokens);
  RankedCandidate out;
  out.id = c.id;
  out.b = bleu(nq, nc);
  out.r = rouge_l(nq, nc);
  out.t = type_overlap(q.type_set, c.type_set);
  out.f = flow_cosine(flow_bow(nq), flow_bow(nc));
  out.s = (out.b + out.r + out.t + out.f) / 4.0;
  return out;
}

std::vector<RankedCandidate> rank(const FunctionRecord& query,
                                  const std::vector<Candidate>& candidates) {
  std::vector<RankedCandidate> out;
  out.reserve(candidates.size());
  for (const Candidate& c : candidates) {
    RankedCandidate r = syntactic_score(query, c.record);
    r.ann_distance = c.ann_distance;
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(),
            [](const RankedCandidate& a, const RankedCandidate& b) {
              if (a.s != b.s) return a.s > b.s;
              if (a.ann_distance != b.ann_distance) {
                return a.ann_distance < b.ann_distance;
              }
              return a.id < b.id;
            });
  return out;
}

FunctionRecord query_from_diff(const std::string& diff, const std::string& id) {
  std::string before_side;
  for (const DiffHunk& h : parse_diff(diff)) {
    for (const std::string& line : h.old_lines()) {
      before_side += line;
      if (line.empty() || line.back() != '\n') before_side += '\n';
    }
  }
  FunctionRecord r;
  r.id = id;
  r.name = id;
  r.tokens = lex(before_side);
  r.type_set = declared_types(r.tokens);
  return r;
}

nlohmann::json ranked_to_json(const std::vector<RankedCandidate>& ranked) {
  nlohmann::json out = nlohmann::json::array();
  for (const RankedCandidate& r : ranked) {
    out.push_back({{"id", r.id},
                   {"ann_distance", r.ann_distance},
                   {"b", r.b},
                   {"r", r.r},
                   {"t", r.t},
                   {"f", r.f},
                   {"s", r.s}});
  }
  return out;
}

}  // namespace eco
