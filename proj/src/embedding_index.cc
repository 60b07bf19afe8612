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

#include "eco/embedding_index.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <unordered_map>

#include "eco/corpus_ir.h"
#include "eco/pattern_miner.h"
#include "eco/unified_diff.h"

namespace eco {
namespace {

bool is_punctuation_text(std::string_view s) {
  if (s.empty() || s == kStringPlaceholder || s == kNumberPlaceholder) {
    return false;
  }
  const unsigned char c = static_cast<unsigned char>(s[0]);
  return !(std::isalnum(c) || c == '_');
}

BowVector unit(const BowVector& v) {
  std::map<std::string, double> scaled;
  for (const auto& [term, w] : v.counts()) scaled[term] = w / v.l2_norm();
  return BowVector(std::move(scaled));
}

BowVector mean_direction(const std::vector<IndexEntry>& entries,
                         const std::vector<size_t>& members) {
  std::map<std::string, double> sum;
  for (size_t i : members) {
    const BowVector& v = entries[i].vector;
    for (const auto& [term, w] : v.counts()) sum[term] += w / v.l2_norm();
  }
  return unit(BowVector(std::move(sum)));
}

size_t argmax_centroid(const std::vector<BowVector>& centroids,
                       const BowVector& v) {
  size_t best = 0;
  double best_dot = -1.0;
  for (size_t c = 0; c < centroids.size(); ++c) {
    const double d = v.dot(centroids[c]);
    if (d > best_dot) {
      best_dot = d;
      best = c;
    }
  }
  return best;
}

// k-means++ seeding on cosine distance.
std::vector<BowVector> seed_centroids(const std::vector<IndexEntry>& entries,
                                      size_t k, std::mt19937_64& rng) {
  std::vector<BowVector> centroids;
  std::uniform_int_distribution<size_t> pick(0, entries.size() - 1);
  centroids.push_back(unit(entries[pick(rng)].vector));
  std::vector<double> nearest(entries.size(), 1.0);
  while (centroids.size() < k) {
    double total = 0.0;
    for (size_t i = 0; i < entries.size(); ++i) {
      nearest[i] =
          std::min(nearest[i], cosine_distance(entries[i].vector, centroids.back()));
      total += nearest[i] * nearest[i];
    }
    if (total <= 0.0) break;  // every entry coincides with a centroid
    std::vector<double> weights(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) {
      weights[i] = nearest[i] * nearest[i];
    }
    std::discrete_distribution<size_t> draw(weights.begin(), weights.end());
    centroids.push_back(unit(entries[draw(rng)].vector));
  }
  return centroids;
}

}  // namespace

BowVector::BowVector(std::map<std::string, double> counts) {
  for (auto it = counts.begin(); it != counts.end();) {
    it = it->second > 0.0 ? std::next(it) : counts.erase(it);
  }
  counts_ = std::move(counts);
  for (const auto& [term, w] : counts_) sq_norm_ += w * w;
  norm_ = std::sqrt(sq_norm_);
}

double BowVector::dot(const BowVector& other) const {
  const BowVector& small = counts_.size() <= other.counts_.size() ? *this : other;
  const BowVector& large = &small == this ? other : *this;
  double sum = 0.0;
  for (const auto& [term, w] : small.counts_) {
    auto it = large.counts_.find(term);
    if (it != large.counts_.end()) sum += w * it->second;
  }
  return sum;
}

double cosine_distance(const BowVector& a, const BowVector& b) {
  if (a.empty() || b.empty()) return 1.0;
  if (a == b) return 0.0;
  const double cos = a.dot(b) / std::sqrt(a.squared_norm() * b.squared_norm());
  return std::clamp(1.0 - cos, 0.0, 1.0);
}

NormalizedTokens normalize(const std::vector<Token>& tokens) {
  NormalizedTokens out;
  std::unordered_map<std::string, std::string> names;
  std::string_view prev;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    switch (t.kind) {
      case TokenKind::kComment:
        continue;
      case TokenKind::kString:
        out.emplace_back(kStringPlaceholder);
        break;
      case TokenKind::kNumber:
        out.emplace_back(kNumberPlaceholder);
        break;
      case TokenKind::kIdentifier: {
        const bool qualified = prev == "." || prev == "->" || prev == "::";
        const bool namespace_head =
            (t.text == "std" || t.text == "absl") && i + 1 < tokens.size() &&
            tokens[i + 1].text == "::";
        if (namespace_head || (qualified && is_library_name(t.text))) {
          out.push_back(t.text);
        } else {
          auto [it, inserted] = names.emplace(t.text, "");
          if (inserted) it->second = "id" + std::to_string(names.size() - 1);
          out.push_back(it->second);
        }
        break;
      }
      default:
        out.push_back(t.text);
    }
    prev = t.text;
  }
  return out;
}

std::set<std::string> default_stoplist() { return {"return"}; }

BowVector embed_bow(const NormalizedTokens& norm,
                    const std::set<std::string>& stoplist) {
  std::map<std::string, double> counts;
  for (const std::string& t : norm) {
    if (stoplist.count(t) || is_punctuation_text(t)) continue;
    counts[t] += 1.0;
  }
  return BowVector(std::move(counts));
}

BowVector embed_function(const FunctionRecord& record) {
  return embed_bow(normalize(record.tokens));
}

VectorIndex build_index(std::vector<IndexEntry> entries,
                        const IndexConfig& config) {
  if (config.num_partitions < 1 || config.nprobe < 1 || config.k < 1) {
    throw std::invalid_argument(
        "num_partitions, nprobe and k must be positive");
  }
  VectorIndex index;
  index.config = config;
  for (IndexEntry& e : entries) {
    if (e.vector.empty()) continue;
    if (e.cycles_pct && *e.cycles_pct < config.min_cost_pct) continue;
    index.entries.push_back(std::move(e));
  }
  if (index.entries.empty()) throw EmptyIndex();

  std::mt19937_64 rng(config.seed);
  const size_t k = std::min<size_t>(config.num_partitions, index.entries.size());
  std::vector<BowVector> centroids = seed_centroids(index.entries, k, rng);
  std::vector<size_t> assignment(index.entries.size(), SIZE_MAX);
  for (int iter = 0;; ++iter) {
    bool changed = false;
    for (size_t i = 0; i < index.entries.size(); ++i) {
      const size_t c = argmax_centroid(centroids, index.entries[i].vector);
      changed |= c != assignment[i];
      assignment[i] = c;
    }
    if (!changed || iter + 1 >= config.max_iterations) break;
    std::vector<std::vector<size_t>> members(centroids.size());
    for (size_t i = 0; i < assignment.size(); ++i) {
      members[assignment[i]].push_back(i);
    }
    for (size_t c = 0; c < centroids.size(); ++c) {
      if (!members[c].empty()) {
        centroids[c] = mean_direction(index.entries, members[c]);
      }
    }
  }
  // Partitions keep the centroids of the final assignment step, so every
  // entry sits in the partition of its nearest centroid.
  std::vector<Partition> parts(centroids.size());
  for (size_t c = 0; c < centroids.size(); ++c) parts[c].centroid = centroids[c];
  for (size_t i = 0; i < assignment.size(); ++i) {
    parts[assignment[i]].members.push_back(i);
  }
  for (Partition& p : parts) {
    if (!p.members.empty()) index.partitions.push_back(std::move(p));
  }
  return index;
}

size_t nearest_partition(const VectorIndex& index, const BowVector& v) {
  size_t best = 0;
  double best_dot = -1.0;
  for (size_t c = 0; c < index.partitions.size(); ++c) {
    const double d = v.dot(index.partitions[c].centroid);
    if (d > best_dot) {
      best_dot = d;
      best = c;
    }
  }
  return best;
}

std::vector<Neighbor> query_topk(const VectorIndex& index,
                                 const BowVector& query, int k, bool exact) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (query.empty()) throw ZeroQueryVector();
  std::vector<Neighbor> hits;
  auto score = [&](size_t i) {
    const IndexEntry& e = index.entries[i];
    hits.push_back({e.id, cosine_distance(query, e.vector)});
  };
  if (exact) {
    for (size_t i = 0; i < index.entries.size(); ++i) score(i);
  } else {
    std::vector<std::pair<double, size_t>> order;
    for (size_t c = 0; c < index.partitions.size(); ++c) {
      order.emplace_back(-query.dot(index.partitions[c].centroid), c);
    }
    std::sort(order.begin(), order.end());
    const size_t probes =
        std::min<size_t>(order.size(), static_cast<size_t>(index.config.nprobe));
    for (size_t p = 0; p < probes; ++p) {
      for (size_t i : index.partitions[order[p].second].members) score(i);
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.distance != b.distance ? a.distance < b.distance : a.id < b.id;
  });
  if (hits.size() > static_cast<size_t>(k)) hits.resize(k);
  return hits;
}

BowVector embed_diff_query(const AntiPatternExample& example) {
  const std::vector<DiffHunk> hunks = parse_diff(example.diff);
  std::string before_side;
  bool changes_tokens = false;
  for (const DiffHunk& h : hunks) {
    std::string removed, added;
    for (const HunkLine& l : h.lines) {
      std::string& side = l.op == '-' ? removed : added;
      if (l.op != ' ') side += l.text + "\n";
      if (l.op != '+') before_side += l.text + "\n";
    }
    auto texts = [](const std::string& s) {
      std::vector<std::string> out;
      for (const Token& t : lex(s)) out.push_back(t.text);
      return out;
    };
    changes_tokens |= texts(removed) != texts(added);
  }
  if (!changes_tokens) throw EmptyDiff();
  BowVector v = embed_bow(normalize(lex(before_side)));
  if (v.empty()) throw EmptyDiff();
  return v;
}

nlohmann::json bow_to_json(const BowVector& v) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [term, w] : v.counts()) j[term] = w;
  return j;
}

BowVector bow_from_json(const nlohmann::json& j) {
  std::map<std::string, double> counts;
  for (const auto& [term, w] : j.items()) counts[term] = w.get<double>();
  return BowVector(std::move(counts));
}

nlohmann::json index_to_json(const VectorIndex& index) {
  const IndexConfig& c = index.config;
  nlohmann::json j;
  j["config"] = {{"num_partitions", c.num_partitions},
                 {"nprobe", c.nprobe},
                 {"k", c.k},
                 {"min_cost_pct", c.min_cost_pct},
                 {"seed", c.seed},
                 {"max_iterations", c.max_iterations}};
  j["entries"] = nlohmann::json::array();
  for (const IndexEntry& e : index.entries) {
    j["entries"].push_back({{"id", e.id},
                            {"vector", bow_to_json(e.vector)},
                            {"cycles_pct", e.cycles_pct
                                               ? nlohmann::json(*e.cycles_pct)
                                               : nlohmann::json(nullptr)}});
  }
  j["partitions"] = nlohmann::json::array();
  for (const Partition& p : index.partitions) {
    nlohmann::json members = nlohmann::json::array();
    for (size_t i : p.members) members.push_back(index.entries[i].id);
    j["partitions"].push_back(
        {{"centroid", bow_to_json(p.centroid)}, {"members", members}});
  }
  return j;
}

VectorIndex index_from_json(const nlohmann::json& j) {
  VectorIndex index;
  const nlohmann::json& c = j.at("config");
  IndexConfig defaults;
  index.config.num_partitions = c.value("num_partitions", defaults.num_partitions);
  index.config.nprobe = c.value("nprobe", defaults.nprobe);
  index.config.k = c.value("k", defaults.k);
  index.config.min_cost_pct = c.value("min_cost_pct", defaults.min_cost_pct);
  index.config.seed = c.value("seed", defaults.seed);
  index.config.max_iterations = c.value("max_iterations", defaults.max_iterations);
  std::unordered_map<std::string, size_t> by_id;
  for (const auto& e : j.at("entries")) {
    IndexEntry entry;
    entry.id = e.at("id").get<std::string>();
    entry.vector = bow_from_json(e.at("vector"));
    if (e.contains("cycles_pct") && !e["cycles_pct"].is_null()) {
      entry.cycles_pct = e["cycles_pct"].get<double>();
    }
    by_id[entry.id] = index.entries.size();
    index.entries.push_back(std::move(entry));
  }
  for (const auto& p : j.at("partitions")) {
    Partition part;
    part.centroid = bow_from_json(p.at("centroid"));
    for (const auto& m : p.at("members")) {
      auto it = by_id.find(m.get<std::string>());
      if (it == by_id.end()) {
        throw Error("IndexFormatError", "unknown member " + m.dump());
      }
      part.members.push_back(it->second);
    }
    index.partitions.push_back(std::move(part));
  }
  if (index.partitions.empty()) throw EmptyIndex();
  return index;
}

void save_index(const std::filesystem::path& path, const VectorIndex& index) {
  std::ofstream out(path);
  if (!out) throw Error("IoError", "cannot write " + path.string());
  out << index_to_json(index).dump() << '\n';
}

VectorIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot read " + path.string());
  return index_from_json(nlohmann::json::parse(in));
}

}  // namespace eco
