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

// Bag-of-words code embeddings with exact and inverted-file cosine search.

#ifndef ECO_EMBEDDING_INDEX_H_
#define ECO_EMBEDDING_INDEX_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eco/error.h"
#include "eco/lexer.h"
#include "json.hpp"

namespace eco {

struct AntiPatternExample;
struct FunctionRecord;

inline constexpr std::string_view kStringPlaceholder = "<str>";
inline constexpr std::string_view kNumberPlaceholder = "<num>";

using NormalizedTokens = std::vector<std::string>;

// Drops comments, replaces literals by "<str>" and "<num>", and renames
// user identifiers to "id0", "id1", ... in first-occurrence order. Keywords,
// type names, punctuation and standard-library names in member or qualified
// position (`.reserve`, `std::move`) are kept.
NormalizedTokens normalize(const std::vector<Token>& tokens);

class BowVector {
 public:
  BowVector() = default;
  // Zero and negative weights are dropped.
  explicit BowVector(std::map<std::string, double> counts);

  const std::map<std::string, double>& counts() const { return counts_; }
  double l2_norm() const { return norm_; }
  double squared_norm() const { return sq_norm_; }
  bool empty() const { return counts_.empty(); }
  double dot(const BowVector& other) const;

  bool operator==(const BowVector& o) const { return counts_ == o.counts_; }

 private:
  std::map<std::string, double> counts_;
  double sq_norm_ = 0.0;
  double norm_ = 0.0;
};

// 1 - cosine similarity, clamped to [0, 1]; 1 when either vector is zero.
double cosine_distance(const BowVector& a, const BowVector& b);

std::set<std::string> default_stoplist();

// Token counts, skipping stoplisted words and punctuation.
BowVector embed_bow(const NormalizedTokens& norm,
                    const std::set<std::string>& stoplist = default_stoplist());

BowVector embed_function(const FunctionRecord& record);

struct IndexEntry {
  std::string id;
  BowVector vector;
  std::optional<double> cycles_pct;  // entries without cost are kept
};

struct IndexConfig {
  int num_partitions = 16;
  int nprobe = 4;
  int k = 500;
  double min_cost_pct = 0.01;
  std::uint64_t seed = 1;
  int max_iterations = 25;
};

struct Partition {
  BowVector centroid;  // unit length
  std::vector<size_t> members;  // indices into VectorIndex::entries
};

struct VectorIndex {
  std::vector<IndexEntry> entries;
  std::vector<Partition> partitions;
  IndexConfig config;
};

struct Neighbor {
  std::string id;
  double distance = 0.0;

  bool operator==(const Neighbor&) const = default;
};

class EmptyIndex : public Error {
 public:
  EmptyIndex() : Error("EmptyIndex", "no entries with nonzero vectors") {}
};

class ZeroQueryVector : public Error {
 public:
  ZeroQueryVector() : Error("ZeroQueryVector", "query vector is empty") {}
};

class EmptyDiff : public Error {
 public:
  EmptyDiff() : Error("EmptyDiff", "diff changes no tokens") {}
};

// Spherical k-means over unit vectors, seeded from config.seed. Entries
// below min_cost_pct and zero vectors are left out.
VectorIndex build_index(std::vector<IndexEntry> entries,
                        const IndexConfig& config = {});

// Nearest partition by cosine; ties go to the lower index.
size_t nearest_partition(const VectorIndex& index, const BowVector& v);

// Ascending by (distance, id). Exact mode scans every entry; otherwise the
// nprobe partitions nearest to the query are scanned.
std::vector<Neighbor> query_topk(const VectorIndex& index,
                                 const BowVector& query, int k, bool exact);

// Bag of words over the removed and context lines of the example's hunks.
BowVector embed_diff_query(const AntiPatternExample& example);

nlohmann::json index_to_json(const VectorIndex& index);
VectorIndex index_from_json(const nlohmann::json& j);
void save_index(const std::filesystem::path& path, const VectorIndex& index);
VectorIndex load_index(const std::filesystem::path& path);

nlohmann::json bow_to_json(const BowVector& v);
BowVector bow_from_json(const nlohmann::json& j);

}  // namespace eco

#endif  // ECO_EMBEDDING_INDEX_H_
