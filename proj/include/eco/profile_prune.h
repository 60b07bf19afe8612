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

// Costly-function discovery over profile call trees.
//
// A call tree is annotated with inclusive cycle percentages (a node's own
// cycles plus all descendants', relative to the binary total). Subtrees that
// are shared library code, or too cheap, are pruned and their cycles stay
// attributed to the caller; callers above the upper threshold are never
// pruned, so the walk stops at the lowest application-specific functions
// whose share lies within [c_min, c_max].

#ifndef ECO_PROFILE_PRUNE_H_
#define ECO_PROFILE_PRUNE_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "eco/error.h"
#include "json.hpp"

namespace eco {

inline constexpr std::string_view kSyntheticRoot = "<root>";

struct CallTreeNode {
  std::string fn_name;
  std::vector<CallTreeNode> children;
  std::uint64_t self_cycles = 0;
  double inclusive_pct = 0.0;  // [0,100] of the binary total
  bool shared = false;
};

struct PruneConfig {
  double c_min = 0.1;   // percent
  double c_max = 25.0;  // percent
  int shared_binary_threshold = 10;

  // Throws std::invalid_argument unless 0 <= c_min < c_max <= 100.
  void validate() const;
};

class MalformedLine : public Error {
 public:
  MalformedLine(int line, const std::string& why)
      : Error("MalformedLine", "line " + std::to_string(line) + ": " + why),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Parses collapsed stacks ("a;b;c 42" per line) under a synthetic "<root>".
// Blank lines are ignored. Inclusive percentages are filled in.
CallTreeNode parse_folded_stacks(std::string_view text);

// Parses {fn_name, self_cycles, shared?, children[]}. An object is the root
// itself (the whole binary); an array of objects is wrapped in "<root>".
CallTreeNode parse_call_tree_json(const nlohmann::json& j);

// Recomputes inclusive_pct for every node from self_cycles.
void annotate_inclusive(CallTreeNode& root);

std::uint64_t total_cycles(const CallTreeNode& root);

// Shared iff the function appears in at least the threshold number of
// binaries. Unknown names are application-specific.
bool classify_shared(const std::string& fn_name,
                     const std::map<std::string, int>& binaries_containing,
                     const PruneConfig& cfg);

// Sets `shared` on every node from the binaries table.
void mark_shared(CallTreeNode& root,
                 const std::map<std::string, int>& binaries_containing,
                 const PruneConfig& cfg);

bool should_prune(const CallTreeNode& f, const CallTreeNode& parent,
                  const PruneConfig& cfg);

// Costly functions under `f`, whose caller is `parent`. Returned pointers
// refer into the tree.
std::vector<const CallTreeNode*> get_costly_fns(const CallTreeNode& f,
                                                const CallTreeNode& parent,
                                                const PruneConfig& cfg);

struct CostlyFunction {
  std::string fn_name;
  double attributed_pct = 0.0;

  bool operator==(const CostlyFunction&) const = default;
};

// Runs get_costly_fns on every child of the root. Functions reached along
// several call paths are merged by name with their percentages summed.
// Sorted by attributed_pct descending, then name.
std::vector<CostlyFunction> attribute_and_report(const CallTreeNode& tree,
                                                 const PruneConfig& cfg);

nlohmann::json report_to_json(const std::vector<CostlyFunction>& report);
nlohmann::json call_tree_to_json(const CallTreeNode& node);

}  // namespace eco

#endif  // ECO_PROFILE_PRUNE_H_
