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

#include "eco/profile_prune.h"

#include <algorithm>
#include <charconv>
#include <memory>
#include <stdexcept>
#include <unordered_map>

namespace eco {
namespace {

std::uint64_t fill_inclusive(CallTreeNode& node, double total) {
  std::uint64_t inclusive = node.self_cycles;
  for (CallTreeNode& child : node.children) {
    inclusive += fill_inclusive(child, total);
  }
  node.inclusive_pct =
      total > 0 ? 100.0 * static_cast<double>(inclusive) / total : 0.0;
  return inclusive;
}

// Insertion-ordered prefix tree used while reading folded stacks.
struct Trie {
  std::vector<std::pair<std::string, std::unique_ptr<Trie>>> kids;
  std::unordered_map<std::string, size_t> slot;
  std::uint64_t self = 0;

  Trie* child(std::string_view name) {
    auto [it, inserted] = slot.emplace(std::string(name), kids.size());
    if (inserted) kids.emplace_back(std::string(name), std::make_unique<Trie>());
    return kids[it->second].second.get();
  }

  CallTreeNode to_node(std::string name) const {
    CallTreeNode node;
    node.fn_name = std::move(name);
    node.self_cycles = self;
    for (const auto& [n, k] : kids) node.children.push_back(k->to_node(n));
    return node;
  }
};

CallTreeNode node_from_json(const nlohmann::json& j) {
  CallTreeNode node;
  node.fn_name = j.at("fn_name").get<std::string>();
  node.self_cycles = j.value("self_cycles", std::uint64_t{0});
  node.shared = j.value("shared", false);
  if (j.contains("children")) {
    for (const auto& c : j.at("children")) {
      node.children.push_back(node_from_json(c));
    }
  }
  return node;
}

}  // namespace

void PruneConfig::validate() const {
  if (!(0.0 <= c_min && c_min < c_max && c_max <= 100.0)) {
    throw std::invalid_argument("prune thresholds must satisfy "
                                "0 <= c_min < c_max <= 100");
  }
  if (shared_binary_threshold < 0) {
    throw std::invalid_argument("shared_binary_threshold must be >= 0");
  }
}

std::uint64_t total_cycles(const CallTreeNode& root) {
  std::uint64_t total = root.self_cycles;
  for (const CallTreeNode& c : root.children) total += total_cycles(c);
  return total;
}

void annotate_inclusive(CallTreeNode& root) {
  const double total = static_cast<double>(total_cycles(root));
  fill_inclusive(root, total);
}

CallTreeNode parse_folded_stacks(std::string_view text) {
  Trie trie;
  int line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t')) {
      line.remove_suffix(1);
    }
    if (line.empty()) continue;
    const size_t space = line.find_last_of(" \t");
    if (space == std::string_view::npos) {
      throw MalformedLine(line_no, "expected '<stack> <count>'");
    }
    const std::string_view count_text = line.substr(space + 1);
    std::uint64_t count = 0;
    auto [ptr, ec] = std::from_chars(
        count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc() || ptr != count_text.data() + count_text.size() ||
        count == 0) {
      throw MalformedLine(line_no, "count must be a positive integer");
    }
    std::string_view stack = line.substr(0, space);
    while (!stack.empty() && (stack.back() == ' ' || stack.back() == '\t')) {
      stack.remove_suffix(1);
    }
    if (stack.empty()) throw MalformedLine(line_no, "empty stack");

    Trie* node = &trie;
    size_t start = 0;
    while (true) {
      size_t semi = stack.find(';', start);
      if (semi == std::string_view::npos) semi = stack.size();
      const std::string_view frame = stack.substr(start, semi - start);
      if (frame.empty()) throw MalformedLine(line_no, "empty frame");
      node = node->child(frame);
      if (semi == stack.size()) break;
      start = semi + 1;
    }
    node->self += count;
  }
  CallTreeNode root = trie.to_node(std::string(kSyntheticRoot));
  annotate_inclusive(root);
  return root;
}

CallTreeNode parse_call_tree_json(const nlohmann::json& j) {
  CallTreeNode root;
  if (j.is_array()) {
    root.fn_name = std::string(kSyntheticRoot);
    for (const auto& c : j) root.children.push_back(node_from_json(c));
  } else {
    root = node_from_json(j);
  }
  annotate_inclusive(root);
  return root;
}

bool classify_shared(const std::string& fn_name,
                     const std::map<std::string, int>& binaries_containing,
                     const PruneConfig& cfg) {
  auto it = binaries_containing.find(fn_name);
  if (it == binaries_containing.end()) return false;
  return it->second >= cfg.shared_binary_threshold;
}

void mark_shared(CallTreeNode& root,
                 const std::map<std::string, int>& binaries_containing,
                 const PruneConfig& cfg) {
  root.shared = classify_shared(root.fn_name, binaries_containing, cfg);
  for (CallTreeNode& c : root.children) {
    mark_shared(c, binaries_containing, cfg);
  }
}

bool should_prune(const CallTreeNode& f, const CallTreeNode& parent,
                  const PruneConfig& cfg) {
  if (parent.inclusive_pct > cfg.c_max) return false;
  if (f.shared) return true;
  if (f.inclusive_pct < cfg.c_min || f.inclusive_pct > cfg.c_max) return true;
  return false;
}

std::vector<const CallTreeNode*> get_costly_fns(const CallTreeNode& f,
                                                const CallTreeNode& parent,
                                                const PruneConfig& cfg) {
  if (f.children.empty()) {
    if (should_prune(f, parent, cfg)) return {};
    return {&f};
  }
  std::vector<const CallTreeNode*> costly;
  for (const CallTreeNode& callee : f.children) {
    auto sub = get_costly_fns(callee, f, cfg);
    costly.insert(costly.end(), sub.begin(), sub.end());
  }
  if (costly.empty() && !should_prune(f, parent, cfg)) return {&f};
  return costly;
}

std::vector<CostlyFunction> attribute_and_report(const CallTreeNode& tree,
                                                 const PruneConfig& cfg) {
  std::map<std::string, double> by_name;
  if (total_cycles(tree) == 0) return {};
  for (const CallTreeNode& child : tree.children) {
    for (const CallTreeNode* node : get_costly_fns(child, tree, cfg)) {
      by_name[node->fn_name] += node->inclusive_pct;
    }
  }
  std::vector<CostlyFunction> out;
  for (auto& [name, pct] : by_name) out.push_back(CostlyFunction{name, pct});
  std::stable_sort(out.begin(), out.end(),
                   [](const CostlyFunction& a, const CostlyFunction& b) {
                     if (a.attributed_pct != b.attributed_pct) {
                       return a.attributed_pct > b.attributed_pct;
                     }
                     return a.fn_name < b.fn_name;
                   });
  return out;
}

nlohmann::json report_to_json(const std::vector<CostlyFunction>& report) {
  nlohmann::json out = nlohmann::json::array();
  for (const CostlyFunction& c : report) {
    out.push_back({{"fn_name", c.fn_name}, {"attributed_pct", c.attributed_pct}});
  }
  return out;
}

nlohmann::json call_tree_to_json(const CallTreeNode& node) {
  nlohmann::json j = {{"fn_name", node.fn_name},
                      {"self_cycles", node.self_cycles},
                      {"inclusive_pct", node.inclusive_pct},
                      {"shared", node.shared}};
  j["children"] = nlohmann::json::array();
  for (const CallTreeNode& c : node.children) {
    j["children"].push_back(call_tree_to_json(c));
  }
  return j;
}

}  // namespace eco
