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

#include "eco/codebleu.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

#include "eco/similarity_rank.h"

namespace eco {
namespace {

using Pairs = std::vector<std::pair<std::string, std::string>>;
using Ngram = std::vector<std::string>;

bool is_fundamental_type(std::string_view w) {
  static const std::unordered_set<std::string_view> kSet = {
      "bool",    "char",  "char8_t", "char16_t", "char32_t", "wchar_t",
      "short",   "int",   "long",    "float",    "double",   "void",
      "signed",  "unsigned"};
  return kSet.contains(w);
}

bool is_cpp_keyword(std::string_view w) {
  return is_keyword(w) || is_fundamental_type(w);
}

double token_weight(const std::string& t) {
  return is_cpp_keyword(t) ? kKeywordWeight : 1.0;
}

std::map<Ngram, int> ngram_counts(const std::vector<std::string>& t, size_t n) {
  std::map<Ngram, int> counts;
  for (size_t i = 0; i + n <= t.size(); ++i) {
    ++counts[Ngram(t.begin() + i, t.begin() + i + n)];
  }
  return counts;
}

size_t lcs_length(const std::vector<std::string>& a,
                  const std::vector<std::string>& b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

bool is_assign_op(std::string_view t) {
  static const std::unordered_set<std::string_view> kOps = {
      "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="};
  return kOps.contains(t);
}

bool is_name(const Token& t) { return t.kind == TokenKind::kIdentifier; }

using Seg = std::vector<const Token*>;

bool is_use(const Seg& s, size_t i) {
  if (!is_name(*s[i])) return false;
  if (i + 1 < s.size() &&
      (s[i + 1]->text == "(" || s[i + 1]->text == "::")) {
    return false;
  }
  if (i > 0 && (s[i - 1]->text == "." || s[i - 1]->text == "->")) return false;
  return true;
}

void add_uses(const Seg& s, size_t from, size_t to, const std::string& def,
              Pairs& out) {
  std::set<std::string> seen;
  for (size_t i = from; i < to && i < s.size(); ++i) {
    if (is_use(s, i) && seen.insert(s[i]->text).second) {
      out.emplace_back(def, s[i]->text);
    }
  }
}

// Index of the root name of the lvalue ending just before `end`, or npos.
size_t lvalue_root(const Seg& s, size_t end) {
  size_t i = end;
  while (i > 0) {
    --i;
    if (s[i]->text == "]") {
      int depth = 1;
      while (i > 0 && depth > 0) {
        --i;
        if (s[i]->text == "]") ++depth;
        if (s[i]->text == "[") --depth;
      }
      continue;
    }
    if (!is_name(*s[i])) return std::string::npos;
    while (i >= 2 && (s[i - 1]->text == "." || s[i - 1]->text == "->") &&
           is_name(*s[i - 2])) {
      i -= 2;
    }
    return i;
  }
  return std::string::npos;
}

void scan_segment(const Seg& s, Pairs& out);

// Splits at the first ')' that closes a paren opened before the segment.
bool split_unbalanced(const Seg& s, Pairs& out) {
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i]->text == "(") ++depth;
    if (s[i]->text == ")" && --depth < 0) {
      scan_segment(Seg(s.begin(), s.begin() + i), out);
      scan_segment(Seg(s.begin() + i + 1, s.end()), out);
      return true;
    }
  }
  return false;
}

void scan_segment(const Seg& s, Pairs& out) {
  if (s.empty()) return;
  const std::string& head = s[0]->text;
  if ((head == "if" || head == "while" || head == "for" || head == "switch") &&
      s.size() > 1 && s[1]->text == "(") {
    int depth = 0;
    for (size_t i = 1; i < s.size(); ++i) {
      if (s[i]->text == "(") ++depth;
      if (s[i]->text == ")" && --depth == 0) {
        scan_segment(Seg(s.begin() + 2, s.begin() + i), out);
        scan_segment(Seg(s.begin() + i + 1, s.end()), out);
        return;
      }
    }
    scan_segment(Seg(s.begin() + 2, s.end()), out);
    return;
  }
  if (head == "else" || head == "do") {
    scan_segment(Seg(s.begin() + 1, s.end()), out);
    return;
  }
  if (split_unbalanced(s, out)) return;
  if (head == "return") {
    add_uses(s, 1, s.size(), "<return>", out);
    return;
  }
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i]->text == ":" && i > 0 && is_name(*s[i - 1])) {
      add_uses(s, i + 1, s.size(), s[i - 1]->text, out);
      return;
    }
  }
  for (size_t i = 0; i < s.size(); ++i) {
    if (!is_assign_op(s[i]->text)) continue;
    const size_t root = lvalue_root(s, i);
    if (root == std::string::npos) return;
    const std::string& def = s[root]->text;
    if (s[i]->text != "=") out.emplace_back(def, def);
    add_uses(s, i + 1, s.size(), def, out);
    return;
  }
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i]->text != "++" && s[i]->text != "--") continue;
    size_t name = std::string::npos;
    if (i + 1 < s.size() && is_name(*s[i + 1])) name = i + 1;
    if (name == std::string::npos && i > 0) name = lvalue_root(s, i);
    if (name != std::string::npos) {
      out.emplace_back(s[name]->text, s[name]->text);
      return;
    }
  }
  for (size_t i = 0; i + 3 < s.size(); ++i) {
    if (is_name(*s[i]) && (s[i + 1]->text == "." || s[i + 1]->text == "->") &&
        is_name(*s[i + 2]) && s[i + 3]->text == "(") {
      const size_t root = lvalue_root(s, i + 1);
      add_uses(s, i + 4, s.size(), s[root]->text, out);
      return;
    }
  }
  for (size_t i = 1; i + 1 < s.size(); ++i) {
    const std::string& prev = s[i - 1]->text;
    const bool typed_before = s[i - 1]->kind == TokenKind::kTypeName ||
                              is_name(*s[i - 1]) || prev == ">" ||
                              prev == "&" || prev == "*" || prev == "auto";
    if (is_name(*s[i]) && typed_before &&
        (s[i + 1]->text == "(" || s[i + 1]->text == "{")) {
      add_uses(s, i + 2, s.size(), s[i]->text, out);
      return;
    }
  }
}

}  // namespace

std::vector<Token> code_tokens(std::string_view source) {
  std::vector<Token> tokens = lex(source);
  std::erase_if(tokens,
                [](const Token& t) { return t.kind == TokenKind::kComment; });
  return tokens;
}

double weighted_bleu(const std::vector<std::string>& reference,
                     const std::vector<std::string>& candidate) {
  if (candidate.empty() || reference.empty()) return 0.0;
  const size_t max_n = std::min<size_t>(4, candidate.size());
  double log_sum = 0.0;
  for (size_t n = 1; n <= max_n; ++n) {
    const auto cand = ngram_counts(candidate, n);
    const auto ref = ngram_counts(reference, n);
    double matched = 0.0, total = 0.0;
    for (const auto& [gram, count] : cand) {
      const double w = n == 1 ? token_weight(gram[0]) : 1.0;
      total += w * count;
      auto it = ref.find(gram);
      if (it != ref.end()) matched += w * std::min(count, it->second);
    }
    if (n == 1 && matched == 0.0) return 0.0;
    if (n > 1) {
      matched += 1.0;
      total += 1.0;
    }
    log_sum += std::log(matched / total);
  }
  const double bp = candidate.size() > reference.size()
                        ? 1.0
                        : std::exp(1.0 - static_cast<double>(reference.size()) /
                                             candidate.size());
  return std::clamp(bp * std::exp(log_sum / max_n), 0.0, 1.0);
}

std::vector<std::string> syntax_skeleton(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kKeyword || t.kind == TokenKind::kPunctuation ||
        (t.kind == TokenKind::kTypeName && is_fundamental_type(t.text))) {
      out.push_back(t.text);
    }
  }
  return out;
}

double sequence_match(const std::vector<std::string>& a,
                      const std::vector<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  return 2.0 * static_cast<double>(lcs_length(a, b)) /
         static_cast<double>(a.size() + b.size());
}

std::vector<std::pair<std::string, std::string>> def_use_pairs(
    const std::vector<Token>& tokens) {
  Pairs out;
  Seg seg;
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::kComment) continue;
    if (t.text == ";" || t.text == "{" || t.text == "}") {
      scan_segment(seg, out);
      seg.clear();
    } else {
      seg.push_back(&t);
    }
  }
  scan_segment(seg, out);
  return out;
}

CodeBleuParts codebleu_parts(std::string_view original,
                             std::string_view edited) {
  const std::vector<Token> ta = code_tokens(original);
  const std::vector<Token> tb = code_tokens(edited);
  std::vector<std::string> a, b;
  for (const Token& t : ta) a.push_back(t.text);
  for (const Token& t : tb) b.push_back(t.text);

  CodeBleuParts p;
  if (a == b) {
    p.token_bleu = p.weighted_bleu = p.syntax_match = p.dataflow_match = 1.0;
    p.score = 1.0;
    return p;
  }
  p.token_bleu = bleu(a, b);
  p.weighted_bleu = weighted_bleu(a, b);

  const auto sa = syntax_skeleton(ta);
  const auto sb = syntax_skeleton(tb);
  p.syntax_match = sa.empty() && sb.empty() ? sequence_match(a, b)
                                            : sequence_match(sa, sb);

  const Pairs da = def_use_pairs(ta);
  if (da.empty()) {
    p.dataflow_match = p.token_bleu;
  } else {
    std::map<std::pair<std::string, std::string>, int> remaining;
    for (const auto& e : def_use_pairs(tb)) ++remaining[e];
    int matched = 0;
    for (const auto& e : da) {
      auto it = remaining.find(e);
      if (it != remaining.end() && it->second > 0) {
        --it->second;
        ++matched;
      }
    }
    p.dataflow_match = static_cast<double>(matched) / da.size();
  }
  p.score = std::clamp(
      (p.token_bleu + p.weighted_bleu + p.syntax_match + p.dataflow_match) / 4.0,
      0.0, 1.0);
  return p;
}

double codebleu(std::string_view original, std::string_view edited) {
  return codebleu_parts(original, edited).score;
}

}  // namespace eco
