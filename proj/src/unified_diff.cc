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

#include "eco/unified_diff.h"

#include <algorithm>
#include <charconv>
#include <regex>

namespace eco {
namespace {

enum class Op { kEqual, kDelete, kInsert };

struct Edit {
  Op op;
  int a;  // index into before (kEqual, kDelete)
  int b;  // index into after (kEqual, kInsert)
};

// Myers' O(ND) greedy algorithm with a stored frontier per edit distance.
std::vector<Edit> myers(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  const int max = n + m;
  const int offset = max + 1;
  std::vector<int> v(2 * max + 3, 0);
  std::vector<std::vector<int>> trace;
  int final_d = 0;
  for (int d = 0; d <= max; ++d) {
    trace.push_back(v);
    bool done = false;
    for (int k = -d; k <= d; k += 2) {
      int x;
      if (k == -d || (k != d && v[offset + k - 1] < v[offset + k + 1])) {
        x = v[offset + k + 1];
      } else {
        x = v[offset + k - 1] + 1;
      }
      int y = x - k;
      while (x < n && y < m && a[x] == b[y]) {
        ++x;
        ++y;
      }
      v[offset + k] = x;
      if (x >= n && y >= m) {
        done = true;
        break;
      }
    }
    if (done) {
      final_d = d;
      break;
    }
  }
  std::vector<Edit> edits;
  int x = n, y = m;
  for (int d = final_d; d > 0; --d) {
    const std::vector<int>& pv = trace[d];
    const int k = x - y;
    int prev_k;
    if (k == -d || (k != d && pv[offset + k - 1] < pv[offset + k + 1])) {
      prev_k = k + 1;
    } else {
      prev_k = k - 1;
    }
    const int prev_x = pv[offset + prev_k];
    const int prev_y = prev_x - prev_k;
    while (x > prev_x && y > prev_y) {
      --x;
      --y;
      edits.push_back({Op::kEqual, x, y});
    }
    if (x == prev_x) {
      --y;
      edits.push_back({Op::kInsert, x, y});
    } else {
      --x;
      edits.push_back({Op::kDelete, x, y});
    }
  }
  while (x > 0 && y > 0) {
    --x;
    --y;
    edits.push_back({Op::kEqual, x, y});
  }
  std::reverse(edits.begin(), edits.end());
  return edits;
}

std::string_view strip_newline(std::string_view s) {
  if (!s.empty() && s.back() == '\n') s.remove_suffix(1);
  return s;
}

bool same_line(std::string_view a, std::string_view b) {
  return strip_newline(a) == strip_newline(b);
}

std::string format_range(int start, int count) {
  return std::to_string(start) + "," + std::to_string(count);
}

void append_line(std::string& out, char op, const std::string& text) {
  out.push_back(op);
  out += text;
  if (text.empty() || text.back() != '\n') {
    out += "\n\\ No newline at end of file\n";
  }
}

}  // namespace

std::vector<std::string> DiffHunk::old_lines() const {
  std::vector<std::string> out;
  for (const HunkLine& l : lines) {
    if (l.op != '+') out.push_back(l.text);
  }
  return out;
}

std::vector<std::string> DiffHunk::new_lines() const {
  std::vector<std::string> out;
  for (const HunkLine& l : lines) {
    if (l.op != '-') out.push_back(l.text);
  }
  return out;
}

int DiffHunk::added() const {
  return static_cast<int>(
      std::count_if(lines.begin(), lines.end(),
                    [](const HunkLine& l) { return l.op == '+'; }));
}

int DiffHunk::removed() const {
  return static_cast<int>(
      std::count_if(lines.begin(), lines.end(),
                    [](const HunkLine& l) { return l.op == '-'; }));
}

int DiffHunk::modified() const {
  int total = 0, plus = 0, minus = 0;
  auto flush = [&] {
    total += std::max(plus, minus);
    plus = minus = 0;
  };
  for (const HunkLine& l : lines) {
    if (l.op == '+') {
      ++plus;
    } else if (l.op == '-') {
      ++minus;
    } else {
      flush();
    }
  }
  flush();
  return total;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      out.emplace_back(text.substr(pos));
      break;
    }
    out.emplace_back(text.substr(pos, eol - pos + 1));
    pos = eol + 1;
  }
  return out;
}

std::vector<DiffHunk> diff_hunks(std::string_view before, std::string_view after,
                                 int context) {
  const std::vector<std::string> a = split_lines(before);
  const std::vector<std::string> b = split_lines(after);
  const std::vector<Edit> edits = myers(a, b);
  std::vector<DiffHunk> hunks;
  const int total = static_cast<int>(edits.size());
  int i = 0;
  while (i < total) {
    if (edits[i].op == Op::kEqual) {
      ++i;
      continue;
    }
    // Extend the hunk while the next change is within 2*context lines.
    int first = std::max(0, i - context);
    int last_change = i;
    int j = i;
    while (j < total) {
      if (edits[j].op != Op::kEqual) {
        last_change = j;
        ++j;
        continue;
      }
      int run = 0;
      while (j + run < total && edits[j + run].op == Op::kEqual) ++run;
      if (j + run < total && run <= 2 * context) {
        j += run;
        continue;
      }
      break;
    }
    const int end = std::min(total, last_change + 1 + context);
    DiffHunk h;
    int old_count = 0, new_count = 0;
    for (int e = first; e < end; ++e) {
      const Edit& ed = edits[e];
      switch (ed.op) {
        case Op::kEqual:
          h.lines.push_back({' ', a[ed.a]});
          ++old_count;
          ++new_count;
          break;
        case Op::kDelete:
          h.lines.push_back({'-', a[ed.a]});
          ++old_count;
          break;
        case Op::kInsert:
          h.lines.push_back({'+', b[ed.b]});
          ++new_count;
          break;
      }
    }
    // Start positions follow the 1-based convention; an empty side points
    // at the line before the change.
    const Edit& head = edits[first];
    h.old_start = old_count == 0 ? head.a : head.a + 1;
    h.new_start = new_count == 0 ? head.b : head.b + 1;
    hunks.push_back(std::move(h));
    i = end;
  }
  return hunks;
}

std::string format_hunks(const std::vector<DiffHunk>& hunks,
                         std::string_view old_label,
                         std::string_view new_label) {
  if (hunks.empty()) return "";
  std::string out = "--- " + std::string(old_label) + "\n+++ " +
                    std::string(new_label) + "\n";
  for (const DiffHunk& h : hunks) {
    const int old_count = static_cast<int>(h.old_lines().size());
    const int new_count = static_cast<int>(h.new_lines().size());
    out += "@@ -" + format_range(h.old_start, old_count) + " +" +
           format_range(h.new_start, new_count) + " @@\n";
    for (const HunkLine& l : h.lines) append_line(out, l.op, l.text);
  }
  return out;
}

std::string unified_diff(std::string_view before, std::string_view after,
                         std::string_view old_label, std::string_view new_label,
                         int context) {
  return format_hunks(diff_hunks(before, after, context), old_label, new_label);
}

std::vector<DiffHunk> parse_diff(std::string_view text) {
  static const std::regex kHeader(
      R"(^@@+ -(\d+)(?:,(\d+))? \+(\d+)(?:,(\d+))? @@+.*$)");
  std::vector<std::string> raw;
  for (std::string& line : split_lines(text)) {
    std::string_view s = strip_newline(line);
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    raw.emplace_back(s);
  }
  std::vector<DiffHunk> hunks;
  size_t i = 0;
  while (i < raw.size()) {
    const std::string& line = raw[i++];
    if (line.rfind("@@", 0) != 0) continue;
    DiffHunk h;
    std::smatch m;
    int remaining_old = -1, remaining_new = -1;  // -1: read greedily
    if (std::regex_match(line, m, kHeader)) {
      h.old_start = std::stoi(m[1]);
      h.new_start = std::stoi(m[3]);
      remaining_old = m[2].matched ? std::stoi(m[2]) : 1;
      remaining_new = m[4].matched ? std::stoi(m[4]) : 1;
    } else {
      h.old_start = -1;
      h.new_start = -1;
    }
    const bool counted = remaining_old >= 0;
    while (i < raw.size()) {
      const std::string& body = raw[i];
      if (!body.empty() && body[0] == '\\') {
        if (!h.lines.empty()) {
          std::string& prev = h.lines.back().text;
          if (!prev.empty() && prev.back() == '\n') prev.pop_back();
        }
        ++i;
        continue;
      }
      if (counted && remaining_old <= 0 && remaining_new <= 0) break;
      if (body.rfind("@@", 0) == 0 || body.rfind("```", 0) == 0) break;
      if ((body.rfind("--- ", 0) == 0 && i + 1 < raw.size() &&
           raw[i + 1].rfind("+++ ", 0) == 0)) {
        break;
      }
      char op;
      std::string content;
      if (body.empty()) {
        if (!counted) break;
        op = ' ';
      } else if (body[0] == ' ' || body[0] == '-' || body[0] == '+') {
        op = body[0];
        content = body.substr(1);
      } else {
        break;
      }
      if (counted) {
        if (op != '+' && remaining_old <= 0) break;
        if (op != '-' && remaining_new <= 0) break;
        if (op != '+') --remaining_old;
        if (op != '-') --remaining_new;
      }
      h.lines.push_back({op, content + "\n"});
      ++i;
    }
    const bool changes = std::any_of(h.lines.begin(), h.lines.end(),
                                     [](const HunkLine& l) { return l.op != ' '; });
    if (changes) hunks.push_back(std::move(h));
  }
  return hunks;
}

ApplyResult apply_hunks(std::string_view source,
                        const std::vector<DiffHunk>& hunks, int fuzz) {
  std::vector<std::string> lines = split_lines(source);
  ApplyResult result;
  long delta = 0;
  long floor = 0;  // lines before this index were produced by earlier hunks
  for (const DiffHunk& h : hunks) {
    const std::vector<std::string> old_lines = h.old_lines();
    const std::vector<std::string> new_lines = h.new_lines();
    const long size = static_cast<long>(lines.size());
    const long span = static_cast<long>(old_lines.size());
    auto matches = [&](long pos) {
      if (pos < floor || pos + span > size) return false;
      for (long k = 0; k < span; ++k) {
        if (!same_line(lines[pos + k], old_lines[k])) return false;
      }
      return true;
    };
    long found = -1;
    if (h.old_start < 0) {
      for (long pos = floor; pos + span <= size && found < 0; ++pos) {
        if (matches(pos)) found = pos;
      }
    } else {
      const long anchor = (h.old_start == 0 || span == 0 ? h.old_start : h.old_start - 1) +
               delta;
      for (int off = 0; off <= fuzz && found < 0; ++off) {
        if (matches(anchor - off)) {
          found = anchor - off;
        } else if (off > 0 && matches(anchor + off)) {
          found = anchor + off;
        }
      }
    }
    result.hunk_applied.push_back(found >= 0);
    if (found < 0) {
      ++result.failed;
      continue;
    }
    lines.erase(lines.begin() + found, lines.begin() + found + span);
    lines.insert(lines.begin() + found, new_lines.begin(), new_lines.end());
    const long new_span = static_cast<long>(new_lines.size());
    if (h.old_start >= 0) {
      const long base = h.old_start == 0 || span == 0 ? h.old_start
                                                      : h.old_start - 1;
      delta = found + new_span - (base + span);
    }
    floor = found + new_span;
    ++result.applied;
  }
  for (const std::string& l : lines) result.text += l;
  return result;
}

int modified_line_count(const std::vector<DiffHunk>& hunks) {
  int total = 0;
  for (const DiffHunk& h : hunks) total += h.modified();
  return total;
}

}  // namespace eco
