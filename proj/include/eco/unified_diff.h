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

// Line-based unified diffs: generation, tolerant parsing of model output,
// and hunk application with positional fuzz.
//
// Lines keep their terminator, so a final line without a newline differs
// from the same text with one and round trips byte for byte through the
// "\ No newline at end of file" marker.

#ifndef ECO_UNIFIED_DIFF_H_
#define ECO_UNIFIED_DIFF_H_

#include <string>
#include <string_view>
#include <vector>

namespace eco {

struct HunkLine {
  char op = ' ';     // ' ', '-' or '+'
  std::string text;  // including '\n' unless it is the last line of a file
                     // that does not end in a newline

  bool operator==(const HunkLine&) const = default;
};

struct DiffHunk {
  int old_start = 0;  // 1-based; 0 for an insertion into an empty file
  int new_start = 0;
  std::vector<HunkLine> lines;

  // Context plus removed lines, in order.
  std::vector<std::string> old_lines() const;
  // Context plus added lines, in order.
  std::vector<std::string> new_lines() const;
  int added() const;
  int removed() const;
  // Lines touched, counting a removed/added pair in one change run once.
  int modified() const;

  bool operator==(const DiffHunk&) const = default;
};

std::vector<std::string> split_lines(std::string_view text);

// Minimal line diff (Myers) rendered as unified diff with `context` lines
// around each change. Empty when the texts are equal.
std::vector<DiffHunk> diff_hunks(std::string_view before, std::string_view after,
                                 int context = 3);
std::string format_hunks(const std::vector<DiffHunk>& hunks,
                         std::string_view old_label = "a",
                         std::string_view new_label = "b");
std::string unified_diff(std::string_view before, std::string_view after,
                         std::string_view old_label = "a",
                         std::string_view new_label = "b", int context = 3);

// Extracts hunks from free text. Prose, markdown fences and file headers are
// skipped; header counts that disagree with the body are recomputed from the
// body. Text without any "@@" header yields no hunks.
std::vector<DiffHunk> parse_diff(std::string_view text);

struct ApplyResult {
  std::string text;
  int applied = 0;
  int failed = 0;
  std::vector<bool> hunk_applied;  // one flag per input hunk
};

// Applies hunks in order. Each hunk matches its old lines at the stated
// position shifted by earlier hunks, or up to `fuzz` lines away (nearest
// first). A hunk that matches nowhere is skipped and counted as failed.
ApplyResult apply_hunks(std::string_view source,
                        const std::vector<DiffHunk>& hunks, int fuzz = 3);

int modified_line_count(const std::vector<DiffHunk>& hunks);

}  // namespace eco

#endif  // ECO_UNIFIED_DIFF_H_
