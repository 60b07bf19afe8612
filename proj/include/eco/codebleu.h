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

// CodeBLEU-style similarity between an original snippet and its edit. The
// score is the mean of four parts, each in [0, 1]:
//   token BLEU, keyword-weighted BLEU, syntax skeleton match and def-use
//   pair match.
// The original is the reference side throughout.

#ifndef ECO_CODEBLEU_H_
#define ECO_CODEBLEU_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eco/lexer.h"

namespace eco {

inline constexpr double kKeywordWeight = 5.0;

struct CodeBleuParts {
  double token_bleu = 0.0;
  double weighted_bleu = 0.0;
  double syntax_match = 0.0;
  double dataflow_match = 0.0;
  double score = 0.0;
};

// Tokens without comments and preprocessor lines.
std::vector<Token> code_tokens(std::string_view source);

// BLEU with unigram matches and totals weighted by `kKeywordWeight` for C++
// keywords (fundamental type names included) and 1 otherwise. Higher orders
// and smoothing follow bleu().
double weighted_bleu(const std::vector<std::string>& reference,
                     const std::vector<std::string>& candidate);

// Keywords, fundamental types and punctuation in order; names and literals
// are dropped.
std::vector<std::string> syntax_skeleton(const std::vector<Token>& tokens);

// 2 * LCS / (|a| + |b|); 1 when both are empty.
double sequence_match(const std::vector<std::string>& a,
                      const std::vector<std::string>& b);

// (defined, used) identifier pairs. A name is defined by assignment, by
// compound assignment or increment, by a range-for binding, by a
// constructor-style declaration and by a member call on it; the names read
// in the same statement are its uses. Return values are recorded as defs of
// "<return>".
std::vector<std::pair<std::string, std::string>> def_use_pairs(
    const std::vector<Token>& tokens);

CodeBleuParts codebleu_parts(std::string_view original, std::string_view edited);
double codebleu(std::string_view original, std::string_view edited);

}  // namespace eco

#endif  // ECO_CODEBLEU_H_
