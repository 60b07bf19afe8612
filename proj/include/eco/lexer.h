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

#ifndef ECO_LEXER_H_
#define ECO_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

namespace eco {

enum class TokenKind {
  kIdentifier,
  kKeyword,
  kTypeName,
  kNumber,
  kString,
  kPunctuation,
  kComment,
};

std::string_view token_kind_name(TokenKind kind);
// Throws std::invalid_argument for an unknown name.
TokenKind token_kind_from_name(std::string_view name);

struct Token {
  std::string text;
  TokenKind kind = TokenKind::kIdentifier;
  int line = 1;  // 1-based

  bool operator==(const Token&) const = default;
};

// Lexes C++ source into tokens. Comments and preprocessor lines are kept as
// kComment tokens; the lexer never fails, unterminated literals and comments
// run to end of input.
std::vector<Token> lex(std::string_view source);

// Joins token texts so that lex(join_tokens(t)) yields the same texts and
// kinds. Tokens are separated by a single space, except that line comments
// and preprocessor lines are followed by a newline.
std::string join_tokens(const std::vector<Token>& tokens);

// Word classification shared by the lexer and the normalizer.
bool is_keyword(std::string_view word);
bool is_type_word(std::string_view word);
// Standard-library vocabulary (namespaces, container members, algorithms)
// that is not a user-defined name and survives normalization.
bool is_library_name(std::string_view word);
// Control-flow keywords used by the flow-similarity component.
bool is_control_keyword(std::string_view word);

}  // namespace eco

#endif  // ECO_LEXER_H_
