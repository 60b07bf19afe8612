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

#include "eco/lexer.h"

#include <array>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace eco {
namespace {

const std::unordered_set<std::string_view>& keywords() {
  static const std::unordered_set<std::string_view> kSet = {
      "alignas",      "alignof",     "and",          "and_eq",
      "asm",          "auto",        "bitand",       "bitor",
      "break",        "case",        "catch",        "class",
      "compl",        "concept",     "const",        "consteval",
      "constexpr",    "constinit",   "const_cast",   "continue",
      "co_await",     "co_return",   "co_yield",     "decltype",
      "default",      "delete",      "do",           "dynamic_cast",
      "else",         "enum",        "explicit",     "export",
      "extern",       "false",       "for",          "friend",
      "goto",         "if",          "inline",       "mutable",
      "namespace",    "new",         "noexcept",     "not",
      "not_eq",       "nullptr",     "operator",     "or",
      "or_eq",        "private",     "protected",    "public",
      "register",     "reinterpret_cast",            "requires",
      "return",       "sizeof",      "static",       "static_assert",
      "static_cast",  "struct",      "switch",       "template",
      "this",         "thread_local", "throw",       "true",
      "try",          "typedef",     "typeid",       "typename",
      "union",        "using",       "virtual",      "volatile",
      "while",        "xor",         "xor_eq",       "final",
      "override",
  };
  return kSet;
}

const std::unordered_set<std::string_view>& type_words() {
  static const std::unordered_set<std::string_view> kSet = {
      // fundamental
      "bool", "char", "char8_t", "char16_t", "char32_t", "wchar_t", "short",
      "int", "long", "float", "double", "void", "signed", "unsigned",
      // library
      "string", "string_view", "wstring", "vector", "map", "unordered_map",
      "multimap", "unordered_multimap", "set", "unordered_set", "multiset",
      "list", "forward_list", "deque", "array", "pair", "tuple", "optional",
      "variant", "any", "unique_ptr", "shared_ptr", "weak_ptr", "function",
      "span", "bitset", "queue", "priority_queue", "stack", "mutex",
      "thread", "atomic", "istream", "ostream", "stringstream",
      "ostringstream", "istringstream", "fstream", "ifstream", "ofstream",
      "flat_hash_map", "flat_hash_set", "node_hash_map", "node_hash_set",
      "btree_map", "btree_set", "Cord", "Status", "StatusOr",
      "initializer_list", "iterator", "const_iterator",
  };
  return kSet;
}

const std::unordered_set<std::string_view>& library_names() {
  static const std::unordered_set<std::string_view> kSet = {
      "std",          "absl",        "push_back",   "emplace_back",
      "pop_back",     "reserve",     "resize",      "size",
      "empty",        "clear",       "capacity",    "shrink_to_fit",
      "begin",        "end",         "cbegin",      "cend",
      "rbegin",       "rend",        "find",        "count",
      "contains",     "insert",      "emplace",     "try_emplace",
      "emplace_hint", "insert_or_assign",           "erase",
      "at",           "front",       "back",        "data",
      "move",         "forward",     "swap",        "sort",
      "stable_sort",  "make_unique", "make_shared", "make_pair",
      "make_tuple",   "substr",      "append",      "c_str",
      "first",        "second",      "length",      "push",
      "pop",          "top",         "lower_bound", "upper_bound",
      "equal_range",  "accumulate",  "transform",   "copy",
      "fill",         "min",         "max",         "get",
      "value",        "has_value",   "reset",       "release",
      "str",          "to_string",   "cout",        "cerr",
      "endl",         "assign",      "StrCat",      "StrAppend",
  };
  return kSet;
}

const std::unordered_set<std::string_view>& control_keywords() {
  static const std::unordered_set<std::string_view> kSet = {
      "for",      "while", "do",   "if",  "else", "switch", "case",
      "break",    "continue", "goto", "return", "try", "catch",
  };
  return kSet;
}

// Longest first within each leading character.
constexpr std::array<std::string_view, 50> kPunctuators = {
    "<=>", "->*", "...", "<<=", ">>=", "::", "->", "++", "--", "<<",
    ">>",  "<=",  ">=",  "==",  "!=",  "&&", "||", "+=", "-=", "*=",
    "/=",  "%=",  "&=",  "|=",  "^=",  ".*", "##", "{",  "}",  "[",
    "]",   "(",   ")",   ";",   ":",   ",",  ".",  "?",  "+",  "-",
    "*",   "/",   "%",   "^",   "&",   "|",  "~",  "!",  "=",  "<",
};

bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c >= 0x80;
}

bool is_ident_char(unsigned char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool line_start = true;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
        line_start = true;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        ++pos_;
        continue;
      }
      const size_t begin = pos_;
      const int begin_line = line_;
      TokenKind kind;
      if (c == '#' && line_start) {
        lex_preprocessor();
        kind = TokenKind::kComment;
      } else if (c == '/' && peek(1) == '/') {
        lex_line_comment();
        kind = TokenKind::kComment;
      } else if (c == '/' && peek(1) == '*') {
        lex_block_comment();
        kind = TokenKind::kComment;
      } else if (size_t n = string_prefix_len(); n != std::string_view::npos) {
        pos_ += n;
        lex_quoted();
        kind = TokenKind::kString;
      } else if (raw_string_prefix_len() != std::string_view::npos) {
        lex_raw_string();
        kind = TokenKind::kString;
      } else if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
        lex_number();
        kind = TokenKind::kNumber;
      } else if (is_ident_start(c)) {
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
        const std::string_view word = src_.substr(begin, pos_ - begin);
        kind = is_type_word(word)  ? TokenKind::kTypeName
               : is_keyword(word) ? TokenKind::kKeyword
                                  : TokenKind::kIdentifier;
      } else {
        lex_punctuation();
        kind = TokenKind::kPunctuation;
      }
      line_start = false;
      std::string text(src_.substr(begin, pos_ - begin));
      if (kind == TokenKind::kComment) {
        while (!text.empty() && (text.back() == ' ' || text.back() == '\t' ||
                                 text.back() == '\r')) {
          text.pop_back();
        }
      }
      out.push_back(Token{std::move(text), kind, begin_line});
    }
    return out;
  }

 private:
  char peek(size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') ++line_;
    ++pos_;
  }

  void lex_preprocessor() {
    while (pos_ < src_.size() && src_[pos_] != '\n') {
      if (src_[pos_] == '\\' && peek(1) == '\n') {
        advance();
      } else if (src_[pos_] == '\\' && peek(1) == '\r' && peek(2) == '\n') {
        advance();
        advance();
      }
      advance();
    }
  }

  void lex_line_comment() {
    while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
  }

  void lex_block_comment() {
    pos_ += 2;
    while (pos_ < src_.size()) {
      if (src_[pos_] == '*' && peek(1) == '/') {
        pos_ += 2;
        return;
      }
      advance();
    }
  }

  // Length of an encoding prefix followed by a quote, or npos.
  size_t string_prefix_len() const {
    for (std::string_view p : {"u8", "u", "U", "L", ""}) {
      if (src_.substr(pos_, p.size()) != p) continue;
      const char q = peek(p.size());
      if (q == '"' || q == '\'') return p.size();
    }
    return std::string_view::npos;
  }

  size_t raw_string_prefix_len() const {
    for (std::string_view p : {"u8R\"", "uR\"", "UR\"", "LR\"", "R\""}) {
      if (src_.substr(pos_, p.size()) == p) return p.size();
    }
    return std::string_view::npos;
  }

  void lex_quoted() {
    const char quote = src_[pos_];
    ++pos_;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\\' && pos_ + 1 < src_.size()) {
        ++pos_;
        advance();
        continue;
      }
      if (c == '\n') return;  // unterminated; stop at end of line
      ++pos_;
      if (c == quote) return;
    }
  }

  void lex_raw_string() {
    pos_ += raw_string_prefix_len();
    const size_t delim_begin = pos_;
    while (pos_ < src_.size() && src_[pos_] != '(' && src_[pos_] != '\n') {
      ++pos_;
    }
    std::string terminator = ")";
    terminator += src_.substr(delim_begin, pos_ - delim_begin);
    terminator += '"';
    while (pos_ < src_.size()) {
      if (src_.substr(pos_, terminator.size()) == terminator) {
        pos_ += terminator.size();
        return;
      }
      advance();
    }
  }

  void lex_number() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if ((c == '+' || c == '-') && pos_ > 0) {
        const char prev = src_[pos_ - 1];
        if (prev == 'e' || prev == 'E' || prev == 'p' || prev == 'P') {
          ++pos_;
          continue;
        }
        return;
      }
      if (is_ident_char(c) || c == '.' ||
          (c == '\'' && is_ident_char(peek(1)))) {
        ++pos_;
        continue;
      }
      return;
    }
  }

  void lex_punctuation() {
    for (std::string_view p : kPunctuators) {
      if (src_.substr(pos_, p.size()) == p) {
        pos_ += p.size();
        return;
      }
    }
    // '>' '#' '@' '$' '\\' and anything unexpected.
    ++pos_;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::kIdentifier: return "identifier";
    case TokenKind::kKeyword: return "keyword";
    case TokenKind::kTypeName: return "type_name";
    case TokenKind::kNumber: return "literal_number";
    case TokenKind::kString: return "literal_string";
    case TokenKind::kPunctuation: return "punctuation";
    case TokenKind::kComment: return "comment";
  }
  return "identifier";
}

TokenKind token_kind_from_name(std::string_view name) {
  for (TokenKind k :
       {TokenKind::kIdentifier, TokenKind::kKeyword, TokenKind::kTypeName,
        TokenKind::kNumber, TokenKind::kString, TokenKind::kPunctuation,
        TokenKind::kComment}) {
    if (token_kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown token kind: " + std::string(name));
}

std::vector<Token> lex(std::string_view source) {
  return Lexer(source).run();
}

std::string join_tokens(const std::vector<Token>& tokens) {
  std::string out;
  bool need_newline = false;
  for (const Token& t : tokens) {
    const bool directive =
        t.kind == TokenKind::kComment && t.text.starts_with("#");
    if (!out.empty()) out += (need_newline || directive) ? '\n' : ' ';
    out += t.text;
    need_newline = t.kind == TokenKind::kComment &&
                   (t.text.starts_with("//") || directive);
  }
  return out;
}

bool is_keyword(std::string_view word) { return keywords().contains(word); }

bool is_type_word(std::string_view word) {
  if (type_words().contains(word)) return true;
  // POSIX-style typedef names: size_t, uint64_t, my_handle_t.
  return word.size() > 2 && word.ends_with("_t") && is_ident_start(word[0]);
}

bool is_library_name(std::string_view word) {
  return library_names().contains(word);
}

bool is_control_keyword(std::string_view word) {
  return control_keywords().contains(word);
}

}  // namespace eco
