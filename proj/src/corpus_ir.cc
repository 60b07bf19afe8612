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

#include "eco/corpus_ir.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace eco {
namespace {

namespace fs = std::filesystem;

bool is(const Token& t, std::string_view text) { return t.text == text; }

bool is_name_token(const Token& t) {
  return t.kind == TokenKind::kIdentifier || t.kind == TokenKind::kTypeName;
}

// Non-comment view over a token vector; structural scans work on this and
// map back to original indices for the record's token slice.
struct Code {
  std::vector<Token> toks;
  std::vector<size_t> orig;  // index into the full token vector

  explicit Code(const std::vector<Token>& all) {
    for (size_t i = 0; i < all.size(); ++i) {
      if (all[i].kind == TokenKind::kComment) continue;
      toks.push_back(all[i]);
      orig.push_back(i);
    }
  }
  size_t size() const { return toks.size(); }
  const Token& operator[](size_t i) const { return toks[i]; }
};

// Index of the token closing the group opened at `open`, or npos.
size_t match_close(const Code& code, size_t open, std::string_view open_text,
                   std::string_view close_text) {
  int depth = 0;
  for (size_t i = open; i < code.size(); ++i) {
    if (is(code[i], open_text)) ++depth;
    if (is(code[i], close_text) && --depth == 0) return i;
  }
  return std::string::npos;
}

// Skips a balanced template parameter/argument list starting at `i` ('<').
size_t skip_angles(const Code& code, size_t i, size_t end) {
  int depth = 0;
  for (; i < end; ++i) {
    const std::string& t = code[i].text;
    if (t == "<") ++depth;
    if (t == ">") --depth;
    if (t == ">>") depth -= 2;
    if (t == "(" ) {
      size_t c = match_close(code, i, "(", ")");
      if (c == std::string::npos || c >= end) return end;
      i = c;
      continue;
    }
    if (depth <= 0) return i + 1;
  }
  return end;
}

enum class HeadKind { kFunction, kNamespace, kClass, kBlock };

struct Head {
  HeadKind kind = HeadKind::kBlock;
  std::string name;  // declared name for functions/classes/namespaces
};

// Skips `template <...>`, attributes and `export` at the front of a head.
size_t skip_head_prefix(const Code& code, size_t b, size_t e) {
  while (b < e) {
    if (is(code[b], "template") && b + 1 < e && is(code[b + 1], "<")) {
      b = skip_angles(code, b + 1, e);
    } else if (is(code[b], "[") && b + 1 < e && is(code[b + 1], "[")) {
      size_t c = match_close(code, b, "[", "]");
      b = (c == std::string::npos) ? e : c + 1;
    } else if (is(code[b], "export") || is(code[b], "inline")) {
      ++b;
    } else {
      break;
    }
  }
  return b;
}

std::string join_name(const Code& code, size_t b, size_t e) {
  std::string out;
  for (size_t i = b; i < e; ++i) {
    const std::string& t = code[i].text;
    auto word = [](const Token& tok) {
      const unsigned char c = static_cast<unsigned char>(tok.text[0]);
      return std::isalpha(c) || c == '_' || c >= 0x80;
    };
    if (!out.empty() && word(code[i - 1]) && word(code[i])) out += ' ';
    out += t;
  }
  return out;
}

// Name of a function whose parameter list opens at `paren`: the identifier
// before it plus any visible `A::B::` qualification and destructor tilde.
std::string function_name_before(const Code& code, size_t b, size_t paren) {
  size_t first = paren - 1;
  while (first >= b + 2 && (is(code[first - 1], "~") ||
                            is(code[first - 1], "::"))) {
    if (is(code[first - 1], "~")) {
      --first;
      continue;
    }
    if (!is_name_token(code[first - 2])) break;
    first -= 2;
  }
  if (first >= b + 1 && is(code[first - 1], "~")) --first;
  return join_name(code, first, paren);
}

// Classifies the declaration head [b, e) that precedes a '{' at a scope where
// functions can be declared.
Head classify_head(const Code& code, size_t b, size_t e) {
  Head head;
  b = skip_head_prefix(code, b, e);
  if (b >= e) return head;
  const Token& first = code[b];
  if (is(first, "namespace")) {
    head.kind = HeadKind::kNamespace;
    head.name = join_name(code, b + 1, e);
    return head;
  }
  if (is(first, "extern") && b + 1 < e &&
      code[b + 1].kind == TokenKind::kString && b + 2 == e) {
    head.kind = HeadKind::kNamespace;
    return head;
  }
  if (is(first, "typedef") || is(first, "enum") || is(first, "using")) {
    return head;
  }
  if (is(first, "class") || is(first, "struct") || is(first, "union")) {
    size_t n = b + 1;
    while (n < e && ((is(code[n], "[") || is(code[n], "alignas")))) {
      if (is(code[n], "alignas") && n + 1 < e) {
        size_t c = match_close(code, n + 1, "(", ")");
        n = (c == std::string::npos) ? e : c + 1;
      } else {
        size_t c = match_close(code, n, "[", "]");
        n = (c == std::string::npos) ? e : c + 1;
      }
    }
    if (n >= e) return Head{HeadKind::kClass, ""};  // anonymous
    size_t after = n + 1;
    while (after + 1 < e && is(code[after], "::") &&
           is_name_token(code[after + 1])) {
      after += 2;
    }
    if (is_name_token(code[n]) &&
        (after == e || is(code[after], ":") || is(code[after], "final") ||
         is(code[after], "<"))) {
      return Head{HeadKind::kClass, join_name(code, n, after)};
    }
    if (is(code[n], ":")) return Head{HeadKind::kClass, ""};
  }

  // Function: operator overloads first, then the first "name (" candidate.
  int depth = 0;
  for (size_t i = b; i < e; ++i) {
    const Token& t = code[i];
    if (is(t, "(")) {
      if (depth == 0 && i > b && is_name_token(code[i - 1]) &&
          !(i >= b + 2 && (is(code[i - 2], ".") || is(code[i - 2], "->")))) {
        head.kind = HeadKind::kFunction;
        head.name = function_name_before(code, b, i);
        return head;
      }
      ++depth;
    } else if (is(t, ")")) {
      --depth;
    } else if (depth == 0 && is(t, "operator")) {
      size_t p = i + 1;
      if (p + 1 < e && is(code[p], "(") && is(code[p + 1], ")")) p += 2;
      while (p < e && !is(code[p], "(")) ++p;
      if (p >= e) return head;
      size_t first = i;
      while (first >= b + 2 && is(code[first - 1], "::") &&
             is_name_token(code[first - 2])) {
        first -= 2;
      }
      head.kind = HeadKind::kFunction;
      head.name = join_name(code, first, p);
      return head;
    } else if (depth == 0 && is(t, "=")) {
      return head;  // initializer, e.g. a lambda or brace-init variable
    }
  }
  return head;
}

struct Scope {
  HeadKind kind;
  std::string name;
};

std::string qualified(const std::vector<Scope>& scopes,
                      const std::string& name) {
  std::string out;
  for (const Scope& s : scopes) {
    if (s.name.empty()) continue;
    out += s.name;
    out += "::";
  }
  return out + name;
}

// True if '{' at `brace` opens a brace-initializer inside a constructor's
// member-initializer list rather than the body.
bool is_member_init_brace(const Code& code, size_t head_begin, size_t brace) {
  if (brace == 0 || brace <= head_begin) return false;
  const Token& prev = code[brace - 1];
  if (!is_name_token(prev) && !is(prev, ">")) return false;
  // Look for ") :" at depth zero earlier in the head.
  int depth = 0;
  for (size_t i = head_begin; i < brace; ++i) {
    if (is(code[i], "(")) ++depth;
    if (is(code[i], ")")) {
      --depth;
      if (depth == 0 && i + 1 < brace && is(code[i + 1], ":")) return true;
    }
  }
  return false;
}

}  // namespace

std::string make_function_id(std::string_view file, std::string_view name,
                             int start_line) {
  std::string id(file);
  id += ':';
  id += name;
  id += ':';
  id += std::to_string(start_line);
  return id;
}

std::vector<FunctionRecord> extract_functions(
    std::string_view source_text, std::string_view file_path,
    std::vector<std::string>* diagnostics) {
  const std::vector<Token> all = lex(source_text);
  const Code code(all);
  std::vector<FunctionRecord> out;
  std::vector<Scope> scopes;
  auto fail = [&](int line, std::string_view what) {
    if (diagnostics != nullptr) {
      std::ostringstream msg;
      msg << file_path << ":" << line << ": UnbalancedBraces: " << what
          << "; file skipped";
      diagnostics->push_back(msg.str());
    }
    return std::vector<FunctionRecord>{};
  };

  size_t head_begin = 0;
  for (size_t i = 0; i < code.size(); ++i) {
    const Token& t = code[i];
    if (is(t, ";")) {
      head_begin = i + 1;
      continue;
    }
    if (is(t, ":") && i > 0 &&
        (is(code[i - 1], "public") || is(code[i - 1], "private") ||
         is(code[i - 1], "protected"))) {
      head_begin = i + 1;
      continue;
    }
    if (is(t, "}")) {
      if (scopes.empty()) return fail(t.line, "unexpected '}'");
      scopes.pop_back();
      head_begin = i + 1;
      continue;
    }
    if (!is(t, "{")) continue;
    if (is_member_init_brace(code, head_begin, i)) {
      size_t close = match_close(code, i, "{", "}");
      if (close == std::string::npos) return fail(t.line, "unclosed '{'");
      i = close;
      continue;
    }

    const Head head = classify_head(code, head_begin, i);
    if (head.kind == HeadKind::kNamespace || head.kind == HeadKind::kClass) {
      scopes.push_back(Scope{head.kind, head.name});
      head_begin = i + 1;
      continue;
    }
    const size_t close = match_close(code, i, "{", "}");
    if (close == std::string::npos) return fail(t.line, "unclosed '{'");
    if (head.kind == HeadKind::kFunction && head_begin < i) {
      FunctionRecord rec;
      rec.name = qualified(scopes, head.name);
      rec.file = std::string(file_path);
      rec.span = LineSpan{code[head_begin].line, code[close].line};
      rec.id = make_function_id(rec.file, rec.name, rec.span.start);
      rec.tokens.assign(all.begin() + static_cast<long>(code.orig[head_begin]),
                        all.begin() + static_cast<long>(code.orig[close]) + 1);
      out.push_back(std::move(rec));
    }
    i = close;
    // Anything after a block's closing brace starts a new head, except a
    // trailing ';' which the loop handles anyway.
    head_begin = i + 1;
  }
  if (!scopes.empty()) {
    return fail(code.size() > 0 ? code[code.size() - 1].line : 1,
                "unclosed scope at end of file");
  }
  return out;
}

namespace {

const std::set<std::string_view>& decl_specifiers() {
  static const std::set<std::string_view> kSet = {
      "const",    "volatile",     "static", "constexpr", "mutable",
      "register", "thread_local", "inline", "typename",  "extern",
      "struct",   "class",        "enum",
  };
  return kSet;
}

bool is_fundamental(std::string_view w) {
  static const std::set<std::string_view> kSet = {
      "bool",  "char", "char8_t", "char16_t", "char32_t", "wchar_t",  "short",
      "int",   "long", "float",   "double",   "void",     "signed", "unsigned",
  };
  return kSet.contains(w);
}

class TypeScanner {
 public:
  TypeScanner(const Code& code, std::set<std::string>* out)
      : code_(code), out_(out) {}

  void scan(size_t params_open, size_t params_close) {
    static const std::set<std::string_view> kFollow = {";", "=", "(", "{",
                                                       ",", ")", "[", ":"};
    const size_t n = code_.size();
    // The function's own declarator (return type, name) is not scanned.
    const size_t first = params_open == std::string::npos ? 0 : params_open;
    for (size_t i = first; i < n; ++i) {
      if (!is_decl_start(i)) continue;
      std::vector<std::string> names;
      bool plain = false;
      pending_close_ = 0;
      auto after = parse_type(i, &names, &plain);
      if (!after) continue;
      size_t j = *after;
      bool indirect = false;
      while (j < n && (is(code_[j], "*") || is(code_[j], "&") ||
                       is(code_[j], "&&") || is(code_[j], "const"))) {
        indirect |= !is(code_[j], "const");
        ++j;
      }
      if (j + 1 >= n || code_[j].kind != TokenKind::kIdentifier) continue;
      const std::string& follow = code_[j + 1].text;
      if (!kFollow.contains(follow)) continue;
      if (names.empty()) continue;  // `auto x`: a declaration, no type
      if (plain && indirect) {
        // `a * b` and `a & b` are also expressions; accept only where an
        // expression would be meaningless.
        const bool in_params = i > params_open && i < params_close;
        const bool unambiguous =
            follow == "=" || follow == ":" || follow == ";" ||
            (in_params && (follow == "," || follow == ")"));
        if (!unambiguous) continue;
      }
      out_->insert(names.begin(), names.end());
    }
  }

 private:
  // Parses a type at `i`; returns the index after it and appends the names
  // found (the type itself first, then template arguments).
  std::optional<size_t> parse_type(size_t i, std::vector<std::string>* names,
                                   bool* plain_identifier_base) {
    const size_t n = code_.size();
    while (i < n && decl_specifiers().contains(code_[i].text)) ++i;
    if (i >= n) return std::nullopt;
    *plain_identifier_base = false;
    if (is_fundamental(code_[i].text)) {
      const size_t b = i;
      while (i < n && is_fundamental(code_[i].text)) ++i;
      names->push_back(join_name(code_, b, i));
    } else if (is(code_[i], "auto")) {
      ++i;
    } else {
      const size_t b = i;
      if (is(code_[i], "::")) ++i;
      int parts = 0;
      bool templated = false;
      std::vector<std::string> inner;
      std::string name;
      while (i < n && is_name_token(code_[i])) {
        if (!name.empty()) name += "::";
        name += code_[i].text;
        ++i;
        ++parts;
        if (i < n && is(code_[i], "<")) {
          auto after = parse_template_args(i, &inner);
          if (!after) return std::nullopt;
          i = *after;
          templated = true;
          if (pending_close_ > 0) break;
        }
        if (i + 1 < n && is(code_[i], "::") && is_name_token(code_[i + 1])) {
          ++i;
          continue;
        }
        break;
      }
      if (parts == 0) return std::nullopt;
      if (is(code_[b], "::")) name = "::" + name;
      *plain_identifier_base = parts == 1 && !templated &&
                               code_[b].kind == TokenKind::kIdentifier;
      names->push_back(name);
      names->insert(names->end(), inner.begin(), inner.end());
    }
    while (pending_close_ == 0 && i < n &&
           (is(code_[i], "const") || is(code_[i], "volatile"))) {
      ++i;
    }
    return i;
  }

  // `open` is a '<'. A '>>' closes both this list and the enclosing one;
  // pending_close_ carries the second half to the caller.
  std::optional<size_t> parse_template_args(size_t open,
                                            std::vector<std::string>* names) {
    const size_t n = code_.size();
    size_t i = open + 1;
    while (i < n) {
      if (is(code_[i], ">")) return i + 1;
      if (is(code_[i], ">>")) {
        pending_close_ = 1;
        return i + 1;
      }
      std::vector<std::string> arg;
      bool plain = false;
      auto after = parse_type(i, &arg, &plain);
      if (after && pending_close_ > 0) {
        --pending_close_;
        names->insert(names->end(), arg.begin(), arg.end());
        return *after;
      }
      if (after && *after < n) {
        size_t j = *after;
        while (j < n && (is(code_[j], "*") || is(code_[j], "&") ||
                         is(code_[j], "&&"))) {
          ++j;
        }
        if (j < n && (is(code_[j], ",") || is(code_[j], ">") ||
                      is(code_[j], ">>"))) {
          names->insert(names->end(), arg.begin(), arg.end());
          i = is(code_[j], ",") ? j + 1 : j;
          continue;
        }
      }
      // Non-type argument: skip to the next ',' or '>' at depth zero.
      int depth = 0;
      while (i < n) {
        const std::string& t = code_[i].text;
        if (t == "(" || t == "[") ++depth;
        if (t == ")" || t == "]") --depth;
        if (depth == 0 && (t == "," || t == ">" || t == ">>")) break;
        if (depth < 0 || t == ";" || t == "{" || t == "}") return std::nullopt;
        ++i;
      }
      if (i >= n) return std::nullopt;
      if (is(code_[i], ",")) ++i;
    }
    return std::nullopt;
  }

  bool is_decl_start(size_t i) const {
    if (i == 0) return true;
    static const std::set<std::string_view> kBefore = {"{", "}", ";",
                                                       "(", ",", ":"};
    return kBefore.contains(code_[i - 1].text);
  }

  const Code& code_;
  std::set<std::string>* out_;
  int pending_close_ = 0;
};

}  // namespace

std::set<std::string> declared_types(const std::vector<Token>& tokens) {
  const Code code(tokens);
  size_t open = std::string::npos, close = std::string::npos;
  for (size_t i = 0; i < code.size(); ++i) {
    if (is(code[i], "{")) break;
    if (is(code[i], "(")) {
      open = i;
      close = match_close(code, i, "(", ")");
      break;
    }
  }
  std::set<std::string> out;
  TypeScanner scanner(code, &out);
  scanner.scan(open, close == std::string::npos ? open : close);
  return out;
}

FunctionRecord annotate_types(FunctionRecord record) {
  record.type_set = declared_types(record.tokens);
  return record;
}

FunctionRecord attach_cost(
    FunctionRecord record,
    const std::map<std::string, CostAnnotation>& costs) {
  if (auto it = costs.find(record.id); it != costs.end()) {
    record.cost = it->second;
  }
  return record;
}

std::string token_source(const FunctionRecord& record) {
  std::string out;
  int line = -1;
  for (const Token& t : record.tokens) {
    if (t.line != line) {
      if (line != -1) out += '\n';
      line = t.line;
    } else {
      out += ' ';
    }
    out += t.text;
  }
  if (!out.empty()) out += '\n';
  return out;
}

bool is_cpp_source_path(const std::filesystem::path& path) {
  static const std::set<std::string> kExt = {".cc",  ".cpp", ".cxx", ".c++",
                                             ".h",   ".hh",  ".hpp", ".hxx",
                                             ".ipp", ".inl"};
  return kExt.contains(path.extension().string());
}

std::vector<fs::path> list_corpus_files(const fs::path& manifest_or_dir) {
  std::vector<fs::path> out;
  if (fs::is_directory(manifest_or_dir)) {
    for (const auto& entry :
         fs::recursive_directory_iterator(manifest_or_dir)) {
      if (entry.is_regular_file() && is_cpp_source_path(entry.path())) {
        out.push_back(entry.path());
      }
    }
  } else {
    std::ifstream in(manifest_or_dir);
    if (!in) {
      throw std::runtime_error("cannot read corpus manifest: " +
                               manifest_or_dir.string());
    }
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
        line.pop_back();
      }
      if (line.empty() || line[0] == '#') continue;
      fs::path p(line);
      if (p.is_relative() && !fs::exists(p)) {
        p = manifest_or_dir.parent_path() / p;
      }
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void to_json(nlohmann::json& j, const Token& t) {
  j = nlohmann::json{{"text", t.text},
                     {"kind", token_kind_name(t.kind)},
                     {"line", t.line}};
}

void from_json(const nlohmann::json& j, Token& t) {
  t.text = j.at("text").get<std::string>();
  t.kind = token_kind_from_name(j.at("kind").get<std::string>());
  t.line = j.at("line").get<int>();
}

void to_json(nlohmann::json& j, const CostAnnotation& c) {
  j = nlohmann::json{{"cycles_pct", c.cycles_pct}, {"source", c.source}};
  j["alloc_bytes_pct"] = c.alloc_bytes_pct
                             ? nlohmann::json(*c.alloc_bytes_pct)
                             : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, CostAnnotation& c) {
  c.cycles_pct = j.at("cycles_pct").get<double>();
  c.source = j.value("source", "");
  if (j.contains("alloc_bytes_pct") && !j["alloc_bytes_pct"].is_null()) {
    c.alloc_bytes_pct = j["alloc_bytes_pct"].get<double>();
  }
  if (c.cycles_pct < 0.0 || c.cycles_pct > 100.0 ||
      (c.alloc_bytes_pct &&
       (*c.alloc_bytes_pct < 0.0 || *c.alloc_bytes_pct > 100.0))) {
    throw std::invalid_argument("cost percentage outside [0,100]");
  }
}

void to_json(nlohmann::json& j, const FunctionRecord& r) {
  j = nlohmann::json{{"id", r.id},
                     {"name", r.name},
                     {"file", r.file},
                     {"span", {r.span.start, r.span.end}},
                     {"tokens", r.tokens},
                     {"type_set", r.type_set}};
  j["cost"] = r.cost ? nlohmann::json(*r.cost) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, FunctionRecord& r) {
  r.id = j.at("id").get<std::string>();
  r.name = j.at("name").get<std::string>();
  r.file = j.at("file").get<std::string>();
  const auto& span = j.at("span");
  r.span = LineSpan{span.at(0).get<int>(), span.at(1).get<int>()};
  r.tokens = j.at("tokens").get<std::vector<Token>>();
  r.type_set = j.value("type_set", std::set<std::string>{});
  r.cost.reset();
  if (j.contains("cost") && !j["cost"].is_null()) {
    r.cost = j["cost"].get<CostAnnotation>();
  }
}

std::vector<FunctionRecord> read_records_jsonl(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::vector<FunctionRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(nlohmann::json::parse(line).get<FunctionRecord>());
  }
  return out;
}

void write_records_jsonl(const fs::path& p,
                         const std::vector<FunctionRecord>& records) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  for (const FunctionRecord& r : records) out << nlohmann::json(r).dump() << '\n';
}

}  // namespace eco
