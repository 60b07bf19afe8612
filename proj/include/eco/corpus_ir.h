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

// Function-level intermediate representation of a C++ corpus.
//
// Functions are located lexically: an identifier followed by a parenthesized
// parameter list and a brace-delimited body at namespace or class scope.
// Lambdas and local classes stay inside their enclosing function.

#ifndef ECO_CORPUS_IR_H_
#define ECO_CORPUS_IR_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "eco/lexer.h"
#include "json.hpp"

namespace eco {

struct CostAnnotation {
  double cycles_pct = 0.0;  // of binary total, [0,100]
  std::optional<double> alloc_bytes_pct;
  std::string source;  // profile id

  bool operator==(const CostAnnotation&) const = default;
};

struct LineSpan {
  int start = 1;
  int end = 1;

  bool operator==(const LineSpan&) const = default;
};

struct FunctionRecord {
  std::string id;    // "<file>:<qualified name>:<start line>"
  std::string name;  // qualified where enclosing scopes are visible
  std::string file;
  LineSpan span;
  std::vector<Token> tokens;
  std::set<std::string> type_set;
  std::optional<CostAnnotation> cost;

  bool operator==(const FunctionRecord&) const = default;
};

std::string make_function_id(std::string_view file, std::string_view name,
                             int start_line);

// Splits a file into function records. A file with unbalanced braces yields
// no records and one diagnostic line appended to `diagnostics` (if given).
std::vector<FunctionRecord> extract_functions(
    std::string_view source_text, std::string_view file_path,
    std::vector<std::string>* diagnostics = nullptr);

// Fills type_set from parameter and local declarations, including template
// arguments. Best effort.
FunctionRecord annotate_types(FunctionRecord record);

// Lexical type extraction over an arbitrary token range.
std::set<std::string> declared_types(const std::vector<Token>& tokens);

FunctionRecord attach_cost(
    FunctionRecord record,
    const std::map<std::string, CostAnnotation>& costs);

// Whitespace-normalized source of a record: tokens grouped by source line,
// joined with single spaces, one output line per input line that has tokens.
std::string token_source(const FunctionRecord& record);

// Reads a corpus manifest (newline-delimited paths, '#' comments) or walks
// a directory for C++ sources. Paths come back sorted.
std::vector<std::filesystem::path> list_corpus_files(
    const std::filesystem::path& manifest_or_dir);

bool is_cpp_source_path(const std::filesystem::path& path);

void to_json(nlohmann::json& j, const Token& t);
void from_json(const nlohmann::json& j, Token& t);
void to_json(nlohmann::json& j, const CostAnnotation& c);
void from_json(const nlohmann::json& j, CostAnnotation& c);
void to_json(nlohmann::json& j, const FunctionRecord& r);
void from_json(const nlohmann::json& j, FunctionRecord& r);

std::vector<FunctionRecord> read_records_jsonl(const std::filesystem::path& p);
void write_records_jsonl(const std::filesystem::path& p,
                         const std::vector<FunctionRecord>& records);

}  // namespace eco

#endif  // ECO_CORPUS_IR_H_
