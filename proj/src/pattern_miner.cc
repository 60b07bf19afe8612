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

#include "eco/pattern_miner.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "eco/hashing.h"
#include "eco/lexer.h"
#include "eco/process.h"
#include "eco/unified_diff.h"

namespace eco {
namespace {

constexpr std::string_view kEmptyTree = "4b825dc642cb6eb9a060e54bf8d69288fbee4904";

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return "";
  const size_t e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

ProcessResult git(const std::filesystem::path& repo,
                  std::vector<std::string> args) {
  args.insert(args.begin(), {"git", "-C", repo.string()});
  return run_process(args);
}

void require_repo(const std::filesystem::path& repo) {
  if (!std::filesystem::is_directory(repo) ||
      !git(repo, {"rev-parse", "--git-dir"}).ok()) {
    throw NotAGitRepo(repo.string());
  }
}

std::optional<std::string> resolve_commit(const std::filesystem::path& repo,
                                          const std::string& rev) {
  auto r = git(repo, {"rev-parse", "--verify", "-q", rev + "^{commit}"});
  if (!r.ok()) return std::nullopt;
  return trim(r.out);
}

std::vector<FileChange> changed_cpp_files(const std::filesystem::path& repo,
                                          const std::string& commit) {
  std::string parent(kEmptyTree);
  if (auto p = resolve_commit(repo, commit + "^")) parent = *p;
  auto r = git(repo, {"diff", "--no-renames", "--name-status", "-z", parent,
                      commit});
  if (!r.ok()) throw Error("GitError", r.err);
  std::vector<std::string> fields;
  std::stringstream ss(r.out);
  for (std::string f; std::getline(ss, f, '\0');) fields.push_back(f);
  std::vector<FileChange> out;
  for (size_t i = 0; i + 1 < fields.size(); i += 2) {
    const char status = fields[i].empty() ? '?' : fields[i][0];
    const std::string& path = fields[i + 1];
    if (!is_cpp_source_path(path)) continue;
    FileChange change{path, "", ""};
    if (status != 'A') change.before = git(repo, {"show", parent + ":" + path}).out;
    if (status != 'D') change.after = git(repo, {"show", commit + ":" + path}).out;
    out.push_back(std::move(change));
  }
  return out;
}

// Fills files for every hit, spreading commits over worker threads.
void collect_files(const std::filesystem::path& repo,
                   std::vector<CommitHit>& hits) {
  const size_t workers = std::min<size_t>(
      hits.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (size_t i = next++; i < hits.size(); i = next++) {
          hits[i].files = changed_cpp_files(repo, hits[i].commit_id);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

using Words = std::initializer_list<std::string_view>;

// Token statistics for the category rule table.
struct Side {
  std::vector<Token> tokens;

  size_t count(Words words) const {
    size_t n = 0;
    for (const Token& t : tokens) {
      for (std::string_view w : words) n += t.text == w;
    }
    return n;
  }
  size_t member_calls(Words names) const {
    size_t n = 0;
    for (size_t i = 1; i < tokens.size(); ++i) {
      if (tokens[i - 1].text != "." && tokens[i - 1].text != "->") continue;
      for (std::string_view name : names) n += tokens[i].text == name;
    }
    return n;
  }
  size_t std_moves() const {
    size_t n = 0;
    for (size_t i = 1; i + 1 < tokens.size(); ++i) {
      n += tokens[i].text == "move" && tokens[i - 1].text == "::" &&
           tokens[i + 1].text == "(";
    }
    return n;
  }
  // `auto &` bindings.
  size_t ref_bindings() const {
    size_t n = 0;
    for (size_t i = 0; i + 1 < tokens.size(); ++i) {
      n += tokens[i].text == "auto" &&
           (tokens[i + 1].text == "&" || tokens[i + 1].text == "&&");
    }
    return n;
  }
  // `const T &` declarations: a reference within a few tokens of const.
  size_t const_refs() const {
    size_t n = 0;
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i].text != "const") continue;
      for (size_t j = i + 1; j < tokens.size() && j <= i + 8; ++j) {
        const std::string& t = tokens[j].text;
        if (t == "&") {
          ++n;
          break;
        }
        if (t == ";" || t == "," || t == "(" || t == ")" || t == "=" ||
            t == "{" || t == "}") {
          break;
        }
      }
    }
    return n;
  }
};

std::string join_side(const std::vector<DiffHunk>& hunks, char op) {
  std::string out;
  for (const DiffHunk& h : hunks) {
    for (const HunkLine& l : h.lines) {
      if (l.op == op) {
        out += l.text;
        if (out.back() != '\n') out += '\n';
      }
    }
  }
  return out;
}

std::string short_hash(std::initializer_list<std::string_view> parts) {
  std::string joined;
  for (std::string_view p : parts) {
    joined += p;
    joined.push_back('\0');
  }
  return sha256_hex(joined).substr(0, 16);
}

}  // namespace

std::string_view category_name(Category c) {
  switch (c) {
    case Category::kAlloc: return "Alloc";
    case Category::kArgs: return "Args";
    case Category::kCopy: return "Copy";
    case Category::kMap: return "Map";
    case Category::kMove: return "Move";
    case Category::kSort: return "Sort";
    case Category::kVector: return "Vector";
    case Category::kOther: return "Other";
  }
  return "Other";
}

Category category_from_name(std::string_view name) {
  const std::string key = lower(name);
  for (Category c : kAllCategories) {
    if (lower(category_name(c)) == key) return c;
  }
  throw std::invalid_argument("unknown category '" + std::string(name) + "'");
}

std::vector<KeywordRule> default_rules() {
  return parse_rules(
      "speedup\nfaster\noptimiz\nreduce cpu\ncpu cost\nmemory reduction\n"
      "benchmark\nperf\nallocation\n");
}

std::vector<KeywordRule> parse_rules(std::string_view text) {
  std::vector<KeywordRule> rules;
  std::stringstream ss{std::string(text)};
  int number = 0;
  for (std::string line; std::getline(ss, line);) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    ++number;
    KeywordRule rule;
    rule.text = line;
    if (line.rfind("re:", 0) == 0) {
      rule.is_regex = true;
      try {
        rule.pattern = std::regex(line.substr(3), std::regex::ECMAScript |
                                                      std::regex::icase);
      } catch (const std::regex_error& e) {
        throw RuleParseError(number, e.what());
      }
      if (line.size() == 3) throw RuleParseError(number, "empty pattern");
    } else {
      rule.text = lower(line);
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<KeywordRule> load_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_rules(ss.str());
}

std::vector<std::string> match_rules(std::string_view message,
                                     const std::vector<KeywordRule>& rules) {
  const std::string folded = lower(message);
  const std::string text(message);
  std::vector<std::string> out;
  for (const KeywordRule& r : rules) {
    const bool hit = r.is_regex ? std::regex_search(text, r.pattern)
                                : folded.find(r.text) != std::string::npos;
    if (hit) out.push_back(r.text);
  }
  return out;
}

std::vector<CommitHit> scan_commits(const std::filesystem::path& repo,
                                    const std::vector<KeywordRule>& rules) {
  require_repo(repo);
  auto log = git(repo, {"log", "--reverse", "--format=%H%x1f%B%x1e", "HEAD"});
  std::vector<CommitHit> hits;
  if (!log.ok()) return hits;  // no commits yet
  std::stringstream ss(log.out);
  for (std::string record; std::getline(ss, record, '\x1e');) {
    const size_t sep = record.find('\x1f');
    if (sep == std::string::npos) continue;
    CommitHit hit;
    hit.commit_id = trim(record.substr(0, sep));
    hit.message = trim(record.substr(sep + 1));
    hit.matched_keywords = match_rules(hit.message, rules);
    if (!hit.matched_keywords.empty()) hits.push_back(std::move(hit));
  }
  collect_files(repo, hits);
  return hits;
}

std::vector<CommitHit> ingest_curated(const std::filesystem::path& repo,
                                      const std::filesystem::path& feed_file,
                                      std::vector<std::string>* warnings) {
  require_repo(repo);
  std::ifstream in(feed_file);
  if (!in) throw Error("IoError", "cannot read " + feed_file.string());
  auto warn = [&](const std::string& w) {
    if (warnings) warnings->push_back(w);
  };
  std::vector<CommitHit> hits;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::stringstream fields(line);
    std::string rev, tag;
    fields >> rev >> tag;
    auto id = resolve_commit(repo, rev);
    if (!id) {
      warn("line " + std::to_string(line_no) + ": unresolved commit " + rev);
      continue;
    }
    CommitHit hit;
    hit.commit_id = *id;
    hit.message = trim(git(repo, {"log", "-1", "--format=%B", *id}).out);
    if (!tag.empty()) {
      try {
        hit.category = category_from_name(tag);
      } catch (const std::invalid_argument&) {
        warn("line " + std::to_string(line_no) + ": unknown category " + tag);
      }
    }
    hits.push_back(std::move(hit));
  }
  collect_files(repo, hits);
  return hits;
}

Category categorize_diff(std::string_view diff) {
  const std::vector<DiffHunk> hunks = parse_diff(diff);
  const Side add{lex(join_side(hunks, '+'))};
  const Side rem{lex(join_side(hunks, '-'))};

  if (add.member_calls({"reserve"}) > rem.member_calls({"reserve"})) {
    return Category::kVector;
  }
  if (add.std_moves() > rem.std_moves()) return Category::kMove;

  const Words ordered = {"map", "set", "multimap", "multiset", "btree_map",
                        "btree_set"};
  const Words unordered = {"unordered_map", "unordered_set", "flat_hash_map",
                          "flat_hash_set", "node_hash_map", "node_hash_set"};
  const Words sorts = {"sort", "stable_sort"};
  if ((rem.count(ordered) > 0 && add.count(unordered) > rem.count(unordered)) ||
      rem.count(sorts) > add.count(sorts)) {
    return Category::kSort;
  }

  const Words map_api = {"try_emplace", "insert_or_assign"};
  const Words lookups = {"find", "count", "contains", "at"};
  auto lookup_total = [&](const Side& s) {
    return s.member_calls(lookups) + s.count({"["});
  };
  if (add.member_calls(map_api) > rem.member_calls(map_api) ||
      (rem.member_calls({"find", "count", "contains"}) > 0 &&
       lookup_total(rem) > lookup_total(add)) ||
      (rem.count({"["}) > add.count({"["}) &&
       add.ref_bindings() > rem.ref_bindings())) {
    return Category::kMap;
  }

  const Words views = {"string_view", "Span", "cref"};
  if (add.count(views) > rem.count(views)) return Category::kArgs;
  if (add.const_refs() > rem.const_refs()) return Category::kCopy;

  const Words allocs = {"new", "make_unique", "make_shared", "malloc", "calloc"};
  if (rem.count(allocs) > add.count(allocs) ||
      add.count({"static", "thread_local"}) >
          rem.count({"static", "thread_local"}) ||
      add.member_calls({"clear"}) > rem.member_calls({"clear"})) {
    return Category::kAlloc;
  }
  return Category::kOther;
}

std::vector<AntiPatternExample> build_examples(
    const std::vector<CommitHit>& hits, std::vector<std::string>* diagnostics) {
  auto note = [&](const std::string& d) {
    if (diagnostics) diagnostics->push_back(d);
  };
  std::vector<AntiPatternExample> out;
  std::set<std::string> seen;
  for (const CommitHit& hit : hits) {
    for (const FileChange& file : hit.files) {
      std::map<std::string, std::vector<FunctionRecord>> before, after;
      std::vector<std::string> order;
      for (FunctionRecord& r :
           extract_functions(file.before, file.path, diagnostics)) {
        if (!before.count(r.name)) order.push_back(r.name);
        before[r.name].push_back(annotate_types(std::move(r)));
      }
      for (FunctionRecord& r :
           extract_functions(file.after, file.path, diagnostics)) {
        after[r.name].push_back(annotate_types(std::move(r)));
      }
      for (const auto& [name, fns] : after) {
        if (!before.count(name)) {
          note(hit.commit_id + " " + file.path + ": " + name +
               " has no earlier version");
        }
      }
      for (const std::string& name : order) {
        const auto& b = before[name];
        const auto& a = after[name];
        if (a.size() != b.size()) {
          note(hit.commit_id + " " + file.path + ": " + name + " has " +
               std::to_string(b.size()) + " versions before and " +
               std::to_string(a.size()) + " after");
        }
        for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
          const std::string before_text = token_source(b[i]);
          const std::string after_text = token_source(a[i]);
          if (before_text == after_text) continue;
          AntiPatternExample ex;
          ex.before_fn = b[i];
          ex.after_fn = a[i];
          ex.commit_id = hit.commit_id;
          ex.diff = unified_diff(before_text, after_text, "a/" + file.path,
                                 "b/" + file.path);
          ex.category = hit.category ? *hit.category : categorize_diff(ex.diff);
          ex.id = short_hash({hit.commit_id, file.path, name, ex.diff});
          if (seen.insert(ex.id).second) out.push_back(std::move(ex));
        }
      }
    }
  }
  return out;
}

void to_json(nlohmann::json& j, const AntiPatternExample& e) {
  j = {{"id", e.id},
       {"category", category_name(e.category)},
       {"before_fn", e.before_fn},
       {"after_fn", e.after_fn},
       {"diff", e.diff},
       {"commit_id", e.commit_id}};
}

void from_json(const nlohmann::json& j, AntiPatternExample& e) {
  e.id = j.at("id").get<std::string>();
  e.category = category_from_name(j.at("category").get<std::string>());
  e.before_fn = j.at("before_fn").get<FunctionRecord>();
  e.after_fn = j.at("after_fn").get<FunctionRecord>();
  e.diff = j.at("diff").get<std::string>();
  e.commit_id = j.value("commit_id", "");
}

std::vector<AntiPatternExample> read_examples_jsonl(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot read " + path.string());
  std::vector<AntiPatternExample> out;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line).get<AntiPatternExample>());
    } catch (const std::exception& e) {
      throw Error("ParseError", path.string() + ":" + std::to_string(line_no) +
                                    ": " + e.what());
    }
  }
  return out;
}

void write_examples_jsonl(const std::filesystem::path& path,
                          const std::vector<AntiPatternExample>& examples) {
  std::ofstream out(path);
  if (!out) throw Error("IoError", "cannot write " + path.string());
  for (const AntiPatternExample& e : examples) {
    out << nlohmann::json(e).dump() << '\n';
  }
}

}  // namespace eco
