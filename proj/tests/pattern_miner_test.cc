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

#include <set>

#include "eco/process.h"
#include "eco/unified_diff.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace eco {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;
using ::testing::SizeIs;
using testing::TempDir;
using testing::write_file;

struct Snapshot {
  std::string path;
  std::string text;
};

struct History {
  std::vector<std::string> ids;       // oldest first
  std::vector<std::string> seeded;    // commits with performance keywords
  std::map<std::string, Category> expected;  // seeded commit -> category
};

class HistoryRepo {
 public:
  explicit HistoryRepo(const std::filesystem::path& root) : root_(root) {
    sh("git init -q -b main . && git config user.name t && "
       "git config user.email t@example.com");
  }

  std::string commit(const std::vector<Snapshot>& files,
                     const std::string& message) {
    for (const Snapshot& f : files) write_file(root_ / f.path, f.text);
    const std::string date = "2024-01-01T00:00:" + pad(++count_) + "Z";
    ProcessOptions opts;
    opts.cwd = root_;
    opts.stdin_text = message;
    auto r = run_shell("git add -A && GIT_AUTHOR_DATE=" + date +
                           " GIT_COMMITTER_DATE=" + date +
                           " git commit -q -F - && git rev-parse HEAD",
                       opts);
    EXPECT_TRUE(r.ok()) << r.err;
    return r.out.substr(0, 40);
  }

 private:
  static std::string pad(int n) { return (n < 10 ? "0" : "") + std::to_string(n); }
  void sh(const std::string& cmd) {
    ProcessOptions opts;
    opts.cwd = root_;
    auto r = run_shell(cmd, opts);
    ASSERT_TRUE(r.ok()) << r.err;
  }
  std::filesystem::path root_;
  int count_ = 0;
};

constexpr const char* kVecBefore =
    "#include <vector>\n"
    "std::vector<int> Squares(const std::vector<int>& in) {\n"
    "  std::vector<int> out;\n"
    "  for (int x : in) out.push_back(x * x);\n"
    "  return out;\n"
    "}\n";
constexpr const char* kVecAfter =
    "#include <vector>\n"
    "std::vector<int> Squares(const std::vector<int>& in) {\n"
    "  std::vector<int> out;\n"
    "  out.reserve(in.size());\n"
    "  for (int x : in) out.push_back(x * x);\n"
    "  return out;\n"
    "}\n";

History build_history(const std::filesystem::path& root) {
  HistoryRepo repo(root);
  History h;
  auto plain = [&](const std::vector<Snapshot>& f, const std::string& m) {
    h.ids.push_back(repo.commit(f, m));
  };
  auto seeded = [&](const std::vector<Snapshot>& f, const std::string& m,
                    Category c) {
    h.ids.push_back(repo.commit(f, m));
    h.seeded.push_back(h.ids.back());
    h.expected[h.ids.back()] = c;
  };
  plain({{"README.md", "demo\n"}}, "Initial import");
  plain({{"src/vec.cc", kVecBefore}}, "Add squares helper");
  plain({{"src/move.cc",
          "#include <string>\n#include <vector>\n"
          "void Append(std::vector<std::string>& sink, std::string s) {\n"
          "  s += \"!\";\n  sink.push_back(s);\n}\n"}},
        "Add append helper");
  plain({{"src/map.cc",
          "#include <map>\n#include <string>\n"
          "int Bump(std::map<std::string, int>& m, const std::string& k) {\n"
          "  if (m.count(k) == 0) m[k] = 0;\n"
          "  m[k] += 1;\n"
          "  return m[k];\n}\n"}},
        "Add counter bump");
  plain({{"src/copy.cc",
          "#include <string>\nstruct Config { std::string name; };\n"
          "const Config& Global();\n"
          "size_t NameLength() {\n  Config c = Global();\n"
          "  return c.name.size();\n}\n"}},
        "Add name length");
  plain({{"src/sort.cc",
          "#include <map>\n#include <vector>\n"
          "size_t CountDistinct(const std::vector<int>& v) {\n"
          "  std::map<int, int> seen;\n  for (int x : v) seen[x]++;\n"
          "  return seen.size();\n}\n"}},
        "Add distinct counter");
  plain({{"src/loop.cc",
          "int Sum(const int* p, int n) {\n  int s = 0;\n"
          "  for (int i = 0; i < n; ++i) s += p[i];\n  return s;\n}\n"}},
        "Add sum");
  plain({{"README.md", "demo\nusage\n"}}, "Fix typo in readme");
  seeded({{"src/vec.cc", kVecAfter}},
         "Reserve vector to cut allocations, 12% speedup", Category::kVector);
  plain({{"src/extra.cc", "int One() { return 1; }\n"}}, "Add constant helper");
  seeded({{"src/move.cc",
           "#include <string>\n#include <vector>\n"
           "void Append(std::vector<std::string>& sink, std::string s) {\n"
           "  s += \"!\";\n  sink.push_back(std::move(s));\n}\n"}},
         "Move string at last use for faster appends", Category::kMove);
  plain({{"docs/notes.txt", "notes\n"}}, "Document the helpers");
  seeded({{"src/map.cc",
           "#include <map>\n#include <string>\n"
           "int Bump(std::map<std::string, int>& m, const std::string& k) {\n"
           "  int& v = m[k];\n"
           "  v += 1;\n"
           "  return v;\n}\n"}},
         "Avoid repeated map lookups to reduce CPU in Bump", Category::kMap);
  plain({{"src/extra.cc", "int One() { return 1; }\nint Two() { return 2; }\n"}},
        "Add another constant");
  seeded({{"src/copy.cc",
           "#include <string>\nstruct Config { std::string name; };\n"
           "const Config& Global();\n"
           "size_t NameLength() {\n  const Config& c = Global();\n"
           "  return c.name.size();\n}\n"}},
         "Bind config by reference (perf)", Category::kCopy);
  plain({{"README.md", "demo\nusage\nlicense\n"}}, "Mention license");
  seeded({{"src/sort.cc",
           "#include <unordered_map>\n#include <vector>\n"
           "size_t CountDistinct(const std::vector<int>& v) {\n"
           "  std::unordered_map<int, int> seen;\n  for (int x : v) seen[x]++;\n"
           "  return seen.size();\n}\n"}},
         "Optimize distinct counting with a hash map", Category::kSort);
  plain({{"src/extra.cc", "int One() { return 1; }\nint Two() { return 2; }\n"
                          "int Three() { return 3; }\n"}},
        "Add third constant");
  seeded({{"src/loop.cc",
           "int Sum(const int* p, int n) {\n  int s = 0;\n"
           "  for (int i = 0; i != n; ++i) s += p[i];\n  return s;\n}\n"}},
         "Loop cleanup verified with a benchmark", Category::kOther);
  plain({{"src/extra.cc", "int One() { return 1; }\nint Two() { return 2; }\n"}},
        "Remove third constant");
  return h;
}

class PatternMinerTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir();
    history_ = new History(build_history(dir_->path()));
  }
  static void TearDownTestSuite() {
    delete history_;
    delete dir_;
  }
  static TempDir* dir_;
  static History* history_;
};

TempDir* PatternMinerTest::dir_ = nullptr;
History* PatternMinerTest::history_ = nullptr;

TEST(KeywordRulesTest, SubstringAndRegex) {
  auto rules = parse_rules("# perf words\nspeedup\n\nre:\\b(cut|trim)s? cpu\\b\n");
  ASSERT_THAT(rules, SizeIs(2));
  EXPECT_THAT(match_rules("Reserve vector to cut allocations, 12% SpeedUp", rules),
              ElementsAre("speedup"));
  EXPECT_THAT(match_rules("Fix typo", rules), IsEmpty());
  EXPECT_THAT(match_rules("This cuts CPU", rules), ElementsAre("re:\\b(cut|trim)s? cpu\\b"));
}

TEST(KeywordRulesTest, BadRegexReportsRuleNumber) {
  try {
    parse_rules("speedup\n# comment\nre:([a-z\n");
    FAIL();
  } catch (const RuleParseError& e) {
    EXPECT_EQ(e.rule(), 2);
  }
}

TEST(KeywordRulesTest, DefaultsMatchSpeedupMessage) {
  EXPECT_THAT(match_rules("Reserve vector to cut allocations, 12% speedup",
                          default_rules()),
              ElementsAre("speedup", "allocation"));
}

TEST(CategorizeTest, RuleTable) {
  auto cat = [](const std::string& before, const std::string& after) {
    return categorize_diff(unified_diff(before, after));
  };
  EXPECT_EQ(cat("std::vector<int> v;\n", "std::vector<int> v;\nv.reserve(n);\n"),
            Category::kVector);
  EXPECT_EQ(cat("out.push_back(s);\n", "out.push_back(std::move(s));\n"),
            Category::kMove);
  EXPECT_EQ(cat("if (m.find(k) == m.end()) m[k] = 1;\n",
                "m.try_emplace(k, 1);\n"),
            Category::kMap);
  EXPECT_EQ(cat("Config c = Get();\n", "const Config& c = Get();\n"),
            Category::kCopy);
  EXPECT_EQ(cat("void F(std::string s);\n", "void F(std::string_view s);\n"),
            Category::kArgs);
  EXPECT_EQ(cat("std::set<int> s;\n", "absl::flat_hash_set<int> s;\n"),
            Category::kSort);
  EXPECT_EQ(cat("auto* b = new Buffer();\n", "buffer_.clear();\n"),
            Category::kAlloc);
  EXPECT_EQ(cat("int x = 1;\n", "int x = 2;\n"), Category::kOther);
}

TEST(CategoryNameTest, RoundTrip) {
  for (Category c : kAllCategories) {
    EXPECT_EQ(category_from_name(category_name(c)), c);
  }
  EXPECT_EQ(category_from_name("vector"), Category::kVector);
  EXPECT_THROW(category_from_name("Speed"), std::invalid_argument);
}

TEST_F(PatternMinerTest, ScanFindsExactlySeededCommits) {
  ASSERT_THAT(history_->ids, SizeIs(20));
  auto hits = scan_commits(dir_->path(), default_rules());
  std::vector<std::string> ids;
  for (const CommitHit& h : hits) {
    ids.push_back(h.commit_id);
    EXPECT_THAT(h.matched_keywords, ::testing::Not(IsEmpty()));
  }
  EXPECT_EQ(ids, history_->seeded);
}

TEST_F(PatternMinerTest, HitsCarryCppSnapshotsOnly) {
  auto hits = scan_commits(dir_->path(), default_rules());
  ASSERT_FALSE(hits.empty());
  ASSERT_THAT(hits[0].files, SizeIs(1));
  EXPECT_EQ(hits[0].files[0].path, "src/vec.cc");
  EXPECT_EQ(hits[0].files[0].before, kVecBefore);
  EXPECT_EQ(hits[0].files[0].after, kVecAfter);
}

TEST_F(PatternMinerTest, ExamplesGetRuleTableCategories) {
  std::vector<std::string> diags;
  auto examples =
      build_examples(scan_commits(dir_->path(), default_rules()), &diags);
  ASSERT_THAT(examples, SizeIs(6));
  for (const AntiPatternExample& ex : examples) {
    EXPECT_EQ(ex.category, history_->expected.at(ex.commit_id))
        << ex.before_fn.name << "\n" << ex.diff;
  }
}

TEST_F(PatternMinerTest, DiffReproducesAfterFunction) {
  auto examples = build_examples(scan_commits(dir_->path(), default_rules()));
  for (const AntiPatternExample& ex : examples) {
    auto r = apply_hunks(token_source(ex.before_fn), parse_diff(ex.diff));
    EXPECT_EQ(r.failed, 0);
    EXPECT_EQ(r.text, token_source(ex.after_fn));
    EXPECT_EQ(ex.before_fn.name, ex.after_fn.name);
  }
}

TEST_F(PatternMinerTest, MiningIsIdempotent) {
  auto first = build_examples(scan_commits(dir_->path(), default_rules()));
  auto second = build_examples(scan_commits(dir_->path(), default_rules()));
  EXPECT_EQ(first, second);
  std::set<std::string> ids;
  for (const auto& e : first) ids.insert(e.id);
  EXPECT_EQ(ids.size(), first.size());
}

TEST_F(PatternMinerTest, CuratedFeed) {
  TempDir tmp;
  const auto& ids = history_->ids;
  write_file(tmp / "good.txt", ids[2] + "\n" + ids[3].substr(0, 10) + "\n" +
                                   ids[13] + "\n");
  std::vector<std::string> warnings;
  EXPECT_THAT(ingest_curated(dir_->path(), tmp / "good.txt", &warnings),
              SizeIs(3));
  EXPECT_THAT(warnings, IsEmpty());

  write_file(tmp / "bad.txt", "# curated\n" + ids[2] + "\ndeadbeefdeadbeef\n" +
                                  ids[3] + "\n");
  auto hits = ingest_curated(dir_->path(), tmp / "bad.txt", &warnings);
  EXPECT_THAT(hits, SizeIs(2));
  EXPECT_THAT(warnings, SizeIs(1));
  for (const CommitHit& h : hits) EXPECT_THAT(h.matched_keywords, IsEmpty());

  // A feed tag overrides the rule table (this commit would be Sort).
  write_file(tmp / "tagged.txt", ids[16] + " Alloc\n");
  auto tagged = ingest_curated(dir_->path(), tmp / "tagged.txt");
  ASSERT_THAT(tagged, SizeIs(1));
  EXPECT_EQ(tagged[0].category, Category::kAlloc);
  auto examples = build_examples(tagged);
  ASSERT_FALSE(examples.empty());
  for (const auto& e : examples) EXPECT_EQ(e.category, Category::kAlloc);
}

TEST_F(PatternMinerTest, JsonlRoundTrip) {
  TempDir tmp;
  auto examples = build_examples(scan_commits(dir_->path(), default_rules()));
  write_examples_jsonl(tmp / "db.jsonl", examples);
  EXPECT_EQ(read_examples_jsonl(tmp / "db.jsonl"), examples);
}

TEST(PatternMinerErrorsTest, NotAGitRepo) {
  TempDir tmp;
  EXPECT_THROW(scan_commits(tmp.path(), default_rules()), NotAGitRepo);
  EXPECT_THROW(scan_commits(tmp / "missing", default_rules()), NotAGitRepo);
}

TEST(BuildExamplesTest, UnpairedFunctionsAreReported) {
  CommitHit hit;
  hit.commit_id = "c0";
  hit.files.push_back({"a.cc", "int F() { return 1; }\n",
                       "int G() { return 1; }\n"});
  std::vector<std::string> diags;
  EXPECT_THAT(build_examples({hit}, &diags), IsEmpty());
  EXPECT_THAT(diags, SizeIs(2));
}

}  // namespace
}  // namespace eco
