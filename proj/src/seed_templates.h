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

// Source templates for the seeded evaluation corpus.
//
// "$F" is the function name and "$a".."$h" are local names; all are renamed
// per variant. A line starting with "-|" exists only before the fix, "+|"
// only after it. "@FILL" marks where filler statements may go. Every
// function also opens with one or two unrelated preamble blocks.

#ifndef ECO_SRC_SEED_TEMPLATES_H_
#define ECO_SRC_SEED_TEMPLATES_H_

#include "eco/pattern_miner.h"

namespace eco::seed {

struct PatternTemplate {
  Category category;
  const char* text;
};

inline constexpr PatternTemplate kPatterns[] = {
    {Category::kCopy, R"(int $F(const std::vector<std::string>& $a) {
  int $b = 0;
@FILL
-|  for (std::string $c : $a) {
+|  for (const std::string& $c : $a) {
    $b += static_cast<int>($c.size());
  }
@FILL
  return $b;
}
)"},
    {Category::kCopy, R"(-|size_t $F(std::vector<int> $a, int $b) {
+|size_t $F(const std::vector<int>& $a, int $b) {
  size_t $c = 0;
@FILL
  for (size_t $d = 0; $d < $a.size(); ++$d) {
    if ($a[$d] == $b) {
      ++$c;
    }
  }
@FILL
  return $c;
}
)"},
    {Category::kCopy, R"(std::string $F(const std::map<int, std::string>& $a, int $b) {
  auto $c = $a.find($b);
  if ($c == $a.end()) {
    return "";
  }
@FILL
-|  std::string $d = $c->second;
+|  const std::string& $d = $c->second;
  return $d + "/";
}
)"},
    {Category::kMap, R"(int $F(std::map<std::string, int>& $a, const std::string& $b) {
@FILL
-|  if ($a.find($b) != $a.end()) {
-|    return $a[$b];
+|  auto $c = $a.find($b);
+|  if ($c != $a.end()) {
+|    return $c->second;
  }
@FILL
  return 0;
}
)"},
    {Category::kMap, R"(void $F(std::unordered_map<int, int>& $a, int $b) {
@FILL
-|  if ($a.count($b) == 0) {
-|    $a[$b] = 0;
-|  }
-|  $a[$b] += 1;
+|  ++$a[$b];
@FILL
}
)"},
    {Category::kMap, R"(double $F(const std::map<int, double>& $a, int $b, double $c) {
@FILL
-|  if ($a.count($b) > 0) {
-|    return $a.at($b);
+|  auto $d = $a.find($b);
+|  if ($d != $a.end()) {
+|    return $d->second;
  }
  return $c;
}
)"},
    {Category::kVector, R"(std::vector<int> $F(const std::vector<int>& $a) {
  std::vector<int> $b;
+|  $b.reserve($a.size());
@FILL
  for (int $c : $a) {
    $b.push_back($c * 2);
  }
  return $b;
}
)"},
    {Category::kVector, R"(std::vector<double> $F(int $a, double $b) {
  std::vector<double> $c;
+|  $c.reserve($a);
@FILL
  for (int $d = 0; $d < $a; ++$d) {
    $c.push_back($d * $b);
  }
  return $c;
}
)"},
    {Category::kVector, R"(std::vector<std::string> $F(const std::vector<int>& $a) {
  std::vector<std::string> $b;
+|  $b.reserve($a.size());
@FILL
  for (size_t $c = 0; $c < $a.size(); ++$c) {
    $b.push_back(std::to_string($a[$c]));
  }
@FILL
  return $b;
}
)"},
};

// Functions without any of the evaluated anti-patterns.
inline constexpr const char* kDistractors[] = {
    R"(int $F(int $a, int $b) {
@FILL
  int $c = $a % $b;
  while ($c != 0) {
    $a = $b;
    $b = $c;
    $c = $a % $b;
  }
  return $b;
}
)",
    R"(bool $F(const std::string& $a) {
  size_t $b = 0;
  size_t $c = $a.size();
@FILL
  while ($b < $c) {
    if ($a[$b] != $a[$c - 1]) {
      return false;
    }
    ++$b;
    --$c;
  }
  return true;
}
)",
    R"(double $F(const std::vector<double>& $a) {
  if ($a.empty()) {
    return 0.0;
  }
  double $b = 0.0;
@FILL
  for (const double& $c : $a) {
    $b += $c;
  }
  return $b / static_cast<double>($a.size());
}
)",
    R"(void $F(std::vector<int>& $a) {
@FILL
  std::sort($a.begin(), $a.end());
  $a.erase(std::unique($a.begin(), $a.end()), $a.end());
}
)",
    R"(int $F(const std::unordered_map<std::string, int>& $a, const std::string& $b) {
  auto $c = $a.find($b);
@FILL
  return $c == $a.end() ? -1 : $c->second;
}
)",
    R"(std::string $F(const std::string& $a, char $b) {
  std::string $c;
@FILL
  for (char $d : $a) {
    if ($d != $b) {
      $c += $d;
    }
  }
  return $c;
}
)",
    R"(long $F(int $a) {
  long $b = 1;
@FILL
  for (int $c = 2; $c <= $a; ++$c) {
    $b *= $c;
  }
  return $b;
}
)",
    R"(void $F(std::map<std::string, int>& $a, const std::string& $b, int $c) {
@FILL
  $a[$b] = $c;
}
)",
    R"(bool $F(const std::vector<int>& $a, int $b) {
  int $c = 0;
  int $d = static_cast<int>($a.size()) - 1;
@FILL
  while ($c <= $d) {
    const int $e = $c + ($d - $c) / 2;
    if ($a[$e] == $b) {
      return true;
    }
    if ($a[$e] < $b) {
      $c = $e + 1;
    } else {
      $d = $e - 1;
    }
  }
  return false;
}
)",
    R"(std::vector<int> $F(int $a) {
  std::vector<int> $b($a, 0);
@FILL
  for (int $c = 1; $c < $a; ++$c) {
    $b[$c] = $b[$c - 1] + $c;
  }
  return $b;
}
)",
    R"(int $F(const int* $a, int $b) {
  int $c = $a[0];
@FILL
  for (int $d = 1; $d < $b; ++$d) {
    if ($a[$d] > $c) {
      $c = $a[$d];
    }
  }
  return $c;
}
)",
    R"(void $F(std::string& $a) {
@FILL
  for (char& $b : $a) {
    if ($b >= 'a' && $b <= 'z') {
      $b = static_cast<char>($b - 'a' + 'A');
    }
  }
}
)",
};

// Statements independent of the surrounding code. "$x", "$y" and "$z" are
// fresh names.
inline constexpr const char* kFiller[] = {
    "  ++$x.calls;",
    "  const auto $y = std::chrono::steady_clock::now();",
    "  assert($x != nullptr);",
    "  static int $z = 0;",
    "  LOG(INFO) << \"enter \" << __func__;",
    "  if ($x.verbose) { std::clog << \"trace\\n\"; }",
    "  std::lock_guard<std::mutex> $y($x.mu);",
    "  (void)$z;",
    "  VLOG(2) << \"state: \" << $x.state;",
    "  metrics::Counter(\"requests\").Increment();",
    "  const int $y = $x.retries > 0 ? $x.retries : 1;",
    "  DCHECK_GE($x.depth, 0);",
    "  auto $y = absl::Now();",
    "  if (!$x.enabled) { ++$z; }",
    "  $x.last_access = Clock::Now();",
    "  TRACE_EVENT(\"eco\", \"step\");",
};

// Self-contained multi-line blocks unrelated to any anti-pattern.
inline constexpr const char* kPreamble[] = {
    "  if ($x.size() > kMaxInputSize) {\n"
    "    LOG(WARNING) << \"input too large: \" << $x.size();\n"
    "    return {};\n"
    "  }",
    "  {\n"
    "    std::lock_guard<std::mutex> $y($x.mu);\n"
    "    ++$x.calls;\n"
    "    $x.last_access = Clock::Now();\n"
    "  }",
    "  if (!$x.enabled) {\n"
    "    VLOG(1) << \"disabled, counting only\";\n"
    "    ++$z;\n"
    "  }",
    "  const auto $y = std::chrono::steady_clock::now();\n"
    "  TRACE_EVENT(\"eco\", \"step\");\n"
    "  DCHECK_GE($x.depth, 0);",
    "  for (int $y = 0; $y < $x.retries; ++$y) {\n"
    "    if ($x.Ready()) {\n"
    "      break;\n"
    "    }\n"
    "    $x.Wait();\n"
    "  }",
    "  metrics::Counter(\"requests\").Increment();\n"
    "  if ($x.verbose) {\n"
    "    std::clog << \"trace \" << __func__ << \"\\n\";\n"
    "  }",
};

inline constexpr const char* kComments[] = {
    "  // Keep in sync with the schema.",
    "  // Hot path.",
    "  /* reviewed */",
    "  // TODO: handle overflow.",
    "  // Inputs are validated by the caller.",
};

}  // namespace eco::seed

#endif  // ECO_SRC_SEED_TEMPLATES_H_
