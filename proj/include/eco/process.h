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

#ifndef ECO_PROCESS_H_
#define ECO_PROCESS_H_

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace eco {

struct ProcessResult {
  int exit_code = -1;  // -1 when killed or not started
  bool timed_out = false;
  std::string out;
  std::string err;

  bool ok() const { return !timed_out && exit_code == 0; }
};

struct ProcessOptions {
  std::optional<std::filesystem::path> cwd;
  std::chrono::milliseconds timeout{300'000};
  std::string stdin_text;
};

// Runs argv[0] (looked up on PATH) and captures both streams. The child runs
// in its own process group, which is killed on timeout.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const ProcessOptions& options = {});

// Runs a command line through /bin/sh -c.
ProcessResult run_shell(const std::string& command,
                        const ProcessOptions& options = {});

}  // namespace eco

#endif  // ECO_PROCESS_H_
