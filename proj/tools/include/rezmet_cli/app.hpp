// Copyright 2026 The Rezmet Authors
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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rezmet/errors.hpp"
#include "rezmet/linalg.hpp"

namespace rezmet::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitUsage = 2,
  kExitParse = 3,
  kExitDimension = 4,
  kExitInfeasible = 5,
  kExitNumerical = 6,
  kExitUnsupported = 7,
  kExitAwaitingTranscript = 8,
};

int exitCode(ErrorKind kind);

/// Initial-condition spec: `a,b,...` or `point:a,b`, `box:lo:hi,lo:hi`,
/// `hull:a,b;c,d;...`. Returns the point (size 1) or the set vertices.
struct InitialSpec {
  bool is_set = false;
  std::vector<Vector> points;
};
InitialSpec parseInitialSpec(std::string_view text);

/// `lo:hi:step` per coordinate, comma separated; row-major order with the
/// first coordinate varying slowest.
std::vector<Vector> parseGrid(std::string_view text);

/// Runs the command line; returns the exit code.
int run(int argc, char** argv);

}  // namespace rezmet::cli
