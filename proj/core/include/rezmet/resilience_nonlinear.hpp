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

#include <filesystem>
#include <optional>
#include <string>

#include "rezmet/ltlf.hpp"
#include "rezmet/oracle.hpp"
#include "rezmet/result.hpp"
#include "rezmet/smt.hpp"
#include "rezmet/system.hpp"

namespace rezmet {

struct FalsifierAnswer {
  /// Violating disturbance, if one was found.
  std::optional<DisturbanceTrace> witness;
  /// True when "no witness" is a solver-backed unsat rather than a failed
  /// search.
  bool proven = false;
};

class Falsifier {
 public:
  virtual ~Falsifier() = default;
  virtual FalsifierAnswer check(const FalsificationQuery& query) = 0;
  virtual std::string name() const = 0;
};

/// Mixed vertex/uniform sampling through the oracle.
class SamplerFalsifier : public Falsifier {
 public:
  explicit SamplerFalsifier(OracleConfig config = {}) : config_(std::move(config)) {}
  FalsifierAnswer check(const FalsificationQuery& query) override;
  std::string name() const override { return "sampler"; }

 private:
  OracleConfig config_;
};

/// Replays an external solver session kept in a directory: query i is
/// written to `query-<i>.smt2` and answered by `query-<i>.out`. A missing
/// answer throws Error(kAwaitingTranscript) after the script is written.
class TranscriptFalsifier : public Falsifier {
 public:
  explicit TranscriptFalsifier(std::filesystem::path directory) : directory_(std::move(directory)) {}
  FalsifierAnswer check(const FalsificationQuery& query) override;
  std::string name() const override { return "smt-transcript"; }

 private:
  std::filesystem::path directory_;
  int next_ = 0;
};

struct BisectionOptions {
  /// Absolute bracket width; default 1e-4 * max(1, eps_hi).
  std::optional<double> tolerance;
  double initial_epsilon = 1e-3;
  double cap = 1e3;
  int max_iterations = 200;
};

/// Bisection between an unfalsified eps_lo and a falsified eps_hi. Returns
/// eps_lo; the kind is exact-up-to-delta when every unfalsified probe was
/// solver-proven, lower-bound otherwise.
ResilienceResult bisectFalsify(const Model& model, const Vector& x0, const ltlf::Formula& formula, int horizon,
                               Falsifier& falsifier, const BisectionOptions& options = {},
                               const ltlf::EvalOptions& eval = {});

/// Writes `content` to `path` via a temporary file and rename.
void writeFileAtomically(const std::filesystem::path& path, std::string_view content);

}  // namespace rezmet
