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
#include <string_view>
#include <vector>

#include "rezmet/model_io.hpp"
#include "rezmet/resilience_linear.hpp"
#include "rezmet/resilience_nonlinear.hpp"
#include "rezmet/result.hpp"

namespace rezmet::cli {

enum class Method { kExactReach, kSafety, kReachLb, kScenario, kNonlinearLp, kBisect, kOracle, kAuto };

Method parseMethod(std::string_view name);
std::string_view toString(Method method);

/// Everything a query needs besides the initial condition.
struct Context {
  const ModelFile* file = nullptr;
  ltlf::Formula formula = ltlf::Formula::truth();
  /// Trace horizon N (states 0..N); derived from the formula when absent.
  std::optional<int> horizon;
  /// Overrides the seeds in the model file and oracle config.
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  OracleConfig oracle;
  /// Session directory for solver transcripts; bisection uses the internal
  /// sampler when unset.
  std::optional<std::filesystem::path> transcript_dir;
  /// Collects CPLEX LP text for every LP assembled at a point.
  std::string* lp_dump = nullptr;
  int threads = 0;
  /// Allow vertex reduction without a convexity certificate.
  bool allow_unsafe = false;
};

/// Number of steps the formula needs (max of --horizon and its depth).
int traceHorizon(const Context& ctx);

/// Resilience at one initial state.
ResilienceResult computeAt(const Context& ctx, const Vector& x0, Method method);

/// Resilience over conv(vertices) (box corners or an explicit hull) by
/// vertex reduction. Conjuncts that are vacuous on the set are dropped
/// first and reported in the notes.
ResilienceResult computeOverSet(const Context& ctx, const std::vector<Vector>& vertices, Method method);

/// Top-level conjuncts, flattened.
std::vector<ltlf::Formula> conjuncts(const ltlf::Formula& f);

}  // namespace rezmet::cli
