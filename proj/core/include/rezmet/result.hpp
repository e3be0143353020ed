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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rezmet/farkas.hpp"
#include "rezmet/system.hpp"

namespace rezmet {

enum class ResultKind {
  kExact,
  /// Exact up to the delta-precision of an external solver.
  kExactUpToDelta,
  kLowerBound,
  kUpperBound,
  kProbabilistic,
  /// Preconditions were overridden; no guarantee.
  kHeuristic,
};

std::string_view toString(ResultKind kind);

struct ResilienceResult {
  /// Non-negative epsilon, +inf, or a signed value for the signed metric.
  double value = 0.0;
  ResultKind kind = ResultKind::kExact;
  std::string method;
  /// 1 - beta for probabilistic results, 1 otherwise.
  double confidence = 1.0;
  std::optional<FarkasCertificate> certificate;
  /// Disturbance trace that violates the formula (falsification methods).
  std::optional<DisturbanceTrace> witness;
  /// [lower, upper] bracket reported by bisection and the oracle.
  std::optional<double> bracket_lower;
  std::optional<double> bracket_upper;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::vector<double> gamma;
  std::vector<std::string> notes;
  int lp_iterations = 0;
};

/// 16 hex digits over the certificate (or witness), "none" if neither.
std::string certificateDigest(const ResilienceResult& result);

/// Shortest round-trip decimal; "inf" / "-inf" for infinities.
std::string formatValue(double value);

/// value,kind,method,confidence,seed,certificate_digest
std::string csvHeader();
std::string toCsvRow(const ResilienceResult& result);

/// One JSON object; `wall_time_s` is included when given.
std::string toJson(const ResilienceResult& result, std::optional<double> wall_time_s = std::nullopt);

/// min of values; the kind is the weakest guarantee among the inputs.
ResilienceResult composeConjunction(std::span<const ResilienceResult> results);

/// max of values; never better than a lower bound.
ResilienceResult composeDisjunctionLower(std::span<const ResilienceResult> results);

}  // namespace rezmet
