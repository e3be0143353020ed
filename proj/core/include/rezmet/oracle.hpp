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

#include "rezmet/ltlf.hpp"
#include "rezmet/result.hpp"
#include "rezmet/system.hpp"

namespace rezmet {

struct OracleConfig {
  std::size_t samples_per_epsilon = 10000;
  int grid_points = 64;
  /// Upper end of the epsilon grid; found by doubling when absent.
  std::optional<double> cap;
  /// Largest epsilon tried while searching for a cap.
  double cap_limit = 1e6;
  double resolution = 1e-4;
  std::uint64_t seed = 0;
  /// Fraction of draws placed at vertices of the epsilon box.
  double vertex_fraction = 0.5;
  /// Enumerate every vertex sequence first when m*N is at most this.
  int exhaustive_vertex_bits = 12;
  int threads = 0;
  ltlf::EvalOptions eval;
};

/// Sample `index` of the disturbance family scaled to `epsilon`. Pure in
/// (config, index, epsilon).
DisturbanceTrace sampleDisturbance(const OracleConfig& config, Index inputs, int horizon, std::size_t index,
                                   double epsilon);

/// Lowest-index sampled disturbance whose trajectory violates the formula.
/// An empty result is not a proof of satisfaction.
std::optional<DisturbanceTrace> falsifyAt(const Model& model, const Vector& x0, const ltlf::Formula& formula,
                                          int horizon, double epsilon, const OracleConfig& config = {});

/// Grid-then-bisect estimate; `bracket_lower` is the largest unfalsified
/// epsilon and `bracket_upper` the smallest falsified one (+inf if none).
ResilienceResult estimateResilience(const Model& model, const Vector& x0, const ltlf::Formula& formula,
                                    int horizon, const OracleConfig& config = {});

}  // namespace rezmet
