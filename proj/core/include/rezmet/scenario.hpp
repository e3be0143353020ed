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
#include <vector>

#include "rezmet/resilience_linear.hpp"

namespace rezmet {

struct ScenarioConfig {
  double beta = 0.01;
  /// Accuracy per step, length N+1.
  std::vector<double> eta;
  /// Known feasible upper bound on mu = 1/eps.
  std::optional<double> mu_bar;
  std::uint64_t seed = 0;
  std::optional<std::size_t> samples_override;
  int grid_points = 200;
  int bisection_steps = 60;
  int threads = 0;
};

/// Smallest M >= 1 with sum_{k=1}^{N+1} (1 - eta_k^{1/N})^M <= beta.
std::size_t requiredSamples(const ScenarioConfig& config, int horizon);

/// gamma_k = (|A|^{k-1} |G x0| + |H|) eta_k^{1/N}, k = 1..N+1.
Vector gammaMargins(const LinearSystem& sys, const Vector& x0, const Polytope& target, int horizon,
                    const std::vector<double>& eta);

/// Scenario program for reaching `target` at some step 0..N. Returns
/// eps = 1/mu* with kind probabilistic and confidence 1 - beta.
ResilienceResult scenarioReach(const LinearSystem& sys, const Vector& x0, const Polytope& target, int horizon,
                               const ScenarioConfig& config, const LinearOptions& options = {});

}  // namespace rezmet
