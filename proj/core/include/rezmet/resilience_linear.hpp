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

#include <functional>

#include "rezmet/farkas.hpp"
#include "rezmet/geometry.hpp"
#include "rezmet/ltlf.hpp"
#include "rezmet/result.hpp"
#include "rezmet/system.hpp"

namespace rezmet {

struct LinearOptions {
  RobustSolveMode mode = RobustSolveMode::kPerRow;
  lp::SimplexOptions simplex;
};

/// E = [G A^{N-1} W, ..., G W], F = H - G A^N x0 on the unit box of
/// dimension m*N (columns ordered d_0 ... d_{N-1}).
RobustConstraintSystem exactReachSystem(const LinearSystem& sys, const Vector& x0, const Polytope& target, int horizon);

/// Stacked rows for steps 1..N: block (k, j) = G A^{k-1-j} W for j < k,
/// F_k = H - G A^k x0.
RobustConstraintSystem safetySystem(const LinearSystem& sys, const Vector& x0, const Polytope& safe, int horizon);

/// Resilience of next^N target.
ResilienceResult exactTimeReach(const LinearSystem& sys, const Vector& x0, const Polytope& target, int horizon,
                                const LinearOptions& options = {});

/// Resilience of always^N safe (steps 0..N).
ResilienceResult finiteHorizonSafety(const LinearSystem& sys, const Vector& x0, const Polytope& safe, int horizon,
                                     const LinearOptions& options = {});

/// Lower bound for reaching `target` at some step 0..N: +inf (exact) when
/// x0 is already inside, otherwise the maximum exact-time value over 1..N.
ResilienceResult finiteHorizonReachLower(const LinearSystem& sys, const Vector& x0, const Polytope& target,
                                         int horizon, const LinearOptions& options = {});

/// Signed metric for next^N target: the exact-time value when the nominal
/// trajectory hits, otherwise minus the smallest magnitude that reaches the
/// target. Throws kInfeasible when no disturbance reaches it.
ResilienceResult signedResilience(const LinearSystem& sys, const Vector& x0, const Polytope& target, int horizon,
                                  const LinearOptions& options = {});

struct VertexOptions {
  /// Skip the convex-fragment check; the result is marked heuristic.
  bool allow_unsafe = false;
  int threads = 0;
};

using PointMethod = std::function<ResilienceResult(const Vector& x0)>;

/// min over hull vertices of `per_vertex`, in vertex order.
ResilienceResult vertexResilience(const ConvexHullSet& hull, const ltlf::Formula& formula,
                                  const PointMethod& per_vertex, const VertexOptions& options = {});

}  // namespace rezmet
