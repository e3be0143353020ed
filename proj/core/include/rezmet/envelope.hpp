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

#include <vector>

#include "rezmet/farkas.hpp"
#include "rezmet/geometry.hpp"
#include "rezmet/result.hpp"
#include "rezmet/resilience_linear.hpp"
#include "rezmet/system.hpp"

namespace rezmet {

/// B_0 = G and B_k = max(G A_lo^k, G A_hi^k) entrywise, k = 1..N.
class IntervalEnvelope {
 public:
  IntervalEnvelope(const Matrix& lower, const Matrix& upper, const Matrix& g, int horizon);

  int horizon() const { return static_cast<int>(b_.size()) - 1; }
  const Matrix& B(int k) const { return b_.at(static_cast<size_t>(k)); }

  /// B_N x0 + sum_k B_{N-1-k} u_k: upper bound on G x_N when
  /// x_{k+1} = g(x_k) + u_k.
  Vector bound(const Vector& x0, const std::vector<Vector>& inputs) const;

 private:
  std::vector<Matrix> b_;
};

/// E_j = B_{N-1-j} W and F = H - B_N x0 - sum_j B_{N-1-j} f(0).
RobustConstraintSystem linearizedReachSystem(const NonlinearModel& model, const Vector& x0, const Polytope& target,
                                             int horizon);

/// Lower bound on the resilience of next^N target.
ResilienceResult linearizedExactTimeReach(const NonlinearModel& model, const Vector& x0, const Polytope& target,
                                          int horizon, const LinearOptions& options = {});

/// Lower bound on the resilience of always^N safe: step-0 membership and
/// the minimum of the exact-time bounds for k = 1..N.
ResilienceResult linearizedSafety(const NonlinearModel& model, const Vector& x0, const Polytope& safe, int horizon,
                                  const LinearOptions& options = {});

}  // namespace rezmet
