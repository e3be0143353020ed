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

#include "rezmet/linalg.hpp"
#include "rezmet/lp.hpp"

namespace rezmet {

/// Polytope {Y | A_b Y <= B_b} of normalized disturbances.
struct DisturbanceTemplate {
  Matrix a;
  Vector b;

  /// |Y|_inf <= 1 in `dimension` coordinates, as [I; -I] Y <= 1.
  static DisturbanceTemplate unitBox(Index dimension);
  Index dimension() const { return a.cols(); }
  bool isUnitBox() const;
};

/// E (eps Y) <= F for every Y in the template.
struct RobustConstraintSystem {
  Matrix e;
  Vector f;
  DisturbanceTemplate disturbances;

  void validate() const;
};

/// Multipliers with P >= 0, P A_b = E and P B_b <= F / epsilon.
struct FarkasCertificate {
  Matrix p;
  double epsilon = 0.0;

  /// Largest violation of the three certificate conditions.
  double residual(const RobustConstraintSystem& rcs) const;
};

/// max eps s.t. Q >= 0, Q A_b - eps E = 0, Q B_b <= F, eps >= 0. Variables
/// are Q row-major followed by eps; Q = eps P at the optimum.
lp::LinearProgram robustToFarkasLp(const RobustConstraintSystem& rcs);

enum class RobustSolveMode {
  /// One LP over all rows of E.
  kJoint,
  /// One small LP per row of E; the optimum is the row-wise minimum.
  kPerRow,
};

struct RobustSolution {
  /// 0 when even eps = 0 is infeasible, +inf when eps is unbounded.
  double epsilon = 0.0;
  std::optional<FarkasCertificate> certificate;
  int iterations = 0;
};

RobustSolution solveRobust(const RobustConstraintSystem& rcs, RobustSolveMode mode = RobustSolveMode::kPerRow,
                           const lp::SimplexOptions& options = {});

/// min_i F_i / |E_i|_1 for the unit-box template; 0 if some F_i < 0.
double dualNormClosedForm(const RobustConstraintSystem& rcs);

}  // namespace rezmet
