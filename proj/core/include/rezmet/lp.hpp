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

#include <string>
#include <vector>

#include "rezmet/linalg.hpp"

namespace rezmet::lp {

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Constraint {
  Vector coefficients;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

struct Bound {
  double lower = 0.0;
  double upper = kInfinity;
};

/// Dense linear program: optimize c'x subject to rows and per-variable
/// bounds. Variables default to [0, inf).
class LinearProgram {
 public:
  explicit LinearProgram(Index variables, Sense sense = Sense::kMaximize);

  Index variables() const { return static_cast<Index>(bounds_.size()); }
  Sense sense() const { return sense_; }
  const Vector& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Bound>& bounds() const { return bounds_; }
  const std::vector<std::string>& names() const { return names_; }

  void setObjective(Vector c);
  void setObjectiveCoefficient(Index j, double value);
  void addConstraint(Vector row, Relation relation, double rhs);
  void setBound(Index j, double lower, double upper);
  void setName(Index j, std::string name);

 private:
  Sense sense_;
  Vector objective_;
  std::vector<Constraint> constraints_;
  std::vector<Bound> bounds_;
  std::vector<std::string> names_;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Solution {
  Status status = Status::kInfeasible;
  double value = 0.0;
  Vector x;
  int iterations = 0;
};

enum class PivotRule {
  /// Most negative reduced cost, switching to Bland after a run of
  /// degenerate pivots.
  kDantzig,
  kBland,
};

struct SimplexOptions {
  PivotRule rule = PivotRule::kDantzig;
  double feasibility_tolerance = 1e-8;
  double optimality_tolerance = 1e-7;
  int max_iterations = 0;  // 0: derived from the problem size
};

/// Two-phase dense tableau simplex. Throws Error(kNumerical) when the
/// iteration limit is hit or the returned point fails verification.
Solution solve(const LinearProgram& lp, const SimplexOptions& options = {});

/// CPLEX LP text format.
std::string toLpFormat(const LinearProgram& lp);

std::string_view toString(Status status);

}  // namespace rezmet::lp
