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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rezmet/errors.hpp"
#include "rezmet/farkas.hpp"

namespace rezmet {
namespace {

using testing::randomMatrix;
using testing::randomVector;

RobustConstraintSystem randomBoxSystem(std::mt19937_64& rng, Index rows, Index dim) {
  RobustConstraintSystem rcs;
  rcs.e = randomMatrix(rng, rows, dim, 2.0);
  rcs.f = randomVector(rng, rows, 0.05, 3.0);
  rcs.disturbances = DisturbanceTemplate::unitBox(dim);
  return rcs;
}

double referenceDualNorm(const RobustConstraintSystem& rcs) {
  double best = kInfinity;
  for (Index i = 0; i < rcs.e.rows(); ++i) {
    double n1 = rcs.e.row(i).cwiseAbs().sum();
    if (n1 > 0) best = std::min(best, rcs.f(i) / n1);
  }
  return best;
}

TEST(Farkas, LpMatchesDualNormOn500RandomInstances) {
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    Index rows = 1 + static_cast<Index>(t % 6);
    Index dim = 1 + static_cast<Index>((t / 6) % 8);
    RobustConstraintSystem rcs = randomBoxSystem(rng, rows, dim);
    double ref = referenceDualNorm(rcs);
    RobustSolution joint = solveRobust(rcs, RobustSolveMode::kJoint);
    RobustSolution per_row = solveRobust(rcs, RobustSolveMode::kPerRow);
    worst = std::max({worst, std::abs(joint.epsilon - ref), std::abs(per_row.epsilon - ref),
                      std::abs(dualNormClosedForm(rcs) - ref)});
  }
  EXPECT_LE(worst, 1e-6);
}

TEST(Farkas, CertificateSatisfiesConditions) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    RobustConstraintSystem rcs = randomBoxSystem(rng, 4, 5);
    for (RobustSolveMode mode : {RobustSolveMode::kJoint, RobustSolveMode::kPerRow}) {
      RobustSolution s = solveRobust(rcs, mode);
      ASSERT_TRUE(s.certificate.has_value());
      EXPECT_LE(s.certificate->residual(rcs), 1e-7);
      EXPECT_TRUE((s.certificate->p.array() >= -1e-12).all());
    }
  }
}

// Forward soundness: a certificate at eps implies E (eps Y) <= F on the
// whole template, spot-checked on random and vertex Y.
TEST(Farkas, ForwardSoundnessSpotChecks) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    RobustConstraintSystem rcs = randomBoxSystem(rng, 3, 4);
    RobustSolution s = solveRobust(rcs, RobustSolveMode::kJoint);
    for (int k = 0; k < 200; ++k) {
      Vector y(4);
      for (Index j = 0; j < 4; ++j) y(j) = k % 2 ? u(rng) : (u(rng) < 0 ? -1.0 : 1.0);
      Vector lhs = rcs.e * (s.epsilon * y);
      EXPECT_TRUE((lhs.array() <= rcs.f.array() + 1e-9).all());
    }
  }
}

// Completeness: just above the optimum some template vertex violates.
TEST(Farkas, OptimumIsTight) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    RobustConstraintSystem rcs = randomBoxSystem(rng, 3, 3);
    double eps = solveRobust(rcs).epsilon * (1.0 + 1e-6);
    bool violated = false;
    for (Index i = 0; i < rcs.e.rows(); ++i) {
      Vector y = rcs.e.row(i).transpose().unaryExpr([](double v) { return v >= 0 ? 1.0 : -1.0; });
      violated = violated || (rcs.e.row(i).dot(eps * y) > rcs.f(i));
    }
    EXPECT_TRUE(violated);
  }
}

TEST(Farkas, GeneralTemplate) {
  // Y in the simplex-like polytope {y >= 0, y1 + y2 <= 1}; E = [1 1], F = 2:
  // sup (y1 + y2) = 1, so eps = 2.
  RobustConstraintSystem rcs;
  rcs.e = Matrix{{1.0, 1.0}};
  rcs.f = Vector{{2.0}};
  rcs.disturbances.a = Matrix{{-1.0, 0.0}, {0.0, -1.0}, {1.0, 1.0}};
  rcs.disturbances.b = Vector{{0.0, 0.0, 1.0}};
  EXPECT_FALSE(rcs.disturbances.isUnitBox());
  for (RobustSolveMode mode : {RobustSolveMode::kJoint, RobustSolveMode::kPerRow}) {
    RobustSolution s = solveRobust(rcs, mode);
    EXPECT_NEAR(s.epsilon, 2.0, 1e-9);
    ASSERT_TRUE(s.certificate);
    EXPECT_LE(s.certificate->residual(rcs), 1e-8);
  }
  EXPECT_THROW(dualNormClosedForm(rcs), Error);
}

TEST(Farkas, InfeasibleAndUnbounded) {
  RobustConstraintSystem rcs;
  rcs.e = Matrix{{1.0, 0.0}, {0.0, 0.0}};
  rcs.f = Vector{{1.0, -0.5}};
  rcs.disturbances = DisturbanceTemplate::unitBox(2);
  EXPECT_DOUBLE_EQ(solveRobust(rcs).epsilon, 0.0);
  EXPECT_DOUBLE_EQ(dualNormClosedForm(rcs), 0.0);

  rcs.e = Matrix::Zero(1, 2);
  rcs.f = Vector{{1.0}};
  EXPECT_TRUE(std::isinf(solveRobust(rcs, RobustSolveMode::kJoint).epsilon));
  EXPECT_TRUE(std::isinf(solveRobust(rcs, RobustSolveMode::kPerRow).epsilon));
}

TEST(Farkas, LpVariableLayout) {
  RobustConstraintSystem rcs;
  rcs.e = Matrix{{1.0, 2.0}};
  rcs.f = Vector{{1.0}};
  rcs.disturbances = DisturbanceTemplate::unitBox(2);
  lp::LinearProgram lp = robustToFarkasLp(rcs);
  EXPECT_EQ(lp.variables(), 4 + 1);
  EXPECT_EQ(lp.names().back(), "eps");
}

TEST(Farkas, ValidateRejectsMismatch) {
  RobustConstraintSystem rcs;
  rcs.e = Matrix::Ones(2, 3);
  rcs.f = Vector::Ones(2);
  rcs.disturbances = DisturbanceTemplate::unitBox(2);
  EXPECT_THROW(rcs.validate(), Error);
}

}  // namespace
}  // namespace rezmet
