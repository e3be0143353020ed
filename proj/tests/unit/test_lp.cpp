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
#include "rezmet/lp.hpp"

namespace rezmet::lp {
namespace {

TEST(Simplex, TextbookMaximum) {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36.
  LinearProgram lp(2);
  lp.setObjective(Vector{{3.0, 5.0}});
  lp.addConstraint(Vector{{1.0, 0.0}}, Relation::kLessEqual, 4.0);
  lp.addConstraint(Vector{{0.0, 2.0}}, Relation::kLessEqual, 12.0);
  lp.addConstraint(Vector{{3.0, 2.0}}, Relation::kLessEqual, 18.0);
  Solution s = solve(lp);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.value, 36.0, 1e-9);
  EXPECT_NEAR(s.x(0), 2.0, 1e-9);
  EXPECT_NEAR(s.x(1), 6.0, 1e-9);
}

TEST(Simplex, MinimizeWithEqualityAndGreaterEqual) {
  // min x + y s.t. x + 2y >= 4, x - y = 1 -> x = 2, y = 1.
  LinearProgram lp(2, Sense::kMinimize);
  lp.setObjective(Vector{{1.0, 1.0}});
  lp.addConstraint(Vector{{1.0, 2.0}}, Relation::kGreaterEqual, 4.0);
  lp.addConstraint(Vector{{1.0, -1.0}}, Relation::kEqual, 1.0);
  Solution s = solve(lp);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.value, 3.0, 1e-9);
}

TEST(Simplex, Infeasible) {
  LinearProgram lp(1);
  lp.setObjective(Vector{{1.0}});
  lp.addConstraint(Vector{{1.0}}, Relation::kLessEqual, -1.0);
  EXPECT_EQ(solve(lp).status, Status::kInfeasible);
}

TEST(Simplex, Unbounded) {
  LinearProgram lp(2);
  lp.setObjective(Vector{{1.0, 0.0}});
  lp.addConstraint(Vector{{-1.0, 1.0}}, Relation::kLessEqual, 1.0);
  EXPECT_EQ(solve(lp).status, Status::kUnbounded);
}

TEST(Simplex, FreeShiftedAndBoxedVariables) {
  // min x s.t. x >= -3 via a free variable; y in [2, 5], max y - x.
  LinearProgram lp(2);
  lp.setObjective(Vector{{-1.0, 1.0}});
  lp.setBound(0, -kInfinity, kInfinity);
  lp.setBound(1, 2.0, 5.0);
  lp.addConstraint(Vector{{1.0, 0.0}}, Relation::kGreaterEqual, -3.0);
  Solution s = solve(lp);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.x(0), -3.0, 1e-9);
  EXPECT_NEAR(s.x(1), 5.0, 1e-9);
  EXPECT_NEAR(s.value, 8.0, 1e-9);
}

TEST(Simplex, UpperBoundedOnlyVariable) {
  LinearProgram lp(1, Sense::kMinimize);
  lp.setObjective(Vector{{1.0}});
  lp.setBound(0, -kInfinity, 4.0);
  lp.addConstraint(Vector{{1.0}}, Relation::kGreaterEqual, -2.5);
  Solution s = solve(lp);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.x(0), -2.5, 1e-9);
}

TEST(Simplex, DegenerateCycleCandidateTerminates) {
  // Beale's cycling example.
  LinearProgram lp(4, Sense::kMinimize);
  lp.setObjective(Vector{{-0.75, 150.0, -0.02, 6.0}});
  lp.addConstraint(Vector{{0.25, -60.0, -0.04, 9.0}}, Relation::kLessEqual, 0.0);
  lp.addConstraint(Vector{{0.5, -90.0, -0.02, 3.0}}, Relation::kLessEqual, 0.0);
  lp.addConstraint(Vector{{0.0, 0.0, 1.0, 0.0}}, Relation::kLessEqual, 1.0);
  for (PivotRule rule : {PivotRule::kDantzig, PivotRule::kBland}) {
    SimplexOptions opt;
    opt.rule = rule;
    Solution s = solve(lp, opt);
    ASSERT_EQ(s.status, Status::kOptimal);
    EXPECT_NEAR(s.value, -0.05, 1e-9);
  }
}

// Two-variable LPs checked against enumeration of all constraint-pair
// intersections.
TEST(Simplex, RandomTwoVariableAgainstVertexEnumeration) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 3 + trial % 5;
    std::vector<Vector> g;
    std::vector<double> h;
    for (int i = 0; i < rows; ++i) {
      g.push_back(Vector{{u(rng), u(rng)}});
      h.push_back(0.5 + u(rng) * 0.4 + 0.5);
    }
    // Box keeps it bounded: |x|, |y| <= 3 (plus x, y >= 0 defaults).
    g.push_back(Vector{{1.0, 0.0}});
    h.push_back(3.0);
    g.push_back(Vector{{0.0, 1.0}});
    h.push_back(3.0);
    g.push_back(Vector{{-1.0, 0.0}});
    h.push_back(0.0);
    g.push_back(Vector{{0.0, -1.0}});
    h.push_back(0.0);
    Vector c{{u(rng), u(rng)}};
    LinearProgram lp(2);
    lp.setObjective(c);
    for (size_t i = 0; i + 2 < g.size(); ++i) lp.addConstraint(g[i], Relation::kLessEqual, h[i]);
    double best = -kInfinity;
    for (size_t i = 0; i < g.size(); ++i) {
      for (size_t j = i + 1; j < g.size(); ++j) {
        Eigen::Matrix2d m;
        m.row(0) = g[i].transpose();
        m.row(1) = g[j].transpose();
        if (std::abs(m.determinant()) < 1e-12) continue;
        Eigen::Vector2d p = m.inverse() * Eigen::Vector2d(h[i], h[j]);
        bool ok = true;
        for (size_t k = 0; k < g.size(); ++k) ok = ok && g[k].dot(p) <= h[k] + 1e-9;
        if (ok) best = std::max(best, c.dot(p));
      }
    }
    Solution s = solve(lp);
    ASSERT_EQ(s.status, Status::kOptimal) << trial;
    EXPECT_NEAR(s.value, best, 1e-7) << trial;
    SimplexOptions bland;
    bland.rule = PivotRule::kBland;
    EXPECT_NEAR(solve(lp, bland).value, best, 1e-7) << trial;
  }
}

TEST(Simplex, IterationLimitIsNumericalError) {
  LinearProgram lp(2);
  lp.setObjective(Vector{{3.0, 5.0}});
  lp.addConstraint(Vector{{3.0, 2.0}}, Relation::kLessEqual, 18.0);
  lp.addConstraint(Vector{{0.0, 2.0}}, Relation::kLessEqual, 12.0);
  SimplexOptions opt;
  opt.max_iterations = 1;
  try {
    solve(lp, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNumerical);
  }
}

TEST(LpFormat, RendersSections) {
  LinearProgram lp(2);
  lp.setObjective(Vector{{1.0, -2.0}});
  lp.setName(1, "eps");
  lp.addConstraint(Vector{{1.0, 1.0}}, Relation::kLessEqual, 4.0);
  lp.setBound(0, -kInfinity, kInfinity);
  std::string text = toLpFormat(lp);
  EXPECT_NE(text.find("Maximize"), std::string::npos);
  EXPECT_NE(text.find("Subject To"), std::string::npos);
  EXPECT_NE(text.find("eps"), std::string::npos);
  EXPECT_NE(text.find("free"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);
}

}  // namespace
}  // namespace rezmet::lp
