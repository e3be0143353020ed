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

#include <cmath>

#include "rezmet/errors.hpp"
#include "rezmet/oracle.hpp"
#include "rezmet/scenario.hpp"

namespace rezmet {
namespace {

// Smallest M with sum_k (1 - eta_k^{1/N})^M <= beta, by direct counting.
std::size_t countSamples(const std::vector<double>& eta, double beta, int n) {
  for (std::size_t m = 1;; ++m) {
    double s = 0.0;
    for (double e : eta) s += std::pow(1.0 - std::pow(e, 1.0 / n), static_cast<double>(m));
    if (s <= beta) return m;
  }
}

TEST(Scenario, RequiredSamplesMatchesDirectCount) {
  for (int n : {1, 2, 3, 5}) {
    for (double beta : {0.1, 0.01, 0.001}) {
      for (double eta : {0.01, 0.05, 0.2}) {
        ScenarioConfig c;
        c.beta = beta;
        c.eta.assign(static_cast<size_t>(n) + 1, eta);
        EXPECT_EQ(requiredSamples(c, n), countSamples(c.eta, beta, n)) << n << " " << beta << " " << eta;
      }
    }
  }
}

TEST(Scenario, RequiredSamplesDcMotorSettings) {
  ScenarioConfig c;
  c.beta = 0.01;
  c.eta = {0.01, 0.01, 0.01, 0.01};
  EXPECT_EQ(requiredSamples(c, 3), countSamples(c.eta, 0.01, 3));
}

TEST(Scenario, EtaLengthIsChecked) {
  ScenarioConfig c;
  c.eta = {0.01, 0.01};
  EXPECT_THROW(requiredSamples(c, 3), Error);
}

TEST(Scenario, GammaMarginsDefinition) {
  LinearSystem sys(Matrix{{0.5}});
  Polytope t = IntervalBox(Vector{{-1.0}}, Vector{{1.0}}).toPolytope();
  std::vector<double> eta{0.04, 0.04, 0.04};
  Vector g = gammaMargins(sys, Vector{{1.5}}, t, 2, eta);
  ASSERT_EQ(g.size(), 3);
  const double gx = std::sqrt(2.0) * 1.5;
  const double h = std::sqrt(2.0);
  for (int k = 1; k <= 3; ++k) EXPECT_NEAR(g(k - 1), (std::pow(0.5, k - 1) * gx + h) * 0.2, 1e-12);
}

TEST(Scenario, NominalMissIsZero) {
  LinearSystem sys(Matrix::Identity(1, 1));
  Polytope t = IntervalBox(Vector{{0.0}}, Vector{{1.0}}).toPolytope();
  ScenarioConfig c;
  c.eta = {0.01, 0.01, 0.01};
  ResilienceResult r = scenarioReach(sys, Vector{{3.0}}, t, 2, c);
  EXPECT_DOUBLE_EQ(r.value, 0.0);
  EXPECT_EQ(r.kind, ResultKind::kExact);
}

// x+ = 0.5 x + d from 1.5 into [-1, 1] at step 1 or 2. A violation needs
// d0 > 0.25 and 0.375 + 0.5 d0 + d1 > 1, so the resilience is 0.625/1.5.
TEST(Scenario, ScalarReachNearClosedForm) {
  LinearSystem sys(Matrix{{0.5}});
  Polytope t = IntervalBox(Vector{{-1.0}}, Vector{{1.0}}).toPolytope();
  ScenarioConfig c;
  c.beta = 0.01;
  c.eta = {1e-6, 1e-6, 1e-6};
  c.seed = 3;
  ResilienceResult r = scenarioReach(sys, Vector{{1.5}}, t, 2, c);
  EXPECT_EQ(r.kind, ResultKind::kProbabilistic);
  EXPECT_NEAR(r.confidence, 0.99, 1e-12);
  ASSERT_TRUE(r.samples.has_value());
  EXPECT_EQ(*r.samples, requiredSamples(c, 2));
  EXPECT_NEAR(r.value, 0.625 / 1.5, 0.02);
}

TEST(Scenario, DeterministicForSeedAndThreadCount) {
  LinearSystem sys(Matrix{{0.5, 0.1}, {0.0, 0.7}}, Matrix{{1.0}, {0.5}});
  Polytope t = IntervalBox(Vector{{-1.0, -1.0}}, Vector{{1.0, 1.0}}).toPolytope();
  ScenarioConfig c;
  c.eta = {0.01, 0.01, 0.01, 0.01};
  c.seed = 17;
  c.threads = 1;
  ResilienceResult a = scenarioReach(sys, Vector{{1.2, 0.9}}, t, 3, c);
  c.threads = 4;
  ResilienceResult b = scenarioReach(sys, Vector{{1.2, 0.9}}, t, 3, c);
  EXPECT_EQ(a.value, b.value);
  c.seed = 18;
  ResilienceResult d = scenarioReach(sys, Vector{{1.2, 0.9}}, t, 3, c);
  EXPECT_GT(d.value, 0.0);
}

}  // namespace
}  // namespace rezmet
