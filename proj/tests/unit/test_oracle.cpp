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

#include "oracles.hpp"
#include "rezmet/oracle.hpp"
#include "rezmet/resilience_linear.hpp"

namespace rezmet {
namespace {

ltlf::RegionTable table(const Polytope& p) {
  ltlf::RegionTable r;
  r.emplace("R", std::make_shared<ltlf::AtomicPredicate>(ltlf::AtomicPredicate{"R", ltlf::Region(p)}));
  return r;
}

TEST(Oracle, SamplesArePureFunctionsOfIndex) {
  OracleConfig c;
  c.seed = 99;
  DisturbanceTrace a = sampleDisturbance(c, 2, 4, 123, 0.5);
  DisturbanceTrace b = sampleDisturbance(c, 2, 4, 123, 0.5);
  ASSERT_EQ(a.size(), 4u);
  for (size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a.steps[k], b.steps[k]);
  EXPECT_LE(a.magnitude(), 0.5);
}

TEST(Oracle, VertexDrawsSitOnTheBoxBoundary) {
  OracleConfig c;
  c.vertex_fraction = 1.0;
  c.exhaustive_vertex_bits = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    DisturbanceTrace d = sampleDisturbance(c, 3, 2, i, 0.25);
    for (const auto& v : d.steps) EXPECT_TRUE((v.cwiseAbs().array() == 0.25).all());
  }
}

TEST(Oracle, BracketsContainExactExample42Values) {
  LinearSystem sys(Matrix{{0.1, -1.0}, {-0.5, -0.2}});
  Polytope t(Matrix{{0.0, -0.2747}, {0.3714, 0.0}, {0.0, 0.3714}, {-0.2747, 0.0}},
             Vector{{0.9615, 0.9285, 0.9285, 0.9615}});
  ltlf::Formula f = ltlf::parseFormula("(next 3 (atom R))", table(t));
  OracleConfig c;
  c.samples_per_epsilon = 500;
  for (const Vector& x0 : {Vector{{-4.0, -4.0}}, Vector{{6.0, 6.0}}}) {
    double exact = exactTimeReach(sys, x0, t, 3).value;
    ResilienceResult r = estimateResilience(sys, x0, f, 3, c);
    EXPECT_EQ(r.kind, ResultKind::kUpperBound);
    ASSERT_TRUE(r.bracket_lower && r.bracket_upper);
    EXPECT_LE(*r.bracket_lower, exact + 1e-12);
    EXPECT_GE(*r.bracket_upper, exact - 1e-12);
    EXPECT_LE(*r.bracket_upper - *r.bracket_lower, 2e-4);
    ASSERT_TRUE(r.witness.has_value());
  }
}

TEST(Oracle, NominalViolationIsZero) {
  LinearSystem sys(Matrix::Identity(1, 1));
  Polytope t = IntervalBox(Vector{{0.0}}, Vector{{1.0}}).toPolytope();
  ltlf::Formula f = ltlf::parseFormula("(next 2 (atom R))", table(t));
  EXPECT_DOUBLE_EQ(estimateResilience(sys, Vector{{5.0}}, f, 2).value, 0.0);
}

TEST(Oracle, DeterministicAcrossThreadCounts) {
  LinearSystem sys(Matrix{{0.9, 0.2}, {-0.1, 0.8}}, Matrix{{1.0}, {0.3}});
  Polytope t = IntervalBox(Vector{{-1.0, -1.0}}, Vector{{1.0, 1.0}}).toPolytope();
  ltlf::Formula f = ltlf::parseFormula("(always 8 (atom R))", table(t));
  OracleConfig c;
  c.samples_per_epsilon = 300;
  c.seed = 4;
  c.threads = 1;
  ResilienceResult a = estimateResilience(sys, Vector{{0.1, 0.2}}, f, 8, c);
  c.threads = 3;
  ResilienceResult b = estimateResilience(sys, Vector{{0.1, 0.2}}, f, 8, c);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(certificateDigest(a), certificateDigest(b));
}

}  // namespace
}  // namespace rezmet
