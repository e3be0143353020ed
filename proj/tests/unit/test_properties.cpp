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
#include "rezmet/envelope.hpp"
#include "rezmet/oracle.hpp"
#include "rezmet/resilience_linear.hpp"

namespace rezmet {
namespace {

using testing::randomMatrix;
using testing::randomVector;

struct Instance {
  LinearSystem sys;
  Polytope region;
  Vector x0;
  int horizon;
};

// Stable random system, a box around the origin and an initial state inside.
Instance randomInstance(std::mt19937_64& rng, Index n, Index m, int horizon) {
  Matrix a = randomMatrix(rng, n, n);
  double rho = a.eigenvalues().cwiseAbs().maxCoeff();
  if (rho > 0.9) a *= 0.9 / rho;
  Matrix w = randomMatrix(rng, n, m);
  Vector half = randomVector(rng, n, 1.0, 3.0);
  Polytope box = IntervalBox(-half, half).toPolytope();
  Vector x0 = randomVector(rng, n, -0.5, 0.5);
  return {LinearSystem(a, w), box, x0, horizon};
}

ltlf::RegionTable table(const Polytope& p) {
  ltlf::RegionTable r;
  r.emplace("R", std::make_shared<ltlf::AtomicPredicate>(ltlf::AtomicPredicate{"R", ltlf::Region(p)}));
  return r;
}

// Conjunction law: always^N R is the conjunction of R at step 0 and
// next^k R for k = 1..N, so its resilience is the minimum.
TEST(Properties, ConjunctionMatchesSafetyOn100Instances) {
  std::mt19937_64 rng(31);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    Instance in = randomInstance(rng, 1 + t % 3, 1 + t % 2, 1 + t % 5);
    std::vector<ResilienceResult> parts;
    for (int k = 1; k <= in.horizon; ++k) parts.push_back(exactTimeReach(in.sys, in.x0, in.region, k));
    ResilienceResult composed = composeConjunction(parts);
    ResilienceResult safety = finiteHorizonSafety(in.sys, in.x0, in.region, in.horizon);
    worst = std::max(worst, std::abs(composed.value - safety.value));
    EXPECT_EQ(composed.kind, ResultKind::kExact);
  }
  EXPECT_LE(worst, 1e-8);
}

// Vertex dominance: for a convex specification the resilience at any point
// of the hull is at least the minimum over the vertices.
TEST(Properties, VertexDominanceOn100InteriorPoints) {
  std::mt19937_64 rng(41);
  LinearSystem sys(Matrix{{0.1, -1.0}, {-0.5, -0.2}});
  Polytope t(Matrix{{0.0, -0.2747}, {0.3714, 0.0}, {0.0, 0.3714}, {-0.2747, 0.0}},
             Vector{{0.9615, 0.9285, 0.9285, 0.9615}});
  ConvexHullSet hull(IntervalBox(Vector{{-4.0, -4.0}}, Vector{{6.0, 6.0}}).vertices());
  auto per = [&](const Vector& x) {
    return composeConjunction(std::vector<ResilienceResult>{finiteHorizonSafety(sys, x, t, 2), exactTimeReach(sys, x, t, 3)});
  };
  // Use a hull whose every point starts inside the safe set for a non-trivial check.
  ConvexHullSet inner(IntervalBox(Vector{{-2.0, -2.0}}, Vector{{2.0, 2.0}}).vertices());
  ltlf::Formula f = ltlf::parseFormula("(and (always 2 (atom R)) (next 3 (atom R)))", table(t));
  for (const ConvexHullSet* h : {&hull, &inner}) {
    double vmin = vertexResilience(*h, f, per).value;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      Vector w(static_cast<Index>(h->vertices().size()));
      for (Index j = 0; j < w.size(); ++j) w(j) = u(rng) + 1e-3;
      Vector x = h->combination(w);
      EXPECT_GE(per(x).value, vmin - 1e-9);
    }
  }
}

// Monotonicity of satisfaction in eps: just below an exact value no
// sampled disturbance violates, just above the enumerated vertex sequences do.
TEST(Properties, MonotonicityAroundExactValues) {
  std::mt19937_64 rng(51);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    Instance in = randomInstance(rng, 2, 1 + t % 2, 1 + t % 4);
    bool safety = t % 2 == 0;
    ResilienceResult r = safety ? finiteHorizonSafety(in.sys, in.x0, in.region, in.horizon)
                                : exactTimeReach(in.sys, in.x0, in.region, in.horizon);
    if (r.kind != ResultKind::kExact || !(r.value > 0) || std::isinf(r.value)) continue;
    std::string text = safety ? "(always " + std::to_string(in.horizon) + " (atom R))"
                              : "(next " + std::to_string(in.horizon) + " (atom R))";
    ltlf::Formula f = ltlf::parseFormula(text, table(in.region));
    OracleConfig cfg;
    cfg.samples_per_epsilon = 2000;
    cfg.seed = static_cast<std::uint64_t>(t);
    Model m = in.sys;
    EXPECT_FALSE(falsifyAt(m, in.x0, f, in.horizon, 0.99 * r.value, cfg).has_value()) << t;
    EXPECT_TRUE(falsifyAt(m, in.x0, f, in.horizon, 1.05 * r.value, cfg).has_value()) << t;
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

// Envelope soundness for x+ = x - 0.1 x^3 on [0, 1]: the linear bound
// dominates the true state for random disturbances that keep the state in
// the domain.
TEST(Properties, EnvelopeSoundnessOn1000Points) {
  std::vector<std::string> vars{"x"};
  NonlinearModel model(vars, {expr::Expression::parse("x - 0.1*x^3", vars)}, Matrix::Identity(1, 1),
                       IntervalBox(Vector{{0.0}}, Vector{{1.0}}));
  Matrix g{{1.0}, {-1.0}};
  const int n = 3;
  IntervalEnvelope env(model.lowerJacobian(), model.upperJacobian(), g, n);
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int used = 0;
  while (used < 1000) {
    Vector x0{{u(rng)}};
    std::vector<Vector> d;
    Vector x = x0;
    bool inside = true;
    for (int k = 0; k < n; ++k) {
      d.push_back(Vector{{0.05 * (2.0 * u(rng) - 1.0)}});
      x = model.step(x, d.back());
      inside = inside && x(0) >= 0.0 && x(0) <= 1.0;
    }
    if (!inside) continue;
    ++used;
    Vector bound = env.bound(x0, d);
    EXPECT_LE((g * x)(0), bound(0) + 1e-12);
    EXPECT_LE((g * x)(1), bound(1) + 1e-12);
  }
}

}  // namespace
}  // namespace rezmet
