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

#include "rezmet/resilience_linear.hpp"

#include <cmath>
#include <vector>

#include "rezmet/errors.hpp"
#include "rezmet/parallel.hpp"

namespace rezmet {

namespace {

void checkDimensions(const LinearSystem& sys, const Vector& x0, const Polytope& set) {
  const Index n = sys.stateDimension();
  if (x0.size() != n) {
    fail(ErrorKind::kDimension, "initial state has dimension " + std::to_string(x0.size()) + ", system has " +
                                    std::to_string(n));
  }
  if (set.dimension() != n) {
    fail(ErrorKind::kDimension, "region has dimension " + std::to_string(set.dimension()) + ", system has " +
                                    std::to_string(n));
  }
}

ResilienceResult fromSolution(const RobustSolution& sol, std::string method) {
  ResilienceResult r;
  r.value = sol.epsilon;
  r.kind = ResultKind::kExact;
  r.method = std::move(method);
  r.certificate = sol.certificate;
  r.lp_iterations = sol.iterations;
  return r;
}

ResilienceResult zero(std::string method, std::string note) {
  ResilienceResult r;
  r.value = 0.0;
  r.kind = ResultKind::kExact;
  r.method = std::move(method);
  r.notes.push_back(std::move(note));
  return r;
}

}  // namespace

RobustConstraintSystem exactReachSystem(const LinearSystem& sys, const Vector& x0, const Polytope& target, int horizon) {
  checkDimensions(sys, x0, target);
  if (horizon < 1) fail(ErrorKind::kDimension, "exact-time reachability needs a horizon >= 1");
  const Index m = sys.inputDimension();
  const Matrix& g = target.G();
  RobustConstraintSystem rcs;
  rcs.e.resize(g.rows(), m * horizon);
  Matrix power = Matrix::Identity(sys.stateDimension(), sys.stateDimension());
  for (int j = horizon - 1; j >= 0; --j) {
    rcs.e.middleCols(j * m, m) = g * power * sys.W();
    power = sys.A() * power;
  }
  rcs.f = target.H() - g * (power * x0);
  rcs.disturbances = DisturbanceTemplate::unitBox(m * horizon);
  return rcs;
}

RobustConstraintSystem safetySystem(const LinearSystem& sys, const Vector& x0, const Polytope& safe, int horizon) {
  checkDimensions(sys, x0, safe);
  if (horizon < 1) fail(ErrorKind::kDimension, "the stacked safety system needs a horizon >= 1");
  const Index n = sys.stateDimension();
  const Index m = sys.inputDimension();
  const Index q = safe.facets();
  const Matrix& g = safe.G();
  std::vector<Matrix> powers(static_cast<size_t>(horizon) + 1);
  powers[0] = Matrix::Identity(n, n);
  for (int k = 1; k <= horizon; ++k) powers[static_cast<size_t>(k)] = sys.A() * powers[static_cast<size_t>(k) - 1];
  RobustConstraintSystem rcs;
  rcs.e = Matrix::Zero(q * horizon, m * horizon);
  rcs.f.resize(q * horizon);
  for (int k = 1; k <= horizon; ++k) {
    for (int j = 0; j < k; ++j) {
      rcs.e.block((k - 1) * q, j * m, q, m) = g * powers[static_cast<size_t>(k - 1 - j)] * sys.W();
    }
    rcs.f.segment((k - 1) * q, q) = safe.H() - g * (powers[static_cast<size_t>(k)] * x0);
  }
  rcs.disturbances = DisturbanceTemplate::unitBox(m * horizon);
  return rcs;
}

ResilienceResult exactTimeReach(const LinearSystem& sys, const Vector& x0, const Polytope& target, int horizon,
                                const LinearOptions& options) {
  RobustConstraintSystem rcs = exactReachSystem(sys, x0, target, horizon);
  if ((rcs.f.array() < 0.0).any()) return zero("exact-reach", "nominal trajectory misses the target");
  return fromSolution(solveRobust(rcs, options.mode, options.simplex), "exact-reach");
}

ResilienceResult finiteHorizonSafety(const LinearSystem& sys, const Vector& x0, const Polytope& safe, int horizon,
                                     const LinearOptions& options) {
  checkDimensions(sys, x0, safe);
  if (horizon < 0) fail(ErrorKind::kDimension, "safety horizon must be non-negative");
  if (!safe.contains(x0)) return zero("safety", "initial state outside the safe set");
  if (horizon == 0) {
    ResilienceResult r;
    r.value = kInfinity;
    r.method = "safety";
    return r;
  }
  RobustConstraintSystem rcs = safetySystem(sys, x0, safe, horizon);
  if ((rcs.f.array() < 0.0).any()) return zero("safety", "nominal trajectory leaves the safe set");
  return fromSolution(solveRobust(rcs, options.mode, options.simplex), "safety");
}

ResilienceResult finiteHorizonReachLower(const LinearSystem& sys, const Vector& x0, const Polytope& target,
                                         int horizon, const LinearOptions& options) {
  checkDimensions(sys, x0, target);
  if (horizon < 0) fail(ErrorKind::kDimension, "reach horizon must be non-negative");
  ResilienceResult best;
  best.method = "reach-lb";
  if (target.contains(x0)) {
    best.value = kInfinity;
    best.kind = ResultKind::kExact;
    best.notes.push_back("initial state already inside the target");
    return best;
  }
  best.value = 0.0;
  best.kind = ResultKind::kLowerBound;
  for (int k = 1; k <= horizon; ++k) {
    ResilienceResult r = exactTimeReach(sys, x0, target, k, options);
    best.lp_iterations += r.lp_iterations;
    if (r.value > best.value) {
      best.value = r.value;
      best.certificate = r.certificate;
      best.notes = {"binding step " + std::to_string(k)};
    }
  }
  return best;
}

ResilienceResult signedResilience(const LinearSystem& sys, const Vector& x0, const Polytope& target, int horizon,
                                  const LinearOptions& options) {
  RobustConstraintSystem rcs = exactReachSystem(sys, x0, target, horizon);
  if (!(rcs.f.array() < 0.0).any()) {
    ResilienceResult r = fromSolution(solveRobust(rcs, options.mode, options.simplex), "signed");
    return r;
  }
  // min t s.t. E d <= F, |d_i| <= t.
  const Index k = rcs.e.cols();
  lp::LinearProgram prog(k + 1, lp::Sense::kMinimize);
  for (Index j = 0; j < k; ++j) {
    prog.setBound(j, -kInfinity, kInfinity);
    prog.setName(j, "d" + std::to_string(j));
  }
  prog.setName(k, "t");
  prog.setObjectiveCoefficient(k, 1.0);
  for (Index i = 0; i < rcs.e.rows(); ++i) {
    Vector row = Vector::Zero(k + 1);
    row.head(k) = rcs.e.row(i).transpose();
    prog.addConstraint(std::move(row), lp::Relation::kLessEqual, rcs.f(i));
  }
  for (Index j = 0; j < k; ++j) {
    Vector up = Vector::Zero(k + 1);
    up(j) = 1.0;
    up(k) = -1.0;
    prog.addConstraint(up, lp::Relation::kLessEqual, 0.0);
    Vector lo = Vector::Zero(k + 1);
    lo(j) = -1.0;
    lo(k) = -1.0;
    prog.addConstraint(lo, lp::Relation::kLessEqual, 0.0);
  }
  lp::Solution sol = lp::solve(prog, options.simplex);
  if (sol.status != lp::Status::kOptimal) {
    fail(ErrorKind::kInfeasible, "no disturbance sequence reaches the target at step " + std::to_string(horizon));
  }
  ResilienceResult r;
  r.value = -sol.x(k);
  r.kind = ResultKind::kExact;
  r.method = "signed";
  r.lp_iterations = sol.iterations;
  DisturbanceTrace w;
  const Index m = sys.inputDimension();
  for (int s = 0; s < horizon; ++s) w.steps.push_back(sol.x.segment(s * m, m));
  w.bound = sol.x(k);
  r.witness = std::move(w);
  return r;
}

ResilienceResult vertexResilience(const ConvexHullSet& hull, const ltlf::Formula& formula,
                                  const PointMethod& per_vertex, const VertexOptions& options) {
  bool certified = ltlf::classifyConvex(formula) == ltlf::Fragment::kCertified;
  if (!certified && !options.allow_unsafe) {
    fail(ErrorKind::kUnsupported, "vertex reduction needs a formula in the convex fragment");
  }
  const auto& vertices = hull.vertices();
  std::vector<ResilienceResult> results(vertices.size());
  parallelFor(vertices.size(), [&](size_t i) { results[i] = per_vertex(vertices[i]); }, options.threads);
  size_t pick = 0;
  for (size_t i = 1; i < results.size(); ++i) {
    if (results[i].value < results[pick].value) pick = i;
  }
  ResilienceResult out = composeConjunction(results);
  out.method = "vertex(" + results[pick].method + ")";
  out.notes.clear();
  for (const auto& r : results) {
    for (const auto& n : r.notes) {
      if (std::find(out.notes.begin(), out.notes.end(), n) == out.notes.end()) out.notes.push_back(n);
    }
  }
  out.notes.insert(out.notes.begin(), "binding vertex " + std::to_string(pick) + " of " +
                                          std::to_string(vertices.size()));
  if (!certified) {
    out.kind = ResultKind::kHeuristic;
    out.notes.push_back("convexity not certified; vertex reduction forced");
  }
  return out;
}

}  // namespace rezmet
