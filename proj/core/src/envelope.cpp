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

#include "rezmet/envelope.hpp"

#include <cmath>

#include "rezmet/errors.hpp"

namespace rezmet {

IntervalEnvelope::IntervalEnvelope(const Matrix& lower, const Matrix& upper, const Matrix& g, int horizon) {
  const Index n = lower.rows();
  if (lower.cols() != n || upper.rows() != n || upper.cols() != n) {
    fail(ErrorKind::kDimension, "Jacobian bounds must be square and equal in size");
  }
  if (g.cols() != n) fail(ErrorKind::kDimension, "region dimension does not match the Jacobian bounds");
  if (horizon < 0) fail(ErrorKind::kDimension, "envelope horizon must be non-negative");
  if ((lower.array() > upper.array()).any()) fail(ErrorKind::kDomain, "Jacobian lower bound exceeds upper bound");
  b_.reserve(static_cast<size_t>(horizon) + 1);
  b_.push_back(g);
  Matrix lo = Matrix::Identity(n, n);
  Matrix hi = Matrix::Identity(n, n);
  for (int k = 1; k <= horizon; ++k) {
    lo = lo * lower;
    hi = hi * upper;
    b_.push_back((g * lo).cwiseMax(g * hi));
  }
}

Vector IntervalEnvelope::bound(const Vector& x0, const std::vector<Vector>& inputs) const {
  const int n = horizon();
  if (static_cast<int>(inputs.size()) != n) fail(ErrorKind::kDimension, "envelope bound needs N inputs");
  Vector out = B(n) * x0;
  for (int k = 0; k < n; ++k) out += B(n - 1 - k) * inputs[static_cast<size_t>(k)];
  return out;
}

namespace {

void checkQuery(const NonlinearModel& model, const Vector& x0, const Polytope& region) {
  const Index n = model.stateDimension();
  if (x0.size() != n || region.dimension() != n) fail(ErrorKind::kDimension, "linearization: dimension mismatch");
  if (!model.domain().contains(x0)) fail(ErrorKind::kDomain, "initial state lies outside the model domain");
}

std::vector<Vector> nominalStates(const NonlinearModel& model, const Vector& x0, int horizon) {
  std::vector<Vector> xs{x0};
  for (int k = 0; k < horizon; ++k) xs.push_back(model.evaluate(xs.back()));
  return xs;
}

}  // namespace

RobustConstraintSystem linearizedReachSystem(const NonlinearModel& model, const Vector& x0, const Polytope& target,
                                             int horizon) {
  checkQuery(model, x0, target);
  if (horizon < 1) fail(ErrorKind::kDimension, "linearized reachability needs a horizon >= 1");
  IntervalEnvelope env(model.lowerJacobian(), model.upperJacobian(), target.G(), horizon);
  const Index m = model.inputDimension();
  RobustConstraintSystem rcs;
  rcs.e.resize(target.facets(), m * horizon);
  Vector offset = env.B(horizon) * x0;
  for (int j = 0; j < horizon; ++j) {
    const Matrix& b = env.B(horizon - 1 - j);
    rcs.e.middleCols(j * m, m) = b * model.W();
    offset += b * model.offset();
  }
  rcs.f = target.H() - offset;
  rcs.disturbances = DisturbanceTemplate::unitBox(m * horizon);
  return rcs;
}

ResilienceResult linearizedExactTimeReach(const NonlinearModel& model, const Vector& x0, const Polytope& target,
                                          int horizon, const LinearOptions& options) {
  RobustConstraintSystem rcs = linearizedReachSystem(model, x0, target, horizon);
  ResilienceResult r;
  r.method = "nonlinear-lp";
  r.kind = ResultKind::kLowerBound;
  std::vector<Vector> xs = nominalStates(model, x0, horizon);
  if (!target.contains(xs.back())) {
    r.value = 0.0;
    r.kind = ResultKind::kExact;
    r.notes.push_back("nominal trajectory misses the target at step " + std::to_string(horizon));
    return r;
  }
  if (std::any_of(xs.begin(), xs.end(), [&](const Vector& x) { return !model.domain().contains(x); })) {
    r.notes.push_back("nominal trajectory leaves the model domain; Jacobian bounds not certified there");
  }
  if ((rcs.f.array() < 0.0).any()) {
    r.value = 0.0;
    r.notes.push_back("envelope bound exceeds the target at zero disturbance");
    return r;
  }
  RobustSolution sol = solveRobust(rcs, options.mode, options.simplex);
  r.value = sol.epsilon;
  r.certificate = sol.certificate;
  r.lp_iterations = sol.iterations;
  return r;
}

ResilienceResult linearizedSafety(const NonlinearModel& model, const Vector& x0, const Polytope& safe, int horizon,
                                  const LinearOptions& options) {
  checkQuery(model, x0, safe);
  if (horizon < 0) fail(ErrorKind::kDimension, "safety horizon must be non-negative");
  ResilienceResult start;
  start.method = "nonlinear-lp";
  if (!safe.contains(x0)) {
    start.value = 0.0;
    start.notes.push_back("initial state outside the safe set");
    return start;
  }
  start.value = kInfinity;
  std::vector<ResilienceResult> parts{start};
  for (int k = 1; k <= horizon; ++k) parts.push_back(linearizedExactTimeReach(model, x0, safe, k, options));
  ResilienceResult out = composeConjunction(parts);
  out.method = "nonlinear-lp";
  return out;
}

}  // namespace rezmet
