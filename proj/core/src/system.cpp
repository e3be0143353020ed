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

#include "rezmet/system.hpp"

#include <cmath>

#include "rezmet/errors.hpp"

namespace rezmet {

namespace {

constexpr double kOriginTolerance = 1e-9;

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

}  // namespace

LinearSystem::LinearSystem(Matrix a, Matrix w) : a_(std::move(a)), w_(std::move(w)) {
  if (a_.rows() < 1 || a_.rows() != a_.cols()) fail(ErrorKind::kDimension, "A must be square, got " + shape(a_));
  if (w_.rows() != a_.rows() || w_.cols() < 1) {
    fail(ErrorKind::kDimension, "W must have " + std::to_string(a_.rows()) + " rows, got " + shape(w_));
  }
  if (!allFinite(a_) || !allFinite(w_)) fail(ErrorKind::kDimension, "system matrices must be finite");
}

LinearSystem::LinearSystem(Matrix a) : LinearSystem(a, Matrix::Identity(a.rows(), a.rows())) {}

NonlinearModel::NonlinearModel(std::vector<std::string> states, std::vector<expr::Expression> f, Matrix w,
                               IntervalBox domain, std::optional<Matrix> lower, std::optional<Matrix> upper,
                               NonlinearOptions options)
    : states_(std::move(states)), f_(std::move(f)), w_(std::move(w)), domain_(std::move(domain)), options_(options) {
  const Index n = static_cast<Index>(f_.size());
  if (n < 1) fail(ErrorKind::kDimension, "nonlinear model needs at least one state");
  if (static_cast<Index>(states_.size()) != n) fail(ErrorKind::kDimension, "state names and dynamics differ in count");
  if (w_.rows() != n || w_.cols() < 1) fail(ErrorKind::kDimension, "W must have " + std::to_string(n) + " rows");
  if (domain_.dimension() != n) fail(ErrorKind::kDimension, "domain dimension does not match the state");
  for (const auto& fi : f_) {
    if (fi.maxVariable() >= n) fail(ErrorKind::kDimension, "dynamics reference an unknown state");
  }
  if (domain_.hasNegativeCoordinates() && !options_.acknowledge_sign_caveat) {
    fail(ErrorKind::kDomain,
         "domain contains negative coordinates; the Jacobian sandwich A_lo x <= f(x) <= A_hi x needs x >= 0 "
         "(acknowledge the sign caveat to proceed)");
  }

  offset_ = evaluate(Vector::Zero(n));
  if (offset_.cwiseAbs().maxCoeff() > kOriginTolerance) {
    if (!options_.allow_affine_rebase) {
      fail(ErrorKind::kDomain, "f(0) != 0; enable the affine rebase to carry f(0) as a constant input");
    }
  } else {
    offset_.setZero();
  }

  if (lower.has_value() != upper.has_value()) fail(ErrorKind::kDimension, "supply both Jacobian bounds or neither");
  if (lower) {
    lower_ = std::move(*lower);
    upper_ = std::move(*upper);
  } else {
    std::vector<expr::Interval> box(static_cast<size_t>(n));
    for (Index j = 0; j < n; ++j) box[static_cast<size_t>(j)] = {domain_.lower()(j), domain_.upper()(j)};
    lower_.resize(n, n);
    upper_.resize(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        expr::Interval r = f_[static_cast<size_t>(i)].derivative(static_cast<int>(j)).evaluate(box);
        lower_(i, j) = r.lo;
        upper_(i, j) = r.hi;
      }
    }
    jacobian_computed_ = true;
  }
  if (lower_.rows() != n || lower_.cols() != n || upper_.rows() != n || upper_.cols() != n) {
    fail(ErrorKind::kDimension, "Jacobian bounds must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (!allFinite(lower_) || !allFinite(upper_)) fail(ErrorKind::kDomain, "Jacobian bounds are not finite on the domain");
  if ((lower_.array() > upper_.array()).any()) fail(ErrorKind::kDomain, "Jacobian lower bound exceeds upper bound");
}

Vector NonlinearModel::evaluate(const Vector& x) const {
  if (x.size() != stateDimension()) fail(ErrorKind::kDimension, "state dimension mismatch in f(x)");
  std::span<const double> values(x.data(), static_cast<size_t>(x.size()));
  Vector out(x.size());
  for (Index i = 0; i < x.size(); ++i) out(i) = f_[static_cast<size_t>(i)].evaluate(values);
  return out;
}

Index stateDimension(const Model& model) {
  return std::visit([](const auto& m) { return m.stateDimension(); }, model);
}

Index inputDimension(const Model& model) {
  return std::visit([](const auto& m) { return m.inputDimension(); }, model);
}

bool isLinear(const Model& model) { return std::holds_alternative<LinearSystem>(model); }

Vector step(const Model& model, const Vector& x, const Vector& d) {
  return std::visit([&](const auto& m) { return m.step(x, d); }, model);
}

DisturbanceTrace DisturbanceTrace::zero(Index inputs, int length) {
  DisturbanceTrace t;
  t.steps.assign(static_cast<size_t>(std::max(0, length)), Vector::Zero(inputs));
  return t;
}

double DisturbanceTrace::magnitude() const {
  double m = 0.0;
  for (const auto& d : steps) {
    if (d.size() > 0) m = std::max(m, d.cwiseAbs().maxCoeff());
  }
  return m;
}

Trajectory simulate(const Model& model, const Vector& x0, const DisturbanceTrace& disturbance) {
  const Index n = stateDimension(model);
  const Index m = inputDimension(model);
  if (x0.size() != n) {
    fail(ErrorKind::kDimension, "initial state has dimension " + std::to_string(x0.size()) + ", model has " +
                                    std::to_string(n));
  }
  const NonlinearModel* nl = std::get_if<NonlinearModel>(&model);
  Trajectory out;
  out.trace.states.reserve(disturbance.size() + 1);
  out.trace.states.push_back(x0);
  if (nl && !nl->domain().contains(x0)) out.domain_exit = 0;
  for (size_t k = 0; k < disturbance.size(); ++k) {
    const Vector& d = disturbance.steps[k];
    if (d.size() != m) {
      fail(ErrorKind::kDimension, "disturbance step " + std::to_string(k) + " has dimension " +
                                      std::to_string(d.size()) + ", model expects " + std::to_string(m));
    }
    out.trace.states.push_back(step(model, out.trace.states.back(), d));
    if (nl && !out.domain_exit && !nl->domain().contains(out.trace.states.back())) out.domain_exit = k + 1;
  }
  return out;
}

bool nominalSatisfies(const Model& model, const Vector& x0, const ltlf::Formula& formula, int horizon,
                      const ltlf::EvalOptions& options) {
  if (horizon < 0) fail(ErrorKind::kDimension, "horizon must be non-negative");
  if (auto need = ltlf::requiredHorizon(formula, options); need && *need > horizon) {
    fail(ErrorKind::kDimension, "horizon " + std::to_string(horizon) + " is shorter than the formula depth " +
                                    std::to_string(*need));
  }
  Trajectory t = simulate(model, x0, DisturbanceTrace::zero(inputDimension(model), horizon));
  return ltlf::evaluate(formula, t.trace, 0, options);
}

}  // namespace rezmet
