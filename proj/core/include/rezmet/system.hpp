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
#include <string>
#include <variant>
#include <vector>

#include "rezmet/expression.hpp"
#include "rezmet/geometry.hpp"
#include "rezmet/linalg.hpp"
#include "rezmet/ltlf.hpp"

namespace rezmet {

/// x(k+1) = A x(k) + W d(k).
class LinearSystem {
 public:
  LinearSystem(Matrix a, Matrix w);
  /// W = identity.
  explicit LinearSystem(Matrix a);

  const Matrix& A() const { return a_; }
  const Matrix& W() const { return w_; }
  Index stateDimension() const { return a_.rows(); }
  Index inputDimension() const { return w_.cols(); }

  Vector step(const Vector& x, const Vector& d) const { return a_ * x + w_ * d; }

 private:
  Matrix a_;
  Matrix w_;
};

struct NonlinearOptions {
  /// Accept f(0) = c != 0 by carrying c as a known constant input.
  bool allow_affine_rebase = false;
  /// Accept a domain with negative coordinates, where the linear sandwich
  /// built from Jacobian bounds is not guaranteed.
  bool acknowledge_sign_caveat = false;
};

/// x(k+1) = f(x(k)) + W d(k) with elementwise Jacobian bounds valid on
/// `domain`.
class NonlinearModel {
 public:
  /// When `lower`/`upper` are absent the bounds are computed by interval
  /// evaluation of the symbolic Jacobian over the domain.
  NonlinearModel(std::vector<std::string> states, std::vector<expr::Expression> f, Matrix w,
                 IntervalBox domain, std::optional<Matrix> lower = std::nullopt,
                 std::optional<Matrix> upper = std::nullopt, NonlinearOptions options = {});

  Index stateDimension() const { return static_cast<Index>(f_.size()); }
  Index inputDimension() const { return w_.cols(); }

  /// f(x), including the constant term f(0).
  Vector evaluate(const Vector& x) const;
  Vector step(const Vector& x, const Vector& d) const { return evaluate(x) + w_ * d; }

  const std::vector<std::string>& stateNames() const { return states_; }
  const std::vector<expr::Expression>& dynamics() const { return f_; }
  const Matrix& W() const { return w_; }
  const IntervalBox& domain() const { return domain_; }
  const Matrix& lowerJacobian() const { return lower_; }
  const Matrix& upperJacobian() const { return upper_; }
  /// f(0); zero unless the affine rebase was accepted.
  const Vector& offset() const { return offset_; }
  bool jacobianComputed() const { return jacobian_computed_; }
  const NonlinearOptions& options() const { return options_; }

 private:
  std::vector<std::string> states_;
  std::vector<expr::Expression> f_;
  Matrix w_;
  IntervalBox domain_;
  Matrix lower_;
  Matrix upper_;
  Vector offset_;
  bool jacobian_computed_ = false;
  NonlinearOptions options_;
};

using Model = std::variant<LinearSystem, NonlinearModel>;

Index stateDimension(const Model& model);
Index inputDimension(const Model& model);
bool isLinear(const Model& model);
Vector step(const Model& model, const Vector& x, const Vector& d);

/// d_0 ... d_{N-1} with every |d_k|_inf <= bound.
struct DisturbanceTrace {
  std::vector<Vector> steps;
  double bound = 0.0;

  static DisturbanceTrace zero(Index inputs, int length);
  size_t size() const { return steps.size(); }
  /// Largest |d_k|_inf.
  double magnitude() const;
};

struct Trajectory {
  ltlf::StateTrace trace;
  /// First step whose state lies outside a nonlinear model's domain.
  std::optional<size_t> domain_exit;
};

/// x_0 = x0, x_{k+1} = f(x_k) + W d_k.
Trajectory simulate(const Model& model, const Vector& x0, const DisturbanceTrace& disturbance);

/// Zero-disturbance trajectory of length N+1 evaluated at position 0.
bool nominalSatisfies(const Model& model, const Vector& x0, const ltlf::Formula& formula, int horizon,
                      const ltlf::EvalOptions& options = {});

}  // namespace rezmet
