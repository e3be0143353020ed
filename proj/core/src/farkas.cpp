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

#include "rezmet/farkas.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rezmet/errors.hpp"

namespace rezmet {

DisturbanceTemplate DisturbanceTemplate::unitBox(Index dimension) {
  if (dimension < 1) fail(ErrorKind::kDimension, "disturbance template needs a positive dimension");
  DisturbanceTemplate t;
  t.a = Matrix::Zero(2 * dimension, dimension);
  t.a.topRows(dimension).setIdentity();
  t.a.bottomRows(dimension) = -Matrix::Identity(dimension, dimension);
  t.b = Vector::Ones(2 * dimension);
  return t;
}

bool DisturbanceTemplate::isUnitBox() const {
  const Index d = a.cols();
  if (a.rows() != 2 * d || b.size() != a.rows()) return false;
  std::vector<int> plus(static_cast<size_t>(d), 0);
  std::vector<int> minus(static_cast<size_t>(d), 0);
  for (Index i = 0; i < a.rows(); ++i) {
    if (b(i) != 1.0) return false;
    Index hit = -1;
    for (Index j = 0; j < d; ++j) {
      if (a(i, j) == 0.0) continue;
      if (hit >= 0 || std::abs(a(i, j)) != 1.0) return false;
      hit = j;
    }
    if (hit < 0) return false;
    ++(a(i, hit) > 0 ? plus : minus)[static_cast<size_t>(hit)];
  }
  for (Index j = 0; j < d; ++j) {
    if (plus[static_cast<size_t>(j)] != 1 || minus[static_cast<size_t>(j)] != 1) return false;
  }
  return true;
}

void RobustConstraintSystem::validate() const {
  if (e.rows() < 1) fail(ErrorKind::kDimension, "robust system needs at least one constraint row");
  if (e.rows() != f.size()) fail(ErrorKind::kDimension, "E and F differ in row count");
  if (e.cols() != disturbances.a.cols()) fail(ErrorKind::kDimension, "E columns do not match the template dimension");
  if (disturbances.a.rows() != disturbances.b.size() || disturbances.a.rows() < 1) {
    fail(ErrorKind::kDimension, "template A_b and B_b differ in row count");
  }
  if (!allFinite(e) || !allFinite(f) || !allFinite(disturbances.a) || !allFinite(disturbances.b)) {
    fail(ErrorKind::kDimension, "robust system entries must be finite");
  }
}

double FarkasCertificate::residual(const RobustConstraintSystem& rcs) const {
  double r = std::max(0.0, -p.minCoeff());
  r = std::max(r, (p * rcs.disturbances.a - rcs.e).cwiseAbs().maxCoeff());
  Vector slack = p * rcs.disturbances.b - rcs.f / epsilon;
  r = std::max(r, std::max(0.0, slack.maxCoeff()));
  return r;
}

namespace {

lp::LinearProgram buildLp(const Matrix& e, const Vector& f, const DisturbanceTemplate& t) {
  const Index q = e.rows();
  const Index r = t.a.rows();
  const Index d = t.a.cols();
  const Index eps = q * r;
  lp::LinearProgram prog(eps + 1, lp::Sense::kMaximize);
  prog.setObjectiveCoefficient(eps, 1.0);
  for (Index i = 0; i < q; ++i) {
    for (Index k = 0; k < r; ++k) prog.setName(i * r + k, "q_" + std::to_string(i) + "_" + std::to_string(k));
  }
  prog.setName(eps, "eps");
  for (Index i = 0; i < q; ++i) {
    for (Index j = 0; j < d; ++j) {
      Vector row = Vector::Zero(eps + 1);
      for (Index k = 0; k < r; ++k) row(i * r + k) = t.a(k, j);
      row(eps) = -e(i, j);
      prog.addConstraint(std::move(row), lp::Relation::kEqual, 0.0);
    }
    Vector row = Vector::Zero(eps + 1);
    for (Index k = 0; k < r; ++k) row(i * r + k) = t.b(k);
    prog.addConstraint(std::move(row), lp::Relation::kLessEqual, f(i));
  }
  return prog;
}

struct RowSolve {
  lp::Status status;
  double epsilon;
  Matrix q;
  int iterations;
};

RowSolve solveBlock(const Matrix& e, const Vector& f, const DisturbanceTemplate& t, const lp::SimplexOptions& opt) {
  lp::Solution sol = lp::solve(buildLp(e, f, t), opt);
  RowSolve out{sol.status, 0.0, Matrix(), sol.iterations};
  if (sol.status == lp::Status::kOptimal) {
    out.epsilon = std::max(0.0, sol.x(sol.x.size() - 1));
    out.q = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        sol.x.data(), e.rows(), t.a.rows());
  }
  return out;
}

}  // namespace

lp::LinearProgram robustToFarkasLp(const RobustConstraintSystem& rcs) {
  rcs.validate();
  return buildLp(rcs.e, rcs.f, rcs.disturbances);
}

RobustSolution solveRobust(const RobustConstraintSystem& rcs, RobustSolveMode mode, const lp::SimplexOptions& options) {
  rcs.validate();
  RobustSolution out;
  const Index q = rcs.e.rows();
  const Index r = rcs.disturbances.a.rows();
  Matrix qm = Matrix::Zero(q, r);
  if (mode == RobustSolveMode::kJoint) {
    RowSolve s = solveBlock(rcs.e, rcs.f, rcs.disturbances, options);
    out.iterations = s.iterations;
    if (s.status == lp::Status::kInfeasible) return out;
    if (s.status == lp::Status::kUnbounded) {
      out.epsilon = kInfinity;
      return out;
    }
    out.epsilon = s.epsilon;
    qm = s.q;
  } else {
    // Each row has its own multipliers, so the joint optimum is the row-wise
    // minimum. Rows whose LP is unbounded place no limit on eps.
    double eps = kInfinity;
    std::vector<RowSolve> rows;
    rows.reserve(static_cast<size_t>(q));
    for (Index i = 0; i < q; ++i) {
      rows.push_back(solveBlock(rcs.e.row(i), rcs.f.segment(i, 1), rcs.disturbances, options));
      const RowSolve& s = rows.back();
      out.iterations += s.iterations;
      if (s.status == lp::Status::kInfeasible) {
        out.epsilon = 0.0;
        return out;
      }
      if (s.status == lp::Status::kOptimal) eps = std::min(eps, s.epsilon);
    }
    out.epsilon = eps;
    if (!std::isfinite(eps)) return out;
    if (eps > 0.0) {
      // Q_i / eps_i stays a valid multiplier at any smaller eps.
      for (Index i = 0; i < q; ++i) {
        const RowSolve& s = rows[static_cast<size_t>(i)];
        if (s.status == lp::Status::kOptimal) {
          qm.row(i) = s.q.row(0) * (eps / s.epsilon);
          continue;
        }
        lp::LinearProgram prog = buildLp(rcs.e.row(i), rcs.f.segment(i, 1), rcs.disturbances);
        Vector cap = Vector::Zero(prog.variables());
        cap(cap.size() - 1) = 1.0;
        prog.addConstraint(cap, lp::Relation::kEqual, eps);
        lp::Solution sol = lp::solve(prog, options);
        out.iterations += sol.iterations;
        qm.row(i) = sol.x.head(r).transpose();
      }
    }
  }
  if (out.epsilon > 0.0 && std::isfinite(out.epsilon)) {
    FarkasCertificate cert{qm / out.epsilon, out.epsilon};
    out.certificate = std::move(cert);
  }
  return out;
}

double dualNormClosedForm(const RobustConstraintSystem& rcs) {
  rcs.validate();
  if (!rcs.disturbances.isUnitBox()) {
    fail(ErrorKind::kUnsupported, "the dual-norm closed form needs the unit-box disturbance template");
  }
  double eps = kInfinity;
  for (Index i = 0; i < rcs.e.rows(); ++i) {
    if (rcs.f(i) < 0.0) return 0.0;
    double norm = rcs.e.row(i).cwiseAbs().sum();
    if (norm == 0.0) continue;
    eps = std::min(eps, rcs.f(i) / norm);
  }
  return eps;
}

}  // namespace rezmet
