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

#include "rezmet/lp.hpp"

#include <algorithm>
#include <cmath>

#include "rezmet/errors.hpp"

namespace rezmet::lp {

LinearProgram::LinearProgram(Index variables, Sense sense)
    : sense_(sense),
      objective_(Vector::Zero(variables)),
      bounds_(static_cast<size_t>(variables)),
      names_(static_cast<size_t>(variables)) {
  if (variables < 1) fail(ErrorKind::kDimension, "linear program needs at least one variable");
  for (Index j = 0; j < variables; ++j) names_[static_cast<size_t>(j)] = "x" + std::to_string(j);
}

void LinearProgram::setObjective(Vector c) {
  if (c.size() != variables()) fail(ErrorKind::kDimension, "objective length does not match the variable count");
  if (!allFinite(c)) fail(ErrorKind::kDimension, "objective coefficients must be finite");
  objective_ = std::move(c);
}

void LinearProgram::setObjectiveCoefficient(Index j, double value) {
  if (j < 0 || j >= variables()) fail(ErrorKind::kDimension, "objective index out of range");
  objective_(j) = value;
}

void LinearProgram::addConstraint(Vector row, Relation relation, double rhs) {
  if (row.size() != variables()) {
    fail(ErrorKind::kDimension, "constraint has " + std::to_string(row.size()) + " coefficients, expected " +
                                    std::to_string(variables()));
  }
  if (!allFinite(row) || !std::isfinite(rhs)) fail(ErrorKind::kDimension, "constraint coefficients must be finite");
  constraints_.push_back({std::move(row), relation, rhs});
}

void LinearProgram::setBound(Index j, double lower, double upper) {
  if (j < 0 || j >= variables()) fail(ErrorKind::kDimension, "bound index out of range");
  if (std::isnan(lower) || std::isnan(upper) || lower > upper || lower == kInfinity || upper == -kInfinity) {
    fail(ErrorKind::kDimension, "invalid bound on " + names_[static_cast<size_t>(j)]);
  }
  bounds_[static_cast<size_t>(j)] = {lower, upper};
}

void LinearProgram::setName(Index j, std::string name) {
  if (j < 0 || j >= variables()) fail(ErrorKind::kDimension, "name index out of range");
  names_[static_cast<size_t>(j)] = std::move(name);
}

std::string_view toString(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr int kDegenerateRunBeforeBland = 50;

// x_j = offset + sign * y_a (- y_b when free).
struct VariableMap {
  double offset = 0.0;
  double sign = 1.0;
  Index column = 0;
  Index negative_column = -1;
};

// min c'y s.t. A y (<=,=,>=) b, y >= 0, with b >= 0 after row flips.
struct StandardForm {
  Matrix a;
  Vector b;
  Vector c;
  std::vector<Relation> relations;
  std::vector<VariableMap> map;
  double objective_offset = 0.0;
};

StandardForm standardize(const LinearProgram& lp) {
  StandardForm sf;
  const Index n = lp.variables();
  Index columns = 0;
  std::vector<std::pair<Index, double>> upper_rows;  // (column, bound on y)
  sf.map.resize(static_cast<size_t>(n));
  for (Index j = 0; j < n; ++j) {
    const Bound& bd = lp.bounds()[static_cast<size_t>(j)];
    VariableMap& vm = sf.map[static_cast<size_t>(j)];
    vm.column = columns++;
    if (std::isfinite(bd.lower)) {
      vm.offset = bd.lower;
      if (std::isfinite(bd.upper)) upper_rows.emplace_back(vm.column, bd.upper - bd.lower);
    } else if (std::isfinite(bd.upper)) {
      vm.offset = bd.upper;
      vm.sign = -1.0;
    } else {
      vm.negative_column = columns++;
    }
  }

  const Index rows = static_cast<Index>(lp.constraints().size() + upper_rows.size());
  sf.a = Matrix::Zero(rows, columns);
  sf.b = Vector::Zero(rows);
  sf.c = Vector::Zero(columns);
  sf.relations.resize(static_cast<size_t>(rows));

  const double direction = lp.sense() == Sense::kMaximize ? -1.0 : 1.0;
  for (Index j = 0; j < n; ++j) {
    const VariableMap& vm = sf.map[static_cast<size_t>(j)];
    double cj = direction * lp.objective()(j);
    sf.objective_offset += cj * vm.offset;
    sf.c(vm.column) += cj * vm.sign;
    if (vm.negative_column >= 0) sf.c(vm.negative_column) -= cj;
  }

  Index r = 0;
  for (const Constraint& con : lp.constraints()) {
    double rhs = con.rhs;
    for (Index j = 0; j < n; ++j) {
      double aj = con.coefficients(j);
      if (aj == 0.0) continue;
      const VariableMap& vm = sf.map[static_cast<size_t>(j)];
      rhs -= aj * vm.offset;
      sf.a(r, vm.column) += aj * vm.sign;
      if (vm.negative_column >= 0) sf.a(r, vm.negative_column) -= aj;
    }
    sf.b(r) = rhs;
    sf.relations[static_cast<size_t>(r)] = con.relation;
    ++r;
  }
  for (const auto& [col, ub] : upper_rows) {
    sf.a(r, col) = 1.0;
    sf.b(r) = ub;
    sf.relations[static_cast<size_t>(r)] = Relation::kLessEqual;
    ++r;
  }
  for (Index i = 0; i < rows; ++i) {
    if (sf.b(i) < 0.0) {
      sf.a.row(i) *= -1.0;
      sf.b(i) = -sf.b(i);
      Relation& rel = sf.relations[static_cast<size_t>(i)];
      if (rel == Relation::kLessEqual) {
        rel = Relation::kGreaterEqual;
      } else if (rel == Relation::kGreaterEqual) {
        rel = Relation::kLessEqual;
      }
    }
  }
  return sf;
}

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class Simplex {
 public:
  Simplex(const StandardForm& sf, const SimplexOptions& options) : sf_(sf), options_(options) {
    const Index m = sf.a.rows();
    const Index ny = sf.a.cols();
    Index slacks = 0;
    Index artificials = 0;
    for (Relation rel : sf.relations) {
      if (rel != Relation::kEqual) ++slacks;
      if (rel != Relation::kLessEqual) ++artificials;
    }
    structural_ = ny;
    first_artificial_ = ny + slacks;
    columns_ = ny + slacks + artificials;
    t_ = Tableau::Zero(m + 1, columns_ + 1);
    t_.topLeftCorner(m, ny) = sf.a;
    basis_.assign(static_cast<size_t>(m), -1);
    Index s = ny;
    Index a = first_artificial_;
    for (Index i = 0; i < m; ++i) {
      t_(i, columns_) = sf.b(i);
      switch (sf.relations[static_cast<size_t>(i)]) {
        case Relation::kLessEqual:
          t_(i, s) = 1.0;
          basis_[static_cast<size_t>(i)] = s++;
          break;
        case Relation::kGreaterEqual:
          t_(i, s++) = -1.0;
          t_(i, a) = 1.0;
          basis_[static_cast<size_t>(i)] = a++;
          break;
        case Relation::kEqual:
          t_(i, a) = 1.0;
          basis_[static_cast<size_t>(i)] = a++;
          break;
      }
    }
    iteration_limit_ = options.max_iterations > 0 ? options.max_iterations
                                                  : static_cast<int>(std::max<Index>(20000, 100 * (m + columns_)));
  }

  Solution run() {
    Solution sol;
    const Index m = rows();
    // Phase 1: minimize the sum of artificials.
    if (first_artificial_ < columns_) {
      t_.row(m).setZero();
      for (Index j = first_artificial_; j < columns_; ++j) t_(m, j) = 1.0;
      for (Index i = 0; i < m; ++i) {
        if (isArtificial(basis_[static_cast<size_t>(i)])) t_.row(m) -= t_.row(i);
      }
      if (iterate(columns_) != Status::kOptimal) fail(ErrorKind::kNumerical, "phase one did not converge");
      double scale = 1.0 + sf_.b.cwiseAbs().sum();
      if (-t_(m, columns_) > options_.feasibility_tolerance * scale) {
        sol.status = Status::kInfeasible;
        sol.iterations = iterations_;
        return sol;
      }
      driveOutArtificials();
    }
    // Phase 2.
    t_.row(m).setZero();
    t_.row(m).head(structural_) = sf_.c.transpose();
    for (Index i = 0; i < m; ++i) {
      Index bj = basis_[static_cast<size_t>(i)];
      if (bj < structural_ && t_(m, bj) != 0.0) t_.row(m) -= t_(m, bj) * t_.row(i);
    }
    Status st = iterate(first_artificial_);
    sol.iterations = iterations_;
    if (st == Status::kUnbounded) {
      sol.status = Status::kUnbounded;
      return sol;
    }
    sol.status = Status::kOptimal;
    sol.x = recoverStructural();
    return sol;
  }

 private:
  Index rows() const { return t_.rows() - 1; }
  bool isArtificial(Index j) const { return j >= first_artificial_; }

  void pivot(Index r, Index s) {
    t_.row(r) /= t_(r, s);
    t_(r, s) = 1.0;
    for (Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      double f = t_(i, s);
      if (f == 0.0) continue;
      t_.row(i) -= f * t_.row(r);
      t_(i, s) = 0.0;
    }
    basis_[static_cast<size_t>(r)] = s;
  }

  // Optimizes over columns [0, limit).
  Status iterate(Index limit) {
    const Index m = rows();
    bool bland = options_.rule == PivotRule::kBland;
    int degenerate_run = 0;
    while (true) {
      if (++iterations_ > iteration_limit_) fail(ErrorKind::kNumerical, "simplex iteration limit reached");
      Index s = -1;
      double best = -options_.optimality_tolerance;
      for (Index j = 0; j < limit; ++j) {
        double d = t_(m, j);
        if (d < best) {
          s = j;
          if (bland) break;
          best = d;
        }
      }
      if (s < 0) return Status::kOptimal;

      Index r = -1;
      double ratio = kInfinity;
      for (Index i = 0; i < m; ++i) {
        double a = t_(i, s);
        if (a <= kPivotTolerance) continue;
        double q = std::max(0.0, t_(i, columns_)) / a;
        bool take = false;
        if (r < 0 || q < ratio - 1e-12 * (1.0 + ratio)) {
          take = true;
        } else if (q <= ratio + 1e-12 * (1.0 + ratio)) {
          take = bland ? basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(r)] : a > t_(r, s);
        }
        if (take) {
          r = i;
          ratio = q;
        }
      }
      if (r < 0) return Status::kUnbounded;

      if (ratio <= 1e-14) {
        if (++degenerate_run >= kDegenerateRunBeforeBland) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(r, s);
    }
  }

  void driveOutArtificials() {
    const Index m = rows();
    for (Index i = 0; i < m; ++i) {
      if (!isArtificial(basis_[static_cast<size_t>(i)])) continue;
      Index best = -1;
      double mag = kPivotTolerance;
      for (Index j = 0; j < first_artificial_; ++j) {
        if (std::abs(t_(i, j)) > mag) {
          mag = std::abs(t_(i, j));
          best = j;
        }
      }
      if (best >= 0) pivot(i, best);
      // Otherwise the row is redundant; its artificial stays basic at zero.
    }
  }

  // Re-solves B y_B = b on the original data to shed accumulated drift.
  Vector recoverStructural() const {
    const Index m = rows();
    Vector y = Vector::Zero(columns_);
    if (m == 0) return y.head(structural_);
    Matrix full = Matrix::Zero(m, columns_);
    full.leftCols(structural_) = sf_.a;
    Index s = structural_;
    Index a = first_artificial_;
    for (Index i = 0; i < m; ++i) {
      switch (sf_.relations[static_cast<size_t>(i)]) {
        case Relation::kLessEqual: full(i, s++) = 1.0; break;
        case Relation::kGreaterEqual:
          full(i, s++) = -1.0;
          full(i, a++) = 1.0;
          break;
        case Relation::kEqual: full(i, a++) = 1.0; break;
      }
    }
    Matrix basis(m, m);
    for (Index i = 0; i < m; ++i) basis.col(i) = full.col(basis_[static_cast<size_t>(i)]);
    Eigen::PartialPivLU<Matrix> lu(basis);
    Vector yb = lu.solve(sf_.b);
    bool usable = allFinite(yb) && (basis * yb - sf_.b).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + sf_.b.cwiseAbs().maxCoeff());
    for (Index i = 0; i < m; ++i) {
      double v = usable ? yb(i) : t_(i, columns_);
      y(basis_[static_cast<size_t>(i)]) = std::max(0.0, v);
    }
    return y.head(structural_);
  }

  const StandardForm& sf_;
  SimplexOptions options_;
  Tableau t_;
  std::vector<Index> basis_;
  Index structural_ = 0;
  Index first_artificial_ = 0;
  Index columns_ = 0;
  int iterations_ = 0;
  int iteration_limit_ = 0;
};

void verify(const LinearProgram& lp, const Vector& x, double tol) {
  for (Index j = 0; j < lp.variables(); ++j) {
    const Bound& b = lp.bounds()[static_cast<size_t>(j)];
    double slack = tol * std::max(1.0, std::abs(x(j)));
    if (x(j) < b.lower - slack || x(j) > b.upper + slack) {
      fail(ErrorKind::kNumerical, "solution violates the bound on " + lp.names()[static_cast<size_t>(j)]);
    }
  }
  for (size_t i = 0; i < lp.constraints().size(); ++i) {
    const Constraint& c = lp.constraints()[i];
    double lhs = c.coefficients.dot(x);
    double scale = std::max({1.0, std::abs(c.rhs), c.coefficients.cwiseProduct(x).cwiseAbs().maxCoeff()});
    double slack = tol * scale;
    bool ok = true;
    switch (c.relation) {
      case Relation::kLessEqual: ok = lhs <= c.rhs + slack; break;
      case Relation::kGreaterEqual: ok = lhs >= c.rhs - slack; break;
      case Relation::kEqual: ok = std::abs(lhs - c.rhs) <= slack; break;
    }
    if (!ok) fail(ErrorKind::kNumerical, "solution violates constraint " + std::to_string(i));
  }
}

}  // namespace

Solution solve(const LinearProgram& lp, const SimplexOptions& options) {
  StandardForm sf = standardize(lp);
  Simplex simplex(sf, options);
  Solution sol = simplex.run();
  if (sol.status != Status::kOptimal) return sol;

  Vector x(lp.variables());
  for (Index j = 0; j < lp.variables(); ++j) {
    const VariableMap& vm = sf.map[static_cast<size_t>(j)];
    x(j) = vm.offset + vm.sign * sol.x(vm.column);
    if (vm.negative_column >= 0) x(j) -= sol.x(vm.negative_column);
  }
  verify(lp, x, options.feasibility_tolerance);
  sol.value = lp.objective().dot(x);
  sol.x = std::move(x);
  return sol;
}

}  // namespace rezmet::lp
