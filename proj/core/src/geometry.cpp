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

#include "rezmet/geometry.hpp"

#include <string>

#include "rezmet/errors.hpp"

namespace rezmet {

Matrix matrixPower(const Matrix& a, int k) {
  if (a.rows() != a.cols()) fail(ErrorKind::kDimension, "matrixPower: matrix not square");
  if (k < 0) fail(ErrorKind::kDimension, "matrixPower: negative exponent");
  Matrix result = Matrix::Identity(a.rows(), a.cols());
  Matrix base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

double spectralNorm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

bool allFinite(const Matrix& a) { return a.allFinite(); }
bool allFinite(const Vector& v) { return v.allFinite(); }

Vector toVector(const std::vector<double>& values) {
  Vector v(static_cast<Index>(values.size()));
  for (size_t i = 0; i < values.size(); ++i) v(static_cast<Index>(i)) = values[i];
  return v;
}

std::vector<double> toStdVector(const Vector& v) { return {v.data(), v.data() + v.size()}; }

Polytope::Polytope(Matrix g, Vector h) : g_(std::move(g)), h_(std::move(h)) {
  if (g_.rows() < 1 || g_.cols() < 1) {
    fail(ErrorKind::kDimension, "polytope needs at least one facet and one dimension");
  }
  if (g_.rows() != h_.size()) {
    fail(ErrorKind::kDimension, "polytope G has " + std::to_string(g_.rows()) + " rows but H has " +
                                    std::to_string(h_.size()) + " entries");
  }
  if (!g_.allFinite() || !h_.allFinite()) fail(ErrorKind::kNumerical, "polytope has non-finite entries");
}

Polytope Polytope::fromBox(const IntervalBox& box) {
  const Index n = box.dimension();
  Matrix g(2 * n, n);
  g << Matrix::Identity(n, n), -Matrix::Identity(n, n);
  Vector h(2 * n);
  h << box.upper(), -box.lower();
  return Polytope(std::move(g), std::move(h));
}

bool Polytope::contains(const Vector& x, double tol) const {
  if (x.size() != dimension()) {
    fail(ErrorKind::kDimension, "state of dimension " + std::to_string(x.size()) +
                                    " tested against polytope of dimension " + std::to_string(dimension()));
  }
  return ((g_ * x - h_).array() <= tol).all();
}

double Polytope::maxViolation(const Vector& x) const {
  if (x.size() != dimension()) fail(ErrorKind::kDimension, "maxViolation: dimension mismatch");
  return (g_ * x - h_).maxCoeff();
}

IntervalBox::IntervalBox(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.size() < 1) {
    fail(ErrorKind::kDimension, "interval box bounds disagree in length");
  }
  if (!lower_.allFinite() || !upper_.allFinite()) fail(ErrorKind::kNumerical, "interval box has non-finite bounds");
  if ((lower_.array() > upper_.array()).any()) fail(ErrorKind::kDomain, "interval box has lower > upper");
}

IntervalBox IntervalBox::uniform(Index n, double lo, double hi) {
  return IntervalBox(Vector::Constant(n, lo), Vector::Constant(n, hi));
}

bool IntervalBox::contains(const Vector& x, double tol) const {
  if (x.size() != dimension()) fail(ErrorKind::kDimension, "box membership: dimension mismatch");
  return ((x - lower_).array() >= -tol).all() && ((upper_ - x).array() >= -tol).all();
}

std::vector<Vector> IntervalBox::vertices() const {
  const Index n = dimension();
  if (n > 24) fail(ErrorKind::kUnsupported, "refusing to enumerate 2^" + std::to_string(n) + " box vertices");
  const size_t count = size_t{1} << n;
  std::vector<Vector> out;
  out.reserve(count);
  for (size_t mask = 0; mask < count; ++mask) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = (mask >> i) & 1U ? upper_(i) : lower_(i);
    out.push_back(std::move(v));
  }
  return out;
}

ConvexHullSet::ConvexHullSet(std::vector<Vector> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) fail(ErrorKind::kDimension, "convex hull needs at least one vertex");
  for (const auto& v : vertices_) {
    if (v.size() != vertices_.front().size()) fail(ErrorKind::kDimension, "hull vertices differ in dimension");
  }
}

Vector ConvexHullSet::combination(const Vector& weights) const {
  if (weights.size() != static_cast<Index>(vertices_.size())) {
    fail(ErrorKind::kDimension, "hull combination: weight count mismatch");
  }
  double total = weights.sum();
  Vector x = Vector::Zero(dimension());
  for (size_t i = 0; i < vertices_.size(); ++i) x += (weights(static_cast<Index>(i)) / total) * vertices_[i];
  return x;
}

}  // namespace rezmet
