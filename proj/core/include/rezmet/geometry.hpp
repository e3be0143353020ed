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

#include <vector>

#include "rezmet/linalg.hpp"

namespace rezmet {

class IntervalBox;

/// Halfspace polytope {x | G x <= H}.
class Polytope {
 public:
  Polytope(Matrix g, Vector h);

  static Polytope fromBox(const IntervalBox& box);

  const Matrix& G() const { return g_; }
  const Vector& H() const { return h_; }
  Index facets() const { return g_.rows(); }
  Index dimension() const { return g_.cols(); }

  /// Closed membership: G x <= H + tol componentwise.
  bool contains(const Vector& x, double tol = 0.0) const;

  /// max_i (G_i x - H_i); non-positive iff x is inside.
  double maxViolation(const Vector& x) const;

 private:
  Matrix g_;
  Vector h_;
};

/// Axis-aligned box [lower, upper].
class IntervalBox {
 public:
  IntervalBox(Vector lower, Vector upper);

  /// [lo, hi]^n.
  static IntervalBox uniform(Index n, double lo, double hi);

  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  Index dimension() const { return lower_.size(); }

  bool contains(const Vector& x, double tol = 0.0) const;
  Vector center() const { return 0.5 * (lower_ + upper_); }
  bool hasNegativeCoordinates() const { return (lower_.array() < 0.0).any(); }

  /// All 2^n corners in binary counting order (bit i selects upper in coord i).
  std::vector<Vector> vertices() const;

  Polytope toPolytope() const { return Polytope::fromBox(*this); }

 private:
  Vector lower_;
  Vector upper_;
};

/// conv(c_1, ..., c_p).
class ConvexHullSet {
 public:
  explicit ConvexHullSet(std::vector<Vector> vertices);

  static ConvexHullSet fromBox(const IntervalBox& box) { return ConvexHullSet(box.vertices()); }

  const std::vector<Vector>& vertices() const { return vertices_; }
  Index dimension() const { return vertices_.front().size(); }

  /// sum_i weights_i c_i with the weights normalized to sum to one.
  Vector combination(const Vector& weights) const;

 private:
  std::vector<Vector> vertices_;
};

}  // namespace rezmet
