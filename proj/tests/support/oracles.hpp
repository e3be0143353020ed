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

// Test-side reference computations, written directly from the definitions
// and independent of the library's LP and Farkas code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace rezmet::testing {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline Mat power(const Mat& a, int k) {
  Mat p = Mat::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) p = p * a;
  return p;
}

/// Worst case over |d_k|_inf <= eps of G x_N <= H for x+ = A x + W d:
/// the largest eps with G A^N x0 + eps * sum_j |G A^{N-1-j} W| 1 <= H.
inline double exactReachByRows(const Mat& a, const Mat& w, const Mat& g, const Vec& h, const Vec& x0, int n) {
  Vec nominal = g * power(a, n) * x0;
  Vec spread = Vec::Zero(g.rows());
  for (int j = 0; j < n; ++j) spread += (g * power(a, n - 1 - j) * w).cwiseAbs().rowwise().sum();
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    double slack = h(i) - nominal(i);
    if (slack < 0) return 0.0;
    if (spread(i) > 0) best = std::min(best, slack / spread(i));
  }
  return best;
}

/// Same quantity by enumerating every sign pattern of the disturbance
/// sequence (2^{m N} patterns) and bisecting on eps.
inline double exactReachByVertices(const Mat& a, const Mat& w, const Mat& g, const Vec& h, const Vec& x0, int n,
                                   double hi = 100.0) {
  const Eigen::Index m = w.cols();
  const int bits = static_cast<int>(m) * n;
  auto worst = [&](double eps) {
    double viol = -std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
      Vec x = x0;
      for (int k = 0; k < n; ++k) {
        Vec d(m);
        for (Eigen::Index j = 0; j < m; ++j) d(j) = ((mask >> (k * m + j)) & 1) ? eps : -eps;
        x = a * x + w * d;
      }
      viol = std::max(viol, (g * x - h).maxCoeff());
    }
    return viol;
  };
  if (worst(0.0) > 0) return 0.0;
  if (worst(hi) <= 0) return std::numeric_limits<double>::infinity();
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (worst(mid) <= 0 ? lo : hi) = mid;
  }
  return lo;
}

inline Mat randomMatrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Mat m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = u(rng);
  return m;
}

inline Vec randomVector(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

}  // namespace rezmet::testing
