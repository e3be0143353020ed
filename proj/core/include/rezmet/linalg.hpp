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

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace rezmet {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A^k for k >= 0 by repeated squaring.
Matrix matrixPower(const Matrix& a, int k);

/// Largest singular value.
double spectralNorm(const Matrix& a);

/// True when every entry is finite.
bool allFinite(const Matrix& a);
bool allFinite(const Vector& v);

Vector toVector(const std::vector<double>& values);
std::vector<double> toStdVector(const Vector& v);

}  // namespace rezmet
