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

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rezmet::expr {

/// Closed real interval used for range bounding of expressions.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double v) { return {v, v}; }
  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

Interval operator+(Interval a, Interval b);
Interval operator-(Interval a, Interval b);
Interval operator-(Interval a);
Interval operator*(Interval a, Interval b);
Interval operator/(Interval a, Interval b);

enum class Op {
  kConstant,
  kVariable,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kNeg,
  kPow,  // integer exponent only
  kSin,
  kCos,
  kExp,
  kLog,
  kSqrt,
  kTanh,
};

/// Immutable scalar expression over a fixed list of variables.
///
/// Expressions are built by `parse` from infix text such as
/// `h + tau*(v0 - v)`; parameters are folded to constants at parse time so
/// the tree only references variables by index.
class Expression {
 public:
  struct Node;

  Expression();

  static Expression constant(double value);
  static Expression variable(int index);

  /// Parses infix text. `variables` names the free variables in index order;
  /// `parameters` are substituted as constants.
  static Expression parse(std::string_view text,
                          const std::vector<std::string>& variables,
                          const std::map<std::string, double>& parameters = {});

  double evaluate(std::span<const double> values) const;
  Interval evaluate(std::span<const Interval> box) const;

  /// Symbolic partial derivative with light constant folding.
  Expression derivative(int variable) const;

  /// Infix rendering using the supplied variable names.
  std::string toString(const std::vector<std::string>& variables) const;

  /// SMT-LIB 2 term. Integer powers are expanded to products; negative
  /// literals are written as `(- c)`.
  std::string toSmtLib(const std::vector<std::string>& variables) const;

  bool isConstant() const;
  Op op() const;
  double constantValue() const;

  /// Largest variable index referenced, or -1.
  int maxVariable() const;

 private:
  explicit Expression(std::shared_ptr<const Node> node);
  static Expression make(Op op, double value, int var, std::vector<Expression> args);

  std::shared_ptr<const Node> node_;

  friend Expression operator+(const Expression&, const Expression&);
  friend Expression operator-(const Expression&, const Expression&);
  friend Expression operator*(const Expression&, const Expression&);
  friend Expression operator/(const Expression&, const Expression&);
  friend Expression operator-(const Expression&);
  friend Expression pow(const Expression&, int);
  friend Expression apply(Op, const Expression&);
  friend class Parser;
};

Expression operator+(const Expression& a, const Expression& b);
Expression operator-(const Expression& a, const Expression& b);
Expression operator*(const Expression& a, const Expression& b);
Expression operator/(const Expression& a, const Expression& b);
Expression operator-(const Expression& a);
Expression pow(const Expression& base, int exponent);
/// Unary function application (kSin, kCos, ...).
Expression apply(Op function, const Expression& arg);

/// Formats a double as an SMT-LIB decimal (no exponent, `(- x)` if negative).
std::string smtNumber(double value);

}  // namespace rezmet::expr
