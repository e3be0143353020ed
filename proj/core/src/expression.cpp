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

#include "rezmet/expression.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "rezmet/errors.hpp"

namespace rezmet::expr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Interval hull(std::initializer_list<double> values) {
  auto [lo, hi] = std::minmax(values);
  return {lo, hi};
}

Interval monotone(Interval a, double (*f)(double)) { return {f(a.lo), f(a.hi)}; }

// Range of sin over [lo, hi]; cos is handled by a phase shift.
Interval sinRange(Interval a) {
  if (a.width() >= 2.0 * std::numbers::pi) return {-1.0, 1.0};
  double lo = std::min(std::sin(a.lo), std::sin(a.hi));
  double hi = std::max(std::sin(a.lo), std::sin(a.hi));
  // Peaks at pi/2 + 2k pi, troughs at -pi/2 + 2k pi.
  const double two_pi = 2.0 * std::numbers::pi;
  double k = std::ceil((a.lo - std::numbers::pi / 2.0) / two_pi);
  if (std::numbers::pi / 2.0 + k * two_pi <= a.hi) hi = 1.0;
  k = std::ceil((a.lo + std::numbers::pi / 2.0) / two_pi);
  if (-std::numbers::pi / 2.0 + k * two_pi <= a.hi) lo = -1.0;
  return {lo, hi};
}

Interval powRange(Interval a, int k) {
  if (k == 0) return Interval::point(1.0);
  if (k < 0) return Interval::point(1.0) / powRange(a, -k);
  double plo = std::pow(a.lo, k);
  double phi = std::pow(a.hi, k);
  if (k % 2 == 1) return {plo, phi};
  if (a.lo <= 0.0 && a.hi >= 0.0) return {0.0, std::max(plo, phi)};
  return hull({plo, phi});
}

}  // namespace

Interval operator+(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(Interval a, Interval b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval operator-(Interval a) { return {-a.hi, -a.lo}; }
Interval operator*(Interval a, Interval b) {
  return hull({a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi});
}
Interval operator/(Interval a, Interval b) {
  if (b.lo <= 0.0 && b.hi >= 0.0) return {-kInf, kInf};
  return a * Interval{1.0 / b.hi, 1.0 / b.lo};
}

struct Expression::Node {
  Op op = Op::kConstant;
  double value = 0.0;  // constant value, or exponent for kPow
  int var = -1;
  std::vector<Expression> args;
};

Expression::Expression() : Expression(constant(0.0)) {}

Expression::Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expression Expression::make(Op op, double value, int var, std::vector<Expression> args) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->value = value;
  node->var = var;
  node->args = std::move(args);
  return Expression(std::move(node));
}

Expression Expression::constant(double value) { return make(Op::kConstant, value, -1, {}); }

Expression Expression::variable(int index) {
  if (index < 0) fail(ErrorKind::kParse, "negative variable index");
  return make(Op::kVariable, 0.0, index, {});
}

bool Expression::isConstant() const { return node_->op == Op::kConstant; }
Op Expression::op() const { return node_->op; }
double Expression::constantValue() const { return node_->value; }

int Expression::maxVariable() const {
  if (node_->op == Op::kVariable) return node_->var;
  int best = -1;
  for (const auto& a : node_->args) best = std::max(best, a.maxVariable());
  return best;
}

Expression operator+(const Expression& a, const Expression& b) {
  if (a.isConstant() && b.isConstant()) return Expression::constant(a.constantValue() + b.constantValue());
  if (a.isConstant() && a.constantValue() == 0.0) return b;
  if (b.isConstant() && b.constantValue() == 0.0) return a;
  return Expression::make(Op::kAdd, 0.0, -1, {a, b});
}

Expression operator-(const Expression& a, const Expression& b) {
  if (a.isConstant() && b.isConstant()) return Expression::constant(a.constantValue() - b.constantValue());
  if (b.isConstant() && b.constantValue() == 0.0) return a;
  if (a.isConstant() && a.constantValue() == 0.0) return -b;
  return Expression::make(Op::kSub, 0.0, -1, {a, b});
}

Expression operator*(const Expression& a, const Expression& b) {
  if (a.isConstant() && b.isConstant()) return Expression::constant(a.constantValue() * b.constantValue());
  if ((a.isConstant() && a.constantValue() == 0.0) || (b.isConstant() && b.constantValue() == 0.0)) {
    return Expression::constant(0.0);
  }
  if (a.isConstant() && a.constantValue() == 1.0) return b;
  if (b.isConstant() && b.constantValue() == 1.0) return a;
  return Expression::make(Op::kMul, 0.0, -1, {a, b});
}

Expression operator/(const Expression& a, const Expression& b) {
  if (a.isConstant() && b.isConstant() && b.constantValue() != 0.0) {
    return Expression::constant(a.constantValue() / b.constantValue());
  }
  if (a.isConstant() && a.constantValue() == 0.0) return Expression::constant(0.0);
  if (b.isConstant() && b.constantValue() == 1.0) return a;
  return Expression::make(Op::kDiv, 0.0, -1, {a, b});
}

Expression operator-(const Expression& a) {
  if (a.isConstant()) return Expression::constant(-a.constantValue());
  if (a.op() == Op::kNeg) return a.node_->args[0];
  return Expression::make(Op::kNeg, 0.0, -1, {a});
}

Expression pow(const Expression& base, int exponent) {
  if (exponent == 0) return Expression::constant(1.0);
  if (exponent == 1) return base;
  if (base.isConstant()) return Expression::constant(std::pow(base.constantValue(), exponent));
  return Expression::make(Op::kPow, static_cast<double>(exponent), -1, {base});
}

Expression apply(Op function, const Expression& arg) {
  switch (function) {
    case Op::kSin:
    case Op::kCos:
    case Op::kExp:
    case Op::kLog:
    case Op::kSqrt:
    case Op::kTanh:
      break;
    default:
      fail(ErrorKind::kParse, "apply() expects a unary function");
  }
  Expression e = Expression::make(function, 0.0, -1, {arg});
  if (arg.isConstant()) {
    double v = e.evaluate(std::span<const double>{});
    return Expression::constant(v);
  }
  return e;
}

double Expression::evaluate(std::span<const double> values) const {
  const Node& n = *node_;
  auto arg = [&](int i) { return n.args[static_cast<size_t>(i)].evaluate(values); };
  switch (n.op) {
    case Op::kConstant: return n.value;
    case Op::kVariable:
      if (static_cast<size_t>(n.var) >= values.size()) {
        fail(ErrorKind::kDimension, "expression references variable " + std::to_string(n.var) +
                                        " but only " + std::to_string(values.size()) + " supplied");
      }
      return values[static_cast<size_t>(n.var)];
    case Op::kAdd: return arg(0) + arg(1);
    case Op::kSub: return arg(0) - arg(1);
    case Op::kMul: return arg(0) * arg(1);
    case Op::kDiv: return arg(0) / arg(1);
    case Op::kNeg: return -arg(0);
    case Op::kPow: return std::pow(arg(0), static_cast<int>(n.value));
    case Op::kSin: return std::sin(arg(0));
    case Op::kCos: return std::cos(arg(0));
    case Op::kExp: return std::exp(arg(0));
    case Op::kLog: return std::log(arg(0));
    case Op::kSqrt: return std::sqrt(arg(0));
    case Op::kTanh: return std::tanh(arg(0));
  }
  return 0.0;
}

Interval Expression::evaluate(std::span<const Interval> box) const {
  const Node& n = *node_;
  auto arg = [&](int i) { return n.args[static_cast<size_t>(i)].evaluate(box); };
  switch (n.op) {
    case Op::kConstant: return Interval::point(n.value);
    case Op::kVariable:
      if (static_cast<size_t>(n.var) >= box.size()) {
        fail(ErrorKind::kDimension, "interval box too small for expression");
      }
      return box[static_cast<size_t>(n.var)];
    case Op::kAdd: return arg(0) + arg(1);
    case Op::kSub: return arg(0) - arg(1);
    case Op::kMul: {
      // x*x style squares are tighter through kPow; keep the generic product.
      return arg(0) * arg(1);
    }
    case Op::kDiv: return arg(0) / arg(1);
    case Op::kNeg: return -arg(0);
    case Op::kPow: return powRange(arg(0), static_cast<int>(n.value));
    case Op::kSin: return sinRange(arg(0));
    case Op::kCos: {
      Interval a = arg(0);
      return sinRange({a.lo + std::numbers::pi / 2.0, a.hi + std::numbers::pi / 2.0});
    }
    case Op::kExp: return monotone(arg(0), [](double v) { return std::exp(v); });
    case Op::kLog: {
      Interval a = arg(0);
      if (a.lo <= 0.0) fail(ErrorKind::kDomain, "log argument range includes non-positive values");
      return monotone(a, [](double v) { return std::log(v); });
    }
    case Op::kSqrt: {
      Interval a = arg(0);
      if (a.lo < 0.0) fail(ErrorKind::kDomain, "sqrt argument range includes negative values");
      return monotone(a, [](double v) { return std::sqrt(v); });
    }
    case Op::kTanh: return monotone(arg(0), [](double v) { return std::tanh(v); });
  }
  return {};
}

Expression Expression::derivative(int variable) const {
  const Node& n = *node_;
  auto a = [&](int i) -> const Expression& { return n.args[static_cast<size_t>(i)]; };
  auto da = [&](int i) { return a(i).derivative(variable); };
  switch (n.op) {
    case Op::kConstant: return constant(0.0);
    case Op::kVariable: return constant(n.var == variable ? 1.0 : 0.0);
    case Op::kAdd: return da(0) + da(1);
    case Op::kSub: return da(0) - da(1);
    case Op::kMul: return da(0) * a(1) + a(0) * da(1);
    case Op::kDiv: return (da(0) * a(1) - a(0) * da(1)) / pow(a(1), 2);
    case Op::kNeg: return -da(0);
    case Op::kPow: {
      int k = static_cast<int>(n.value);
      return constant(static_cast<double>(k)) * pow(a(0), k - 1) * da(0);
    }
    case Op::kSin: return apply(Op::kCos, a(0)) * da(0);
    case Op::kCos: return -(apply(Op::kSin, a(0)) * da(0));
    case Op::kExp: return *this * da(0);
    case Op::kLog: return da(0) / a(0);
    case Op::kSqrt: return da(0) / (constant(2.0) * *this);
    case Op::kTanh: return (constant(1.0) - pow(*this, 2)) * da(0);
  }
  return constant(0.0);
}

namespace {

std::string_view functionName(Op op) {
  switch (op) {
    case Op::kSin: return "sin";
    case Op::kCos: return "cos";
    case Op::kExp: return "exp";
    case Op::kLog: return "log";
    case Op::kSqrt: return "sqrt";
    case Op::kTanh: return "tanh";
    default: return "";
  }
}

std::string plainNumber(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string smtNumber(double value) {
  if (!std::isfinite(value)) fail(ErrorKind::kNumerical, "non-finite constant in SMT output");
  if (value < 0.0) return "(- " + smtNumber(-value) + ")";
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
  std::string s(buf, res.ptr);
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

std::string Expression::toString(const std::vector<std::string>& variables) const {
  const Node& n = *node_;
  auto a = [&](int i) { return n.args[static_cast<size_t>(i)].toString(variables); };
  switch (n.op) {
    case Op::kConstant: return n.value < 0 ? "(" + plainNumber(n.value) + ")" : plainNumber(n.value);
    case Op::kVariable:
      return static_cast<size_t>(n.var) < variables.size() ? variables[static_cast<size_t>(n.var)]
                                                           : "x" + std::to_string(n.var + 1);
    case Op::kAdd: return "(" + a(0) + " + " + a(1) + ")";
    case Op::kSub: return "(" + a(0) + " - " + a(1) + ")";
    case Op::kMul: return "(" + a(0) + " * " + a(1) + ")";
    case Op::kDiv: return "(" + a(0) + " / " + a(1) + ")";
    case Op::kNeg: return "(-" + a(0) + ")";
    case Op::kPow: return "(" + a(0) + "^" + std::to_string(static_cast<int>(n.value)) + ")";
    default: return std::string(functionName(n.op)) + "(" + a(0) + ")";
  }
}

std::string Expression::toSmtLib(const std::vector<std::string>& variables) const {
  const Node& n = *node_;
  auto a = [&](int i) { return n.args[static_cast<size_t>(i)].toSmtLib(variables); };
  switch (n.op) {
    case Op::kConstant: return smtNumber(n.value);
    case Op::kVariable:
      if (static_cast<size_t>(n.var) >= variables.size()) {
        fail(ErrorKind::kDimension, "SMT rendering: missing name for variable " + std::to_string(n.var));
      }
      return variables[static_cast<size_t>(n.var)];
    case Op::kAdd: return "(+ " + a(0) + " " + a(1) + ")";
    case Op::kSub: return "(- " + a(0) + " " + a(1) + ")";
    case Op::kMul: return "(* " + a(0) + " " + a(1) + ")";
    case Op::kDiv: return "(/ " + a(0) + " " + a(1) + ")";
    case Op::kNeg: return "(- " + a(0) + ")";
    case Op::kPow: {
      int k = static_cast<int>(n.value);
      std::string base = a(0);
      int m = std::abs(k);
      std::string prod = "(*";
      for (int i = 0; i < m; ++i) prod += " " + base;
      prod += ")";
      return k < 0 ? "(/ 1.0 " + prod + ")" : prod;
    }
    default: return "(" + std::string(functionName(n.op)) + " " + a(0) + ")";
  }
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& variables,
         const std::map<std::string, double>& parameters)
      : text_(text), variables_(variables), parameters_(parameters) {}

  Expression parse() {
    Expression e = parseSum();
    skipSpace();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::kParse, "expression '" + std::string(text_) + "' at offset " +
                                std::to_string(pos_) + ": " + what);
  }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expression parseSum() {
    Expression lhs = parseProduct();
    for (;;) {
      if (consume('+')) {
        lhs = lhs + parseProduct();
      } else if (consume('-')) {
        lhs = lhs - parseProduct();
      } else {
        return lhs;
      }
    }
  }

  Expression parseProduct() {
    Expression lhs = parseUnary();
    for (;;) {
      if (consume('*')) {
        lhs = lhs * parseUnary();
      } else if (consume('/')) {
        lhs = lhs / parseUnary();
      } else {
        return lhs;
      }
    }
  }

  Expression parseUnary() {
    if (consume('-')) return -parseUnary();
    if (consume('+')) return parseUnary();
    return parsePower();
  }

  Expression parsePower() {
    Expression base = parsePrimary();
    if (consume('^')) {
      Expression exponent = parseUnary();
      if (!exponent.isConstant()) error("exponent must be a constant");
      double k = exponent.constantValue();
      if (k != std::round(k) || std::abs(k) > 64) error("exponent must be a small integer");
      return pow(base, static_cast<int>(k));
    }
    return base;
  }

  Expression parsePrimary() {
    skipSpace();
    if (pos_ >= text_.size()) error("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expression e = parseSum();
      if (!consume(')')) error("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
      if (res.ec != std::errc()) error("malformed number");
      pos_ = static_cast<size_t>(res.ptr - text_.data());
      return Expression::constant(value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      skipSpace();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        static const std::map<std::string, Op> kFunctions = {
            {"sin", Op::kSin}, {"cos", Op::kCos},   {"exp", Op::kExp},
            {"log", Op::kLog}, {"sqrt", Op::kSqrt}, {"tanh", Op::kTanh}};
        auto it = kFunctions.find(name);
        if (it == kFunctions.end()) error("unknown function '" + name + "'");
        ++pos_;
        Expression arg = parseSum();
        if (!consume(')')) error("expected ')' after function argument");
        return apply(it->second, arg);
      }
      for (size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i] == name) return Expression::variable(static_cast<int>(i));
      }
      if (auto it = parameters_.find(name); it != parameters_.end()) {
        return Expression::constant(it->second);
      }
      if (name == "pi") return Expression::constant(std::numbers::pi);
      error("unknown identifier '" + name + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& variables_;
  const std::map<std::string, double>& parameters_;
  size_t pos_ = 0;
};

Expression Expression::parse(std::string_view text, const std::vector<std::string>& variables,
                             const std::map<std::string, double>& parameters) {
  return Parser(text, variables, parameters).parse();
}

}  // namespace rezmet::expr
