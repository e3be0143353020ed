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

#include "rezmet/smt.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "rezmet/errors.hpp"
#include "sexpr.hpp"

namespace rezmet {

namespace {

using expr::smtNumber;

std::string stateName(int k, Index i) { return "x_" + std::to_string(k) + "_" + std::to_string(i); }
std::string inputName(int k, Index j) { return "d_" + std::to_string(k) + "_" + std::to_string(j); }

std::vector<std::string> stateNames(int k, Index n) {
  std::vector<std::string> v;
  for (Index i = 0; i < n; ++i) v.push_back(stateName(k, i));
  return v;
}

std::string nary(const std::string& op, const std::vector<std::string>& terms, const std::string& empty) {
  if (terms.empty()) return empty;
  if (terms.size() == 1) return terms.front();
  std::string s = "(" + op;
  for (const auto& t : terms) s += " " + t;
  return s + ")";
}

std::string linearTerm(const Eigen::Ref<const Vector>& coeffs, const std::vector<std::string>& vars) {
  std::vector<std::string> terms;
  for (Index j = 0; j < coeffs.size(); ++j) {
    double c = coeffs(j);
    if (c == 0.0) continue;
    terms.push_back(c == 1.0 ? vars[static_cast<size_t>(j)] : "(* " + smtNumber(c) + " " + vars[static_cast<size_t>(j)] + ")");
  }
  return nary("+", terms, "0.0");
}

std::string polytopeTerm(const Polytope& p, const std::vector<std::string>& vars) {
  std::vector<std::string> rows;
  for (Index i = 0; i < p.facets(); ++i) {
    rows.push_back("(<= " + linearTerm(p.G().row(i).transpose(), vars) + " " + smtNumber(p.H()(i)) + ")");
  }
  return nary("and", rows, "true");
}

std::string regionTerm(const ltlf::Region& region, const std::vector<std::string>& vars) {
  return std::visit(
      [&](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polytope>) {
          return polytopeTerm(s, vars);
        } else if constexpr (std::is_same_v<T, ltlf::PolytopeUnion>) {
          std::vector<std::string> parts;
          for (const auto& p : s.members) parts.push_back(polytopeTerm(p, vars));
          return nary("or", parts, "false");
        } else {
          std::string acc = "(<= " + s.functions[0].toSmtLib(vars) + " 0.0)";
          for (size_t i = 1; i < s.functions.size(); ++i) {
            std::string next = "(<= " + s.functions[i].toSmtLib(vars) + " 0.0)";
            acc = (s.connectives[i - 1] == ltlf::Connective::kAnd ? "(and " : "(or ") + acc + " " + next + ")";
          }
          return acc;
        }
      },
      region.shape());
}

class Encoder {
 public:
  Encoder(Index n, int horizon, const ltlf::EvalOptions& eval) : n_(n), last_(horizon), eval_(eval) {}

  std::string encode(const ltlf::Formula& f, int i) const {
    using ltlf::NodeKind;
    switch (f.kind()) {
      case NodeKind::kTrue: return "true";
      case NodeKind::kFalse: return "false";
      case NodeKind::kAtom: return regionTerm(f.predicate().region, stateNames(i, n_));
      case NodeKind::kNot: return "(not " + encode(f.child(0), i) + ")";
      case NodeKind::kAnd: return "(and " + encode(f.child(0), i) + " " + encode(f.child(1), i) + ")";
      case NodeKind::kOr: return "(or " + encode(f.child(0), i) + " " + encode(f.child(1), i) + ")";
      case NodeKind::kNext: {
        int j = i + *f.bound();
        return j <= last_ ? encode(f.child(0), j) : "false";
      }
      case NodeKind::kAlways: {
        int end = f.bound() ? std::min(last_, i + *f.bound()) : last_;
        std::vector<std::string> parts;
        for (int m = i; m <= end; ++m) parts.push_back(encode(f.child(0), m));
        return nary("and", parts, "true");
      }
      case NodeKind::kEventually: {
        int end = last_;  // inclusive
        if (f.bound()) {
          int k = *f.bound();
          end = std::min(last_, eval_.eventually == ltlf::EventuallyWindow::kAsWritten ? i + k - 1 : i + k);
        }
        std::vector<std::string> parts;
        for (int m = i; m <= end; ++m) parts.push_back(encode(f.child(0), m));
        return nary("or", parts, "false");
      }
      case NodeKind::kUntil: {
        std::vector<std::string> options;
        for (int m = i; m <= last_; ++m) {
          std::vector<std::string> conj{encode(f.child(1), m)};
          for (int l = i; l < m; ++l) conj.push_back(encode(f.child(0), l));
          options.push_back(nary("and", conj, "true"));
        }
        return nary("or", options, "false");
      }
    }
    return "false";
  }

 private:
  Index n_;
  int last_;
  ltlf::EvalOptions eval_;
};

}  // namespace

std::string emitSmtQuery(const FalsificationQuery& q) {
  if (!q.model) fail(ErrorKind::kDomain, "SMT query needs a model");
  if (!(q.epsilon >= 0.0) || !std::isfinite(q.epsilon)) fail(ErrorKind::kDomain, "epsilon must be finite and >= 0");
  if (q.horizon < 0) fail(ErrorKind::kDimension, "horizon must be non-negative");
  const Model& model = *q.model;
  const Index n = stateDimension(model);
  const Index m = inputDimension(model);
  if (q.x0.size() != n) fail(ErrorKind::kDimension, "initial state dimension mismatch in SMT query");
  if (auto need = ltlf::requiredHorizon(q.formula, q.eval); need && *need > q.horizon) {
    fail(ErrorKind::kDimension, "horizon is shorter than the formula depth");
  }

  std::ostringstream out;
  out << "; falsification query: eps = " << smtNumber(q.epsilon) << ", horizon = " << q.horizon << "\n";
  out << "(set-logic QF_NRA)\n(set-option :produce-models true)\n";
  for (int k = 0; k <= q.horizon; ++k) {
    for (Index i = 0; i < n; ++i) out << "(declare-fun " << stateName(k, i) << " () Real)\n";
  }
  for (int k = 0; k < q.horizon; ++k) {
    for (Index j = 0; j < m; ++j) out << "(declare-fun " << inputName(k, j) << " () Real)\n";
  }
  for (int k = 0; k < q.horizon; ++k) {
    for (Index j = 0; j < m; ++j) {
      if (q.epsilon == 0.0) {
        out << "(assert (= " << inputName(k, j) << " 0.0))\n";
      } else {
        out << "(assert (<= " << smtNumber(-q.epsilon) << " " << inputName(k, j) << "))\n";
        out << "(assert (<= " << inputName(k, j) << " " << smtNumber(q.epsilon) << "))\n";
      }
    }
  }
  for (Index i = 0; i < n; ++i) out << "(assert (= " << stateName(0, i) << " " << smtNumber(q.x0(i)) << "))\n";

  const Matrix* w = nullptr;
  if (const auto* lin = std::get_if<LinearSystem>(&model)) {
    w = &lin->W();
  } else {
    w = &std::get<NonlinearModel>(model).W();
  }
  for (int k = 0; k < q.horizon; ++k) {
    std::vector<std::string> xs = stateNames(k, n);
    std::vector<std::string> ds;
    for (Index j = 0; j < m; ++j) ds.push_back(inputName(k, j));
    for (Index i = 0; i < n; ++i) {
      std::string drift;
      if (const auto* lin = std::get_if<LinearSystem>(&model)) {
        drift = linearTerm(lin->A().row(i).transpose(), xs);
      } else {
        drift = std::get<NonlinearModel>(model).dynamics()[static_cast<size_t>(i)].toSmtLib(xs);
      }
      std::string input = linearTerm(w->row(i).transpose(), ds);
      std::string rhs = input == "0.0" ? drift : "(+ " + drift + " " + input + ")";
      out << "(assert (= " << stateName(k + 1, i) << " " << rhs << "))\n";
    }
  }
  Encoder enc(n, q.horizon, q.eval);
  out << "(assert (not " << enc.encode(q.formula, 0) << "))\n";
  out << "(check-sat)\n(get-model)\n(exit)\n";
  return out.str();
}

namespace {

bool isNumeral(const std::string& s) {
  if (s.empty()) return false;
  size_t dots = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '.') {
      if (++dots > 1 || i == 0 || i + 1 == s.size()) return false;
    } else if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      return false;
    }
  }
  return !(s.size() > 1 && s[0] == '0' && s[1] != '.');
}

bool isSymbol(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  if (s.front() == '|') return s.size() >= 2 && s.back() == '|';
  static const std::string extra = "~!@$%^&*_-+=<>.?/";
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || extra.find(c) != std::string::npos;
  });
}

class SyntaxChecker {
 public:
  std::vector<std::string> run(std::string_view script) {
    detail::SExprReadResult read = detail::readSExprs(script);
    if (!read.error.empty()) {
      diag(read.error + " at offset " + std::to_string(read.error_offset));
      return diags_;
    }
    for (const auto& form : read.forms) command(form);
    // Round trip: printing and re-reading reproduces the same forms.
    std::string printed;
    for (const auto& form : read.forms) printed += detail::printSExpr(form) + "\n";
    detail::SExprReadResult again = detail::readSExprs(printed);
    if (!again.error.empty() || again.forms.size() != read.forms.size()) {
      diag("script does not survive a print/read round trip");
    } else {
      for (size_t i = 0; i < read.forms.size(); ++i) {
        if (detail::printSExpr(again.forms[i]) != detail::printSExpr(read.forms[i])) {
          diag("form " + std::to_string(i) + " changes under a print/read round trip");
        }
      }
    }
    return diags_;
  }

 private:
  void diag(std::string s) { diags_.push_back(std::move(s)); }

  void command(const detail::SExpr& f) {
    if (!f.is_list || f.items.empty() || f.items[0].is_list) {
      diag("top-level form at offset " + std::to_string(f.offset) + " is not a command");
      return;
    }
    const std::string& head = f.items[0].atom;
    const size_t args = f.items.size() - 1;
    if (head == "set-logic") {
      if (args != 1 || f.items[1].is_list) diag("set-logic takes one symbol");
    } else if (head == "set-option" || head == "set-info") {
      if (args < 1 || f.items[1].is_list || f.items[1].atom.empty() || f.items[1].atom[0] != ':') {
        diag(head + " needs a keyword");
      }
    } else if (head == "declare-fun") {
      if (args != 3 || f.items[1].is_list || !f.items[2].is_list || f.items[3].is_list) {
        diag("malformed declare-fun at offset " + std::to_string(f.offset));
        return;
      }
      if (!f.items[2].items.empty()) diag("only nullary functions are supported: " + f.items[1].atom);
      declare(f.items[1].atom, f.items[3].atom);
    } else if (head == "declare-const") {
      if (args != 2 || f.items[1].is_list || f.items[2].is_list) {
        diag("malformed declare-const");
        return;
      }
      declare(f.items[1].atom, f.items[2].atom);
    } else if (head == "assert") {
      if (args != 1) {
        diag("assert takes one term");
        return;
      }
      if (term(f.items[1]) != Sort::kBool) diag("asserted term at offset " + std::to_string(f.offset) + " is not Bool");
    } else if (head == "check-sat" || head == "get-model" || head == "exit") {
      if (args != 0) diag(head + " takes no arguments");
    } else {
      diag("unknown command '" + head + "'");
    }
  }

  void declare(const std::string& name, const std::string& sort) {
    if (!isSymbol(name)) diag("invalid symbol '" + name + "'");
    if (sort != "Real" && sort != "Bool") diag("unsupported sort '" + sort + "'");
    if (!symbols_.emplace(name, sort == "Real" ? Sort::kReal : Sort::kBool).second) diag("redeclared '" + name + "'");
  }

  enum class Sort { kReal, kBool, kError };

  Sort term(const detail::SExpr& t) {
    if (!t.is_list) {
      if (t.atom == "true" || t.atom == "false") return Sort::kBool;
      if (isNumeral(t.atom)) return Sort::kReal;
      auto it = symbols_.find(t.atom);
      if (it == symbols_.end()) {
        diag("undeclared symbol '" + t.atom + "' at offset " + std::to_string(t.offset));
        return Sort::kError;
      }
      return it->second;
    }
    if (t.items.empty() || t.items[0].is_list) {
      diag("malformed application at offset " + std::to_string(t.offset));
      return Sort::kError;
    }
    const std::string& op = t.items[0].atom;
    std::vector<Sort> args;
    for (size_t i = 1; i < t.items.size(); ++i) args.push_back(term(t.items[i]));
    auto expect = [&](Sort s, size_t min_args, size_t max_args) {
      if (args.size() < min_args || args.size() > max_args) {
        diag("'" + op + "' applied to " + std::to_string(args.size()) + " arguments at offset " +
             std::to_string(t.offset));
      }
      for (Sort a : args) {
        if (a != s && a != Sort::kError) diag("argument sort mismatch for '" + op + "' at offset " + std::to_string(t.offset));
      }
    };
    constexpr size_t kMany = static_cast<size_t>(-1);
    if (op == "+" || op == "*") {
      expect(Sort::kReal, 2, kMany);
      return Sort::kReal;
    }
    if (op == "-") {
      expect(Sort::kReal, 1, kMany);
      return Sort::kReal;
    }
    if (op == "/") {
      expect(Sort::kReal, 2, kMany);
      return Sort::kReal;
    }
    if (op == "<=" || op == ">=" || op == "<" || op == ">") {
      expect(Sort::kReal, 2, kMany);
      return Sort::kBool;
    }
    if (op == "=") {
      if (args.size() < 2) diag("'=' needs two arguments");
      return Sort::kBool;
    }
    if (op == "and" || op == "or") {
      expect(Sort::kBool, 1, kMany);
      return Sort::kBool;
    }
    if (op == "not") {
      expect(Sort::kBool, 1, 1);
      return Sort::kBool;
    }
    if (op == "=>") {
      expect(Sort::kBool, 2, kMany);
      return Sort::kBool;
    }
    if (op == "sin" || op == "cos" || op == "exp" || op == "log" || op == "sqrt" || op == "tanh") {
      expect(Sort::kReal, 1, 1);
      return Sort::kReal;
    }
    diag("unknown operator '" + op + "' at offset " + std::to_string(t.offset));
    return Sort::kError;
  }

  std::map<std::string, Sort> symbols_;
  std::vector<std::string> diags_;
};

double parseValue(std::string_view text, size_t line) {
  std::string s(text);
  // Accept `v`, `(- v)` and dReal-style `[lo, hi]` (midpoint).
  auto number = [&](std::string t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    double v = 0.0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      fail(ErrorKind::kParse, "transcript line " + std::to_string(line) + ": bad number '" + t + "'");
    }
    return v;
  };
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
    size_t comma = s.find(',');
    if (comma == std::string::npos) fail(ErrorKind::kParse, "transcript line " + std::to_string(line) + ": bad interval");
    return 0.5 * (number(s.substr(1, comma - 1)) + number(s.substr(comma + 1, s.size() - comma - 2)));
  }
  if (s.size() >= 4 && s.rfind("(-", 0) == 0 && s.back() == ')') return -number(s.substr(2, s.size() - 3));
  return number(s);
}

}  // namespace

std::vector<std::string> checkSmtSyntax(std::string_view script) { return SyntaxChecker().run(script); }

std::string_view toString(SmtVerdict verdict) {
  switch (verdict) {
    case SmtVerdict::kSat: return "sat";
    case SmtVerdict::kUnsat: return "unsat";
    case SmtVerdict::kDeltaSat: return "delta-sat";
  }
  return "unknown";
}

SolverTranscript SolverTranscript::parse(std::string_view text) {
  SolverTranscript t;
  bool have_verdict = false;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == ';') {
      if (end == text.size()) break;
      continue;
    }
    line = line.substr(first);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (!have_verdict) {
      if (line == "sat") {
        t.verdict = SmtVerdict::kSat;
      } else if (line == "unsat") {
        t.verdict = SmtVerdict::kUnsat;
      } else if (line == "delta-sat") {
        t.verdict = SmtVerdict::kDeltaSat;
      } else {
        fail(ErrorKind::kParse, "transcript line " + std::to_string(line_no) + ": expected sat, unsat or delta-sat");
      }
      have_verdict = true;
    } else {
      size_t sep = line.find_first_of(" \t:");
      if (sep == std::string::npos) fail(ErrorKind::kParse, "transcript line " + std::to_string(line_no) + ": expected 'name value'");
      std::string name = line.substr(0, sep);
      size_t vstart = line.find_first_not_of(" \t:", sep);
      if (vstart == std::string::npos) fail(ErrorKind::kParse, "transcript line " + std::to_string(line_no) + ": missing value");
      t.values[name] = parseValue(std::string_view(line).substr(vstart), line_no);
    }
    if (end == text.size()) break;
  }
  if (!have_verdict) fail(ErrorKind::kParse, "transcript is empty");
  return t;
}

DisturbanceTrace SolverTranscript::disturbance(Index inputs, int horizon, double epsilon) const {
  DisturbanceTrace d;
  d.bound = epsilon;
  for (int k = 0; k < horizon; ++k) {
    Vector v(inputs);
    for (Index j = 0; j < inputs; ++j) {
      auto it = values.find(inputName(k, j));
      if (it == values.end()) fail(ErrorKind::kParse, "transcript lacks a value for " + inputName(k, j));
      v(j) = it->second;
    }
    d.steps.push_back(std::move(v));
  }
  return d;
}

}  // namespace rezmet
