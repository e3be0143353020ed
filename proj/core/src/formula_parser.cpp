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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "rezmet/errors.hpp"
#include "rezmet/ltlf.hpp"
#include "sexpr.hpp"

namespace rezmet::detail {

SExprReadResult readSExprs(std::string_view text) {
  SExprReadResult out;
  std::vector<SExpr> stack;
  size_t i = 0;
  auto push = [&](SExpr e) {
    if (stack.empty()) {
      out.forms.push_back(std::move(e));
    } else {
      stack.back().items.push_back(std::move(e));
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '(') {
      SExpr list;
      list.is_list = true;
      list.offset = i;
      stack.push_back(std::move(list));
      ++i;
    } else if (c == ')') {
      if (stack.empty()) {
        out.error = "unbalanced ')'";
        out.error_offset = i;
        return out;
      }
      SExpr done = std::move(stack.back());
      stack.pop_back();
      push(std::move(done));
      ++i;
    } else if (c == '|' || c == '"') {
      size_t start = i++;
      while (i < text.size() && text[i] != c) ++i;
      if (i >= text.size()) {
        out.error = "unterminated quoted token";
        out.error_offset = start;
        return out;
      }
      ++i;
      SExpr a;
      a.atom = std::string(text.substr(start, i - start));
      a.offset = start;
      push(std::move(a));
    } else {
      size_t start = i;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' &&
             text[i] != ')' && text[i] != ';') {
        ++i;
      }
      SExpr a;
      a.atom = std::string(text.substr(start, i - start));
      a.offset = start;
      push(std::move(a));
    }
  }
  if (!stack.empty()) {
    out.error = "unbalanced '('";
    out.error_offset = stack.back().offset;
  }
  return out;
}

std::string printSExpr(const SExpr& e) {
  if (!e.is_list) return e.atom;
  std::string s = "(";
  for (size_t i = 0; i < e.items.size(); ++i) {
    if (i) s += ' ';
    s += printSExpr(e.items[i]);
  }
  return s + ")";
}

}  // namespace rezmet::detail

namespace rezmet::ltlf {

namespace {

using detail::SExpr;

[[noreturn]] void parseError(const SExpr& where, const std::string& what) {
  fail(ErrorKind::kParse, "formula: " + what + " (offset " + std::to_string(where.offset) + ")");
}

std::optional<int> parseBound(const SExpr& e) {
  if (e.is_list) parseError(e, "expected a step bound");
  if (e.atom == "inf") return std::nullopt;
  int k = 0;
  auto res = std::from_chars(e.atom.data(), e.atom.data() + e.atom.size(), k);
  if (res.ec != std::errc() || res.ptr != e.atom.data() + e.atom.size() || k < 0) {
    parseError(e, "bound '" + e.atom + "' is not a non-negative integer");
  }
  return k;
}

Formula build(const SExpr& e, const RegionTable& regions) {
  if (!e.is_list) {
    if (e.atom == "true") return Formula::truth();
    if (e.atom == "false") return Formula::falsity();
    parseError(e, "unexpected token '" + e.atom + "'");
  }
  if (e.items.empty() || e.items[0].is_list) parseError(e, "expected an operator name");
  const std::string& op = e.items[0].atom;
  const size_t argc = e.items.size() - 1;
  auto expect = [&](size_t n) {
    if (argc != n) {
      parseError(e, "'" + op + "' takes " + std::to_string(n) + " argument(s), got " + std::to_string(argc));
    }
  };
  auto sub = [&](size_t i) { return build(e.items[i], regions); };

  if (op == "atom") {
    expect(1);
    const SExpr& name = e.items[1];
    if (name.is_list) parseError(name, "atom name must be a symbol");
    auto it = regions.find(name.atom);
    if (it == regions.end()) parseError(name, "unknown atom '" + name.atom + "'");
    return Formula::atom(it->second);
  }
  if (op == "not") {
    expect(1);
    return Formula::negation(sub(1));
  }
  if (op == "and" || op == "or") {
    if (argc < 2) parseError(e, "'" + op + "' takes at least 2 arguments");
    Formula acc = sub(1);
    for (size_t i = 2; i <= argc; ++i) {
      acc = op == "and" ? Formula::conjunction(acc, sub(i)) : Formula::disjunction(acc, sub(i));
    }
    return acc;
  }
  if (op == "implies") {
    expect(2);
    return Formula::implication(sub(1), sub(2));
  }
  if (op == "until") {
    expect(2);
    return Formula::until(sub(1), sub(2));
  }
  if (op == "next" || op == "always" || op == "eventually") {
    std::optional<int> k;
    const SExpr* body = nullptr;
    if (argc == 1) {
      k = op == "next" ? std::optional<int>(1) : std::nullopt;
      body = &e.items[1];
    } else {
      expect(2);
      k = parseBound(e.items[1]);
      body = &e.items[2];
    }
    Formula f = build(*body, regions);
    if (op == "next") {
      if (!k) parseError(e, "next needs a finite offset");
      if (*k < 1) parseError(e, "next offset must be >= 1");
      return Formula::next(*k, f);
    }
    return op == "always" ? Formula::always(k, f) : Formula::eventually(k, f);
  }
  parseError(e, "unknown operator '" + op + "'");
}

void collectAtoms(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == NodeKind::kAtom) out.insert(f.predicate().id);
  for (size_t i = 0; i < f.arity(); ++i) collectAtoms(f.child(i), out);
}

}  // namespace

Formula parseFormula(std::string_view text, const RegionTable& regions) {
  auto read = detail::readSExprs(text);
  if (!read.error.empty()) {
    fail(ErrorKind::kParse, "formula: " + read.error + " (offset " + std::to_string(read.error_offset) + ")");
  }
  if (read.forms.size() != 1) {
    fail(ErrorKind::kParse, "formula: expected exactly one top-level form, got " + std::to_string(read.forms.size()));
  }
  return build(read.forms.front(), regions);
}

std::string toString(const Formula& f) {
  auto bound = [&]() { return f.bound() ? std::to_string(*f.bound()) + " " : std::string(); };
  switch (f.kind()) {
    case NodeKind::kTrue: return "true";
    case NodeKind::kFalse: return "false";
    case NodeKind::kAtom: return "(atom " + f.predicate().id + ")";
    case NodeKind::kNot: return "(not " + toString(f.child(0)) + ")";
    case NodeKind::kAnd: return "(and " + toString(f.child(0)) + " " + toString(f.child(1)) + ")";
    case NodeKind::kOr: return "(or " + toString(f.child(0)) + " " + toString(f.child(1)) + ")";
    case NodeKind::kUntil: return "(until " + toString(f.child(0)) + " " + toString(f.child(1)) + ")";
    case NodeKind::kNext: return "(next " + bound() + toString(f.child(0)) + ")";
    case NodeKind::kAlways: return "(always " + bound() + toString(f.child(0)) + ")";
    case NodeKind::kEventually: return "(eventually " + bound() + toString(f.child(0)) + ")";
  }
  return "?";
}

std::vector<std::string> atomNames(const Formula& formula) {
  std::set<std::string> names;
  collectAtoms(formula, names);
  return {names.begin(), names.end()};
}

}  // namespace rezmet::ltlf
