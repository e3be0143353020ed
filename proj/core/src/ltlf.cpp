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

#include "rezmet/ltlf.hpp"

#include <algorithm>

#include "rezmet/errors.hpp"

namespace rezmet::ltlf {

// --- Region -----------------------------------------------------------------

Region::Region(Polytope polytope) : shape_(std::move(polytope)), closed_(true), convex_(true) {}

Region::Region(PolytopeUnion u) : shape_(std::move(u)) {
  const auto& members = std::get<PolytopeUnion>(shape_).members;
  if (members.empty()) fail(ErrorKind::kDimension, "union region needs at least one member");
  for (const auto& m : members) {
    if (m.dimension() != members.front().dimension()) {
      fail(ErrorKind::kDimension, "union members differ in dimension");
    }
  }
  closed_ = true;
  convex_ = members.size() == 1;
}

Region::Region(PredicateChain chain, bool closed, bool convex, bool open)
    : shape_(std::move(chain)), closed_(closed), convex_(convex), open_(open) {
  const auto& c = std::get<PredicateChain>(shape_);
  if (c.functions.empty()) fail(ErrorKind::kDimension, "predicate region needs at least one function");
  if (c.connectives.size() + 1 != c.functions.size()) {
    fail(ErrorKind::kParse, "predicate region needs one connective between each pair of functions");
  }
  if (c.dimension < 1) fail(ErrorKind::kDimension, "predicate region dimension must be positive");
  for (const auto& f : c.functions) {
    if (f.maxVariable() >= c.dimension) fail(ErrorKind::kDimension, "predicate references a state beyond its dimension");
  }
}

Index Region::dimension() const {
  return std::visit(
      [](const auto& s) -> Index {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polytope>) {
          return s.dimension();
        } else if constexpr (std::is_same_v<T, PolytopeUnion>) {
          return s.members.front().dimension();
        } else {
          return s.dimension;
        }
      },
      shape_);
}

bool Region::contains(const Vector& x) const {
  if (x.size() != dimension()) {
    fail(ErrorKind::kDimension, "state of dimension " + std::to_string(x.size()) +
                                    " tested against region of dimension " + std::to_string(dimension()));
  }
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Polytope>) {
          return s.contains(x);
        } else if constexpr (std::is_same_v<T, PolytopeUnion>) {
          return std::any_of(s.members.begin(), s.members.end(), [&](const Polytope& p) { return p.contains(x); });
        } else {
          std::span<const double> values(x.data(), static_cast<size_t>(x.size()));
          bool acc = s.functions[0].evaluate(values) <= 0.0;
          for (size_t i = 1; i < s.functions.size(); ++i) {
            bool next = s.functions[i].evaluate(values) <= 0.0;
            acc = s.connectives[i - 1] == Connective::kAnd ? (acc && next) : (acc || next);
          }
          return acc;
        }
      },
      shape_);
}

// --- Formula ----------------------------------------------------------------

struct Formula::Node {
  NodeKind kind = NodeKind::kTrue;
  std::optional<int> bound;
  std::vector<Formula> children;
  std::shared_ptr<const AtomicPredicate> predicate;
};

Formula Formula::make(NodeKind kind, std::optional<int> bound, std::vector<Formula> children,
                      std::shared_ptr<const AtomicPredicate> predicate) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->bound = bound;
  n->children = std::move(children);
  n->predicate = std::move(predicate);
  return Formula(std::move(n));
}

Formula Formula::truth() { return make(NodeKind::kTrue, std::nullopt, {}); }
Formula Formula::falsity() { return make(NodeKind::kFalse, std::nullopt, {}); }

Formula Formula::atom(std::shared_ptr<const AtomicPredicate> predicate) {
  if (!predicate) fail(ErrorKind::kParse, "atom needs a predicate");
  return make(NodeKind::kAtom, std::nullopt, {}, std::move(predicate));
}

Formula Formula::negation(Formula f) { return make(NodeKind::kNot, std::nullopt, {std::move(f)}); }

Formula Formula::conjunction(Formula a, Formula b) {
  return make(NodeKind::kAnd, std::nullopt, {std::move(a), std::move(b)});
}

Formula Formula::disjunction(Formula a, Formula b) {
  return make(NodeKind::kOr, std::nullopt, {std::move(a), std::move(b)});
}

Formula Formula::implication(Formula a, Formula b) { return disjunction(negation(std::move(a)), std::move(b)); }

Formula Formula::next(int k, Formula f) {
  if (k < 1) fail(ErrorKind::kParse, "next offset must be >= 1");
  return make(NodeKind::kNext, k, {std::move(f)});
}

Formula Formula::always(std::optional<int> k, Formula f) {
  if (k && *k < 0) fail(ErrorKind::kParse, "always bound must be >= 0");
  return make(NodeKind::kAlways, k, {std::move(f)});
}

Formula Formula::eventually(std::optional<int> k, Formula f) {
  if (k && *k < 0) fail(ErrorKind::kParse, "eventually bound must be >= 0");
  return make(NodeKind::kEventually, k, {std::move(f)});
}

Formula Formula::until(Formula a, Formula b) {
  return make(NodeKind::kUntil, std::nullopt, {std::move(a), std::move(b)});
}

NodeKind Formula::kind() const { return node_->kind; }
std::optional<int> Formula::bound() const { return node_->bound; }
size_t Formula::arity() const { return node_->children.size(); }

const Formula& Formula::child(size_t i) const {
  if (i >= node_->children.size()) fail(ErrorKind::kDimension, "formula child index out of range");
  return node_->children[i];
}

const AtomicPredicate& Formula::predicate() const {
  if (!node_->predicate) fail(ErrorKind::kParse, "formula node is not an atom");
  return *node_->predicate;
}

// --- Semantics --------------------------------------------------------------

namespace {

bool eval(const Formula& f, const StateTrace& tr, size_t i, const EvalOptions& opt) {
  const size_t n = tr.size();
  switch (f.kind()) {
    case NodeKind::kTrue: return true;
    case NodeKind::kFalse: return false;
    case NodeKind::kAtom: return f.predicate().region.contains(tr.states[i]);
    case NodeKind::kNot: return !eval(f.child(0), tr, i, opt);
    case NodeKind::kAnd: return eval(f.child(0), tr, i, opt) && eval(f.child(1), tr, i, opt);
    case NodeKind::kOr: return eval(f.child(0), tr, i, opt) || eval(f.child(1), tr, i, opt);
    case NodeKind::kNext: {
      size_t j = i + static_cast<size_t>(*f.bound());
      return j < n && eval(f.child(0), tr, j, opt);
    }
    case NodeKind::kAlways: {
      size_t last = n - 1;
      if (f.bound()) last = std::min(last, i + static_cast<size_t>(*f.bound()));
      for (size_t m = i; m <= last; ++m) {
        if (!eval(f.child(0), tr, m, opt)) return false;
      }
      return true;
    }
    case NodeKind::kEventually: {
      size_t end = n;  // exclusive
      if (f.bound()) {
        size_t k = static_cast<size_t>(*f.bound());
        end = std::min(n, opt.eventually == EventuallyWindow::kAsWritten ? i + k : i + k + 1);
      }
      for (size_t m = i; m < end; ++m) {
        if (eval(f.child(0), tr, m, opt)) return true;
      }
      return false;
    }
    case NodeKind::kUntil: {
      for (size_t m = i; m < n; ++m) {
        if (eval(f.child(1), tr, m, opt)) return true;
        if (!eval(f.child(0), tr, m, opt)) return false;
      }
      return false;
    }
  }
  return false;
}

}  // namespace

bool evaluate(const Formula& formula, const StateTrace& trace, size_t position, const EvalOptions& options) {
  if (position >= trace.size()) {
    fail(ErrorKind::kDimension, "evaluation position " + std::to_string(position) + " outside trace of length " +
                                    std::to_string(trace.size()));
  }
  return eval(formula, trace, position, options);
}

Fragment classifyClosed(const Formula& f) {
  auto both = [&]() {
    return classifyClosed(f.child(0)) == Fragment::kCertified && classifyClosed(f.child(1)) == Fragment::kCertified
               ? Fragment::kCertified
               : Fragment::kUnknown;
  };
  switch (f.kind()) {
    case NodeKind::kTrue:
    case NodeKind::kFalse: return Fragment::kCertified;
    case NodeKind::kAtom: return f.predicate().region.isClosed() ? Fragment::kCertified : Fragment::kUnknown;
    case NodeKind::kNot: {
      const Formula& c = f.child(0);
      if (c.kind() == NodeKind::kTrue || c.kind() == NodeKind::kFalse) return Fragment::kCertified;
      if (c.kind() == NodeKind::kAtom && c.predicate().region.isOpen()) return Fragment::kCertified;
      return Fragment::kUnknown;
    }
    case NodeKind::kAnd:
    case NodeKind::kOr: return both();
    case NodeKind::kNext:
    case NodeKind::kAlways:
    case NodeKind::kEventually: return classifyClosed(f.child(0));
    case NodeKind::kUntil: return Fragment::kUnknown;
  }
  return Fragment::kUnknown;
}

Fragment classifyConvex(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::kTrue:
    case NodeKind::kFalse: return Fragment::kCertified;
    case NodeKind::kAtom: return f.predicate().region.isConvex() ? Fragment::kCertified : Fragment::kUnknown;
    case NodeKind::kAnd:
      return classifyConvex(f.child(0)) == Fragment::kCertified && classifyConvex(f.child(1)) == Fragment::kCertified
                 ? Fragment::kCertified
                 : Fragment::kUnknown;
    case NodeKind::kNext:
    case NodeKind::kAlways: return classifyConvex(f.child(0));
    default: return Fragment::kUnknown;
  }
}

std::optional<int> requiredHorizon(const Formula& f, const EvalOptions& options) {
  switch (f.kind()) {
    case NodeKind::kTrue:
    case NodeKind::kFalse:
    case NodeKind::kAtom: return 0;
    case NodeKind::kNot: return requiredHorizon(f.child(0), options);
    case NodeKind::kAnd:
    case NodeKind::kOr: {
      auto a = requiredHorizon(f.child(0), options);
      auto b = requiredHorizon(f.child(1), options);
      if (!a || !b) return std::nullopt;
      return std::max(*a, *b);
    }
    case NodeKind::kUntil: return std::nullopt;
    case NodeKind::kNext:
    case NodeKind::kAlways:
    case NodeKind::kEventually: {
      if (!f.bound()) return std::nullopt;
      auto c = requiredHorizon(f.child(0), options);
      if (!c) return std::nullopt;
      int k = *f.bound();
      if (f.kind() == NodeKind::kEventually && options.eventually == EventuallyWindow::kAsWritten) {
        k = std::max(0, k - 1);
      }
      return k + *c;
    }
  }
  return std::nullopt;
}

}  // namespace rezmet::ltlf
