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
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rezmet/expression.hpp"
#include "rezmet/geometry.hpp"

namespace rezmet::ltlf {

enum class Connective { kAnd, kOr };

/// Region `p_1(x) <= 0  T_1  p_2(x) <= 0  T_2 ...` folded left to right.
struct PredicateChain {
  std::vector<expr::Expression> functions;
  std::vector<Connective> connectives;  // functions.size() - 1 entries
  Index dimension = 0;
};

/// Finite union of polytopes.
struct PolytopeUnion {
  std::vector<Polytope> members;
};

/// State-space region bound to an atomic proposition, annotated with the
/// topological facts the fragment classifiers rely on.
class Region {
 public:
  using Shape = std::variant<Polytope, PolytopeUnion, PredicateChain>;

  explicit Region(Polytope polytope);
  explicit Region(PolytopeUnion u);
  Region(PredicateChain chain, bool closed, bool convex, bool open = false);

  const Shape& shape() const { return shape_; }
  Index dimension() const;
  bool contains(const Vector& x) const;

  bool isClosed() const { return closed_; }
  bool isConvex() const { return convex_; }
  bool isOpen() const { return open_; }

  const Polytope* polytope() const { return std::get_if<Polytope>(&shape_); }

 private:
  Shape shape_;
  bool closed_ = true;
  bool convex_ = true;
  bool open_ = false;
};

struct AtomicPredicate {
  std::string id;
  Region region;
};

using RegionTable = std::map<std::string, std::shared_ptr<const AtomicPredicate>, std::less<>>;

enum class NodeKind { kTrue, kFalse, kAtom, kNot, kAnd, kOr, kNext, kAlways, kEventually, kUntil };

/// Immutable LTL_F syntax tree. Temporal nodes carry an optional horizon
/// offset; an absent bound means "to the end of the trace".
class Formula {
 public:
  static Formula truth();
  static Formula falsity();
  static Formula atom(std::shared_ptr<const AtomicPredicate> predicate);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  /// `a => b`, stored as `!a | b`.
  static Formula implication(Formula a, Formula b);
  static Formula next(int k, Formula f);
  static Formula always(std::optional<int> k, Formula f);
  static Formula eventually(std::optional<int> k, Formula f);
  static Formula until(Formula a, Formula b);

  NodeKind kind() const;
  std::optional<int> bound() const;
  const Formula& child(size_t i) const;
  size_t arity() const;
  const AtomicPredicate& predicate() const;

 private:
  struct Node;
  static Formula make(NodeKind kind, std::optional<int> bound, std::vector<Formula> children,
                      std::shared_ptr<const AtomicPredicate> predicate = nullptr);
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct StateTrace {
  std::vector<Vector> states;

  size_t size() const { return states.size(); }
  Index dimension() const { return states.empty() ? 0 : states.front().size(); }
};

/// Bounded-eventually window. `kAsWritten` scans i <= m < i+j; `kInclusive`
/// scans i <= m <= i+j like bounded always.
enum class EventuallyWindow { kAsWritten, kInclusive };

struct EvalOptions {
  EventuallyWindow eventually = EventuallyWindow::kAsWritten;
};

/// Truth of `trace_i |= formula`. Windows past the end of the trace are
/// truncated at the last state; a next-step beyond the end is false.
bool evaluate(const Formula& formula, const StateTrace& trace, size_t position = 0,
              const EvalOptions& options = {});

enum class Fragment { kCertified, kUnknown };

/// Syntactic membership in the closed fragment.
Fragment classifyClosed(const Formula& formula);

/// Syntactic membership in the convex fragment.
Fragment classifyConvex(const Formula& formula);

/// Steps past position 0 the formula can look at, or nullopt when an
/// unbounded operator is present.
std::optional<int> requiredHorizon(const Formula& formula, const EvalOptions& options = {});

/// Prefix s-expression form accepted by `parseFormula`.
std::string toString(const Formula& formula);

/// Parses `(and f g)`, `(or f g)`, `(not f)`, `(implies f g)`, `(next k f)`,
/// `(always k f)`, `(eventually k f)`, `(until f g)`, `(atom NAME)`,
/// `true`, `false`. The temporal bound may be omitted or written `inf`.
Formula parseFormula(std::string_view text, const RegionTable& regions);

/// Names of all atoms referenced (sorted, unique).
std::vector<std::string> atomNames(const Formula& formula);

}  // namespace rezmet::ltlf
