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

#include <gtest/gtest.h>

#include "rezmet/errors.hpp"
#include "rezmet/ltlf.hpp"

namespace rezmet::ltlf {
namespace {

RegionTable scalarRegions() {
  RegionTable t;
  auto add = [&](const std::string& id, double lo, double hi) {
    Polytope p(Matrix{{1.0}, {-1.0}}, Vector{{hi, -lo}});
    t.emplace(id, std::make_shared<AtomicPredicate>(AtomicPredicate{id, Region(p)}));
  };
  add("A", 0.0, 1.0);
  add("B", 2.0, 3.0);
  return t;
}

StateTrace trace(std::initializer_list<double> xs) {
  StateTrace t;
  for (double x : xs) t.states.push_back(Vector{{x}});
  return t;
}

TEST(Ltlf, AtomAndBooleanConnectives) {
  auto r = scalarRegions();
  auto tr = trace({0.5, 2.5});
  EXPECT_TRUE(evaluate(parseFormula("(atom A)", r), tr));
  EXPECT_FALSE(evaluate(parseFormula("(atom B)", r), tr));
  EXPECT_TRUE(evaluate(parseFormula("(or (atom A) (atom B))", r), tr));
  EXPECT_FALSE(evaluate(parseFormula("(and (atom A) (atom B))", r), tr));
  EXPECT_TRUE(evaluate(parseFormula("(not (atom B))", r), tr));
  EXPECT_TRUE(evaluate(parseFormula("(implies (atom B) false)", r), tr));
  EXPECT_TRUE(evaluate(parseFormula("true", r), tr));
  EXPECT_FALSE(evaluate(parseFormula("false", r), tr));
}

TEST(Ltlf, NextBeyondTraceEndIsFalse) {
  auto r = scalarRegions();
  auto tr = trace({0.5, 2.5});
  EXPECT_TRUE(evaluate(parseFormula("(next 1 (atom B))", r), tr));
  EXPECT_FALSE(evaluate(parseFormula("(next 2 (atom B))", r), tr));
  EXPECT_FALSE(evaluate(parseFormula("(next 2 true)", r), tr));
}

TEST(Ltlf, AlwaysIsInclusive) {
  auto r = scalarRegions();
  auto tr = trace({0.5, 0.7, 2.5});
  EXPECT_TRUE(evaluate(parseFormula("(always 1 (atom A))", r), tr));
  EXPECT_FALSE(evaluate(parseFormula("(always 2 (atom A))", r), tr));
  EXPECT_FALSE(evaluate(parseFormula("(always (atom A))", r), tr));
  EXPECT_TRUE(evaluate(parseFormula("(always (atom A))", r), trace({0.1, 0.2})));
}

TEST(Ltlf, EventuallyWindowVariants) {
  auto r = scalarRegions();
  auto tr = trace({0.5, 0.7, 2.5});
  Formula f = parseFormula("(eventually 2 (atom B))", r);
  EXPECT_FALSE(evaluate(f, tr, 0, {EventuallyWindow::kAsWritten}));
  EXPECT_TRUE(evaluate(f, tr, 0, {EventuallyWindow::kInclusive}));
  EXPECT_TRUE(evaluate(parseFormula("(eventually 3 (atom B))", r), tr));
  EXPECT_TRUE(evaluate(parseFormula("(eventually (atom B))", r), tr));
}

TEST(Ltlf, WindowsTruncateAtTraceEnd) {
  auto r = scalarRegions();
  auto tr = trace({0.5, 0.7});
  EXPECT_TRUE(evaluate(parseFormula("(always 10 (atom A))", r), tr));
  EXPECT_FALSE(evaluate(parseFormula("(eventually 10 (atom B))", r), tr));
}

TEST(Ltlf, Until) {
  auto r = scalarRegions();
  EXPECT_TRUE(evaluate(parseFormula("(until (atom A) (atom B))", r), trace({0.5, 0.5, 2.5})));
  EXPECT_FALSE(evaluate(parseFormula("(until (atom A) (atom B))", r), trace({0.5, 1.5, 2.5})));
  EXPECT_TRUE(evaluate(parseFormula("(until (atom A) (atom B))", r), trace({2.5})));
}

TEST(Ltlf, EvaluationAtLaterPosition) {
  auto r = scalarRegions();
  auto tr = trace({0.5, 2.5, 0.5});
  EXPECT_TRUE(evaluate(parseFormula("(atom B)", r), tr, 1));
  EXPECT_TRUE(evaluate(parseFormula("(next 1 (atom A))", r), tr, 1));
}

TEST(Ltlf, RequiredHorizon) {
  auto r = scalarRegions();
  EXPECT_EQ(requiredHorizon(parseFormula("(next 3 (atom A))", r)), 3);
  EXPECT_EQ(requiredHorizon(parseFormula("(and (always 2 (atom A)) (next 4 (atom B)))", r)), 4);
  EXPECT_EQ(requiredHorizon(parseFormula("(next 2 (always 3 (atom A)))", r)), 5);
  EXPECT_EQ(requiredHorizon(parseFormula("(eventually 3 (atom A))", r), {EventuallyWindow::kAsWritten}), 2);
  EXPECT_EQ(requiredHorizon(parseFormula("(eventually 3 (atom A))", r), {EventuallyWindow::kInclusive}), 3);
  EXPECT_FALSE(requiredHorizon(parseFormula("(always (atom A))", r)).has_value());
}

TEST(Ltlf, ClosedAndConvexFragments) {
  auto r = scalarRegions();
  EXPECT_EQ(classifyClosed(parseFormula("(and (always 3 (atom A)) (next 3 (atom B)))", r)), Fragment::kCertified);
  EXPECT_EQ(classifyConvex(parseFormula("(and (always 3 (atom A)) (next 3 (atom B)))", r)), Fragment::kCertified);
  EXPECT_EQ(classifyConvex(parseFormula("(or (atom A) (atom B))", r)), Fragment::kUnknown);
  EXPECT_EQ(classifyConvex(parseFormula("(eventually 3 (atom A))", r)), Fragment::kUnknown);
  // The complement of a closed polytope is open.
  EXPECT_EQ(classifyClosed(parseFormula("(not (atom A))", r)), Fragment::kUnknown);
}

TEST(Ltlf, PrintParseRoundTrip) {
  auto r = scalarRegions();
  for (const char* text : {"(and (always 2 (atom A)) (next 4 (atom B)))", "(eventually 3 (or (atom A) (not (atom B))))",
                           "(until (atom A) (atom B))", "(always (atom A))"}) {
    Formula f = parseFormula(text, r);
    Formula g = parseFormula(toString(f), r);
    EXPECT_EQ(toString(f), toString(g));
  }
}

TEST(Ltlf, ParseErrorsNameTheProblem) {
  auto r = scalarRegions();
  try {
    parseFormula("(next 3 (atom Missing))", r);
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("Missing"), std::string::npos);
  }
  EXPECT_THROW(parseFormula("(next 0 (atom A))", r), Error);
  EXPECT_THROW(parseFormula("(and (atom A)", r), Error);
  EXPECT_THROW(parseFormula("(frobnicate (atom A))", r), Error);
  EXPECT_THROW(parseFormula("(atom A) (atom B)", r), Error);
}

TEST(Ltlf, AtomNames) {
  auto r = scalarRegions();
  auto names = atomNames(parseFormula("(and (atom B) (or (atom A) (atom B)))", r));
  EXPECT_EQ(names, (std::vector<std::string>{"A", "B"}));
}

TEST(Ltlf, PredicateChainFoldsLeftToRight) {
  std::vector<std::string> vars{"x"};
  PredicateChain chain;
  chain.dimension = 1;
  // ((x - 1 <= 0) or (x - 5 >= 0 as 5 - x <= 0)) and (x + 10 <= 0 is false for x > -10)
  chain.functions = {expr::Expression::parse("x - 1", vars), expr::Expression::parse("5 - x", vars),
                     expr::Expression::parse("x - 6", vars)};
  chain.connectives = {Connective::kOr, Connective::kAnd};
  Region region(chain, true, false);
  EXPECT_TRUE(region.contains(Vector{{0.0}}));
  EXPECT_TRUE(region.contains(Vector{{5.5}}));
  EXPECT_FALSE(region.contains(Vector{{3.0}}));
  EXPECT_FALSE(region.contains(Vector{{7.0}}));
}

}  // namespace
}  // namespace rezmet::ltlf
