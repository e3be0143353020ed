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

#include "rezmet_cli/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "rezmet/envelope.hpp"
#include "rezmet/errors.hpp"
#include "rezmet/oracle.hpp"
#include "rezmet/scenario.hpp"

namespace rezmet::cli {

using ltlf::Formula;
using ltlf::NodeKind;

Method parseMethod(std::string_view name) {
  if (name == "exact-reach") return Method::kExactReach;
  if (name == "safety") return Method::kSafety;
  if (name == "reach-lb") return Method::kReachLb;
  if (name == "scenario") return Method::kScenario;
  if (name == "nonlinear-lp") return Method::kNonlinearLp;
  if (name == "bisect") return Method::kBisect;
  if (name == "oracle") return Method::kOracle;
  if (name == "auto") return Method::kAuto;
  fail(ErrorKind::kParse, "unknown method '" + std::string(name) + "'");
}

std::string_view toString(Method method) {
  switch (method) {
    case Method::kExactReach: return "exact-reach";
    case Method::kSafety: return "safety";
    case Method::kReachLb: return "reach-lb";
    case Method::kScenario: return "scenario";
    case Method::kNonlinearLp: return "nonlinear-lp";
    case Method::kBisect: return "bisect";
    case Method::kOracle: return "oracle";
    case Method::kAuto: return "auto";
  }
  return "unknown";
}

std::vector<Formula> conjuncts(const Formula& f) {
  if (f.kind() != NodeKind::kAnd) return {f};
  std::vector<Formula> out = conjuncts(f.child(0));
  std::vector<Formula> rest = conjuncts(f.child(1));
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

int traceHorizon(const Context& ctx) {
  std::optional<int> need = ltlf::requiredHorizon(ctx.formula, ctx.file->eval);
  if (ctx.horizon) {
    if (need && *need > *ctx.horizon) {
      fail(ErrorKind::kDimension, "horizon " + std::to_string(*ctx.horizon) + " is shorter than the formula depth " +
                                      std::to_string(*need));
    }
    return *ctx.horizon;
  }
  if (ctx.file->horizon) return std::max(*ctx.file->horizon, need.value_or(0));
  if (!need) fail(ErrorKind::kDimension, "formula has an unbounded operator; pass --horizon");
  return *need;
}

namespace {

std::mutex dump_mutex;

void dumpLp(const Context& ctx, const RobustConstraintSystem& rcs, const std::string& label) {
  if (!ctx.lp_dump) return;
  std::string text = "\\ " + label + "\n" + lp::toLpFormat(robustToFarkasLp(rcs));
  std::lock_guard<std::mutex> lock(dump_mutex);
  *ctx.lp_dump += text;
}

std::optional<Polytope> asPolytope(const Formula& f) {
  if (f.kind() == NodeKind::kAtom) {
    if (const Polytope* p = f.predicate().region.polytope()) return *p;
    return std::nullopt;
  }
  if (f.kind() == NodeKind::kAnd) {
    auto a = asPolytope(f.child(0));
    auto b = asPolytope(f.child(1));
    if (!a || !b) return std::nullopt;
    Matrix g(a->facets() + b->facets(), a->dimension());
    g << a->G(), b->G();
    Vector h(g.rows());
    h << a->H(), b->H();
    return Polytope(std::move(g), std::move(h));
  }
  return std::nullopt;
}

bool isStatePredicate(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::kTrue:
    case NodeKind::kFalse:
    case NodeKind::kAtom: return true;
    case NodeKind::kNot: return isStatePredicate(f.child(0));
    case NodeKind::kAnd:
    case NodeKind::kOr: return isStatePredicate(f.child(0)) && isStatePredicate(f.child(1));
    default: return false;
  }
}

[[noreturn]] void shapeError(Method method, const Formula& f, const std::string& expected) {
  fail(ErrorKind::kUnsupported, "method " + std::string(toString(method)) + " needs " + expected + ", got " +
                                    ltlf::toString(f));
}

const LinearSystem& linear(const Context& ctx, Method method) {
  const auto* sys = std::get_if<LinearSystem>(&ctx.file->model);
  if (!sys) fail(ErrorKind::kUnsupported, "method " + std::string(toString(method)) + " needs a linear model");
  return *sys;
}

const NonlinearModel& nonlinear(const Context& ctx, Method method) {
  const auto* m = std::get_if<NonlinearModel>(&ctx.file->model);
  if (!m) fail(ErrorKind::kUnsupported, "method " + std::string(toString(method)) + " needs a nonlinear model");
  return *m;
}

// (op k P) with P a polytope (or conjunction of polytope atoms).
std::optional<std::pair<int, Polytope>> temporalPolytope(const Formula& f, NodeKind op, int fallback) {
  if (f.kind() != op) return std::nullopt;
  auto p = asPolytope(f.child(0));
  if (!p) return std::nullopt;
  return std::make_pair(f.bound().value_or(fallback), *p);
}

// Steps 0..h that the eventually window visits.
int reachHorizon(const Context& ctx, const Formula& f, int fallback) {
  if (!f.bound()) return fallback;
  int k = *f.bound();
  return ctx.file->eval.eventually == ltlf::EventuallyWindow::kAsWritten ? k - 1 : k;
}

std::uint64_t seedFor(const Context& ctx, std::uint64_t file_seed) { return ctx.seed.value_or(file_seed); }

OracleConfig oracleConfig(const Context& ctx) {
  OracleConfig cfg = ctx.oracle;
  cfg.seed = seedFor(ctx, cfg.seed);
  cfg.eval = ctx.file->eval;
  if (ctx.threads > 0) cfg.threads = ctx.threads;
  return cfg;
}

ResilienceResult statePredicate(const Context& ctx, const Vector& x0, const Formula& f) {
  ltlf::StateTrace tr{{x0}};
  ResilienceResult r;
  r.method = "state";
  r.kind = ResultKind::kExact;
  r.value = ltlf::evaluate(f, tr, 0, ctx.file->eval) ? kInfinity : 0.0;
  r.notes.push_back(std::string("step-0 predicate ") + (r.value > 0 ? "holds" : "fails") +
                    "; disturbances cannot change it");
  return r;
}

ResilienceResult runBisect(const Context& ctx, const Vector& x0, const Formula& f) {
  BisectionOptions opt;
  opt.tolerance = ctx.tolerance;
  Context sub = ctx;
  sub.formula = f;
  const int n = traceHorizon(sub);
  if (ctx.transcript_dir) {
    TranscriptFalsifier falsifier(*ctx.transcript_dir);
    return bisectFalsify(ctx.file->model, x0, f, n, falsifier, opt, ctx.file->eval);
  }
  SamplerFalsifier falsifier(oracleConfig(ctx));
  ResilienceResult r = bisectFalsify(ctx.file->model, x0, f, n, falsifier, opt, ctx.file->eval);
  r.seed = oracleConfig(ctx).seed;
  return r;
}

ResilienceResult single(const Context& ctx, const Vector& x0, const Formula& f, Method method);

ResilienceResult split(const Context& ctx, const Vector& x0, const Formula& f, Method method) {
  std::vector<Formula> parts = conjuncts(f);
  if (parts.size() == 1) return single(ctx, x0, f, method);
  std::vector<ResilienceResult> results;
  for (const auto& p : parts) results.push_back(single(ctx, x0, p, method));
  return composeConjunction(results);
}

ResilienceResult autoLinear(const Context& ctx, const Vector& x0, const Formula& f) {
  const LinearSystem& sys = linear(ctx, Method::kAuto);
  const int n = traceHorizon(ctx);
  if (auto q = temporalPolytope(f, NodeKind::kNext, n)) {
    dumpLp(ctx, exactReachSystem(sys, x0, q->second, q->first), ltlf::toString(f));
    return exactTimeReach(sys, x0, q->second, q->first);
  }
  if (auto q = temporalPolytope(f, NodeKind::kAlways, n)) {
    if (q->first >= 1 && q->second.contains(x0)) dumpLp(ctx, safetySystem(sys, x0, q->second, q->first), ltlf::toString(f));
    return finiteHorizonSafety(sys, x0, q->second, q->first);
  }
  if (f.kind() == NodeKind::kEventually) {
    if (auto p = asPolytope(f.child(0))) {
      int h = reachHorizon(ctx, f, n);
      ResilienceResult lb = finiteHorizonReachLower(sys, x0, *p, h);
      if (ctx.file->scenario && h >= 1 && !std::isinf(lb.value)) {
        ScenarioConfig cfg = *ctx.file->scenario;
        cfg.seed = seedFor(ctx, cfg.seed);
        if (ctx.threads > 0) cfg.threads = ctx.threads;
        ResilienceResult sc = scenarioReach(sys, x0, *p, h, cfg);
        sc.notes.push_back("exact lower bound " + formatValue(lb.value));
        return sc;
      }
      return lb;
    }
  }
  ResilienceResult r = runBisect(ctx, x0, f);
  r.notes.push_back("no LP reduction for this shape; sampled bisection used");
  return r;
}

ResilienceResult autoNonlinear(const Context& ctx, const Vector& x0, const Formula& f) {
  const NonlinearModel& model = nonlinear(ctx, Method::kAuto);
  const int n = traceHorizon(ctx);
  std::optional<ResilienceResult> lp;
  if (auto q = temporalPolytope(f, NodeKind::kNext, n)) {
    dumpLp(ctx, linearizedReachSystem(model, x0, q->second, q->first), ltlf::toString(f));
    lp = linearizedExactTimeReach(model, x0, q->second, q->first);
  } else if (auto s = temporalPolytope(f, NodeKind::kAlways, n)) {
    lp = linearizedSafety(model, x0, s->second, s->first);
  }
  if (lp) return *lp;
  return runBisect(ctx, x0, f);
}

ResilienceResult autoFormula(const Context& ctx, const Vector& x0, const Formula& f) {
  if (isStatePredicate(f)) return statePredicate(ctx, x0, f);
  if (f.kind() == NodeKind::kAnd) {
    std::vector<ResilienceResult> results;
    for (const auto& p : conjuncts(f)) results.push_back(autoFormula(ctx, x0, p));
    return composeConjunction(results);
  }
  if (f.kind() == NodeKind::kOr) {
    std::vector<ResilienceResult> results{autoFormula(ctx, x0, f.child(0)), autoFormula(ctx, x0, f.child(1))};
    ResilienceResult r = composeDisjunctionLower(results);
    r.notes.push_back("WARNING: disjunction; the value is only a lower bound");
    return r;
  }
  return isLinear(ctx.file->model) ? autoLinear(ctx, x0, f) : autoNonlinear(ctx, x0, f);
}

ResilienceResult single(const Context& ctx, const Vector& x0, const Formula& f, Method method) {
  const int n = traceHorizon(ctx);
  switch (method) {
    case Method::kExactReach: {
      const LinearSystem& sys = linear(ctx, method);
      auto q = temporalPolytope(f, NodeKind::kNext, n);
      if (!q) shapeError(method, f, "(next N <polytope atom>)");
      dumpLp(ctx, exactReachSystem(sys, x0, q->second, q->first), ltlf::toString(f));
      return exactTimeReach(sys, x0, q->second, q->first);
    }
    case Method::kSafety: {
      const LinearSystem& sys = linear(ctx, method);
      auto q = temporalPolytope(f, NodeKind::kAlways, n);
      if (!q) shapeError(method, f, "(always N <polytope atom>)");
      if (q->first >= 1 && q->second.contains(x0)) dumpLp(ctx, safetySystem(sys, x0, q->second, q->first), ltlf::toString(f));
      return finiteHorizonSafety(sys, x0, q->second, q->first);
    }
    case Method::kReachLb:
    case Method::kScenario: {
      const LinearSystem& sys = linear(ctx, method);
      if (f.kind() != NodeKind::kEventually) shapeError(method, f, "(eventually N <polytope atom>)");
      auto p = asPolytope(f.child(0));
      if (!p) shapeError(method, f, "(eventually N <polytope atom>)");
      int h = reachHorizon(ctx, f, n);
      if (method == Method::kReachLb) return finiteHorizonReachLower(sys, x0, *p, h);
      if (!ctx.file->scenario) fail(ErrorKind::kParse, "method scenario needs a 'scenario' block in the model file");
      ScenarioConfig cfg = *ctx.file->scenario;
      cfg.seed = seedFor(ctx, cfg.seed);
      if (ctx.threads > 0) cfg.threads = ctx.threads;
      return scenarioReach(sys, x0, *p, h, cfg);
    }
    case Method::kNonlinearLp: {
      const NonlinearModel& model = nonlinear(ctx, method);
      if (auto q = temporalPolytope(f, NodeKind::kNext, n)) {
        dumpLp(ctx, linearizedReachSystem(model, x0, q->second, q->first), ltlf::toString(f));
        return linearizedExactTimeReach(model, x0, q->second, q->first);
      }
      if (auto s = temporalPolytope(f, NodeKind::kAlways, n)) return linearizedSafety(model, x0, s->second, s->first);
      shapeError(method, f, "(next N P) or (always N P) over polytope atoms");
    }
    case Method::kBisect: return runBisect(ctx, x0, f);
    case Method::kOracle: {
      Context sub = ctx;
      sub.formula = f;
      return estimateResilience(ctx.file->model, x0, f, traceHorizon(sub), oracleConfig(ctx));
    }
    case Method::kAuto: return autoFormula(ctx, x0, f);
  }
  fail(ErrorKind::kUnsupported, "unknown method");
}

// Is conv(vertices) disjoint from the polytope?
bool disjoint(const std::vector<Vector>& vertices, const Polytope& p) {
  const Index k = static_cast<Index>(vertices.size());
  lp::LinearProgram prog(k, lp::Sense::kMinimize);
  Vector ones = Vector::Ones(k);
  prog.addConstraint(ones, lp::Relation::kEqual, 1.0);
  Matrix v(p.dimension(), k);
  for (Index i = 0; i < k; ++i) v.col(i) = vertices[static_cast<size_t>(i)];
  Matrix gv = p.G() * v;
  for (Index r = 0; r < gv.rows(); ++r) prog.addConstraint(gv.row(r).transpose(), lp::Relation::kLessEqual, p.H()(r));
  return lp::solve(prog).status == lp::Status::kInfeasible;
}

// Conjunct (or (not P) b) with P a polytope atom missing the set.
bool vacuousOnSet(const Formula& f, const std::vector<Vector>& vertices) {
  if (f.kind() != NodeKind::kOr) return false;
  for (int side = 0; side < 2; ++side) {
    const Formula& g = f.child(side);
    if (g.kind() != NodeKind::kNot || g.child(0).kind() != NodeKind::kAtom) continue;
    if (auto p = asPolytope(g.child(0)); p && disjoint(vertices, *p)) return true;
  }
  return false;
}

}  // namespace

ResilienceResult computeAt(const Context& ctx, const Vector& x0, Method method) {
  if (!ctx.file) fail(ErrorKind::kParse, "no model loaded");
  if (x0.size() != stateDimension(ctx.file->model)) {
    fail(ErrorKind::kDimension, "initial state has dimension " + std::to_string(x0.size()) + ", model has " +
                                    std::to_string(stateDimension(ctx.file->model)));
  }
  traceHorizon(ctx);
  if (method == Method::kAuto || method == Method::kBisect || method == Method::kOracle) {
    return single(ctx, x0, ctx.formula, method);
  }
  return split(ctx, x0, ctx.formula, method);
}

ResilienceResult computeOverSet(const Context& ctx, const std::vector<Vector>& vertices, Method method) {
  if (vertices.empty()) fail(ErrorKind::kDimension, "initial set has no vertices");
  std::vector<Formula> kept;
  std::vector<std::string> notes;
  for (const auto& c : conjuncts(ctx.formula)) {
    if (vacuousOnSet(c, vertices)) {
      notes.push_back("conjunct " + ltlf::toString(c) +
                      " is vacuously true: its antecedent region does not meet the initial set");
    } else {
      kept.push_back(c);
    }
  }
  Context sub = ctx;
  if (kept.empty()) {
    sub.formula = Formula::truth();
  } else {
    sub.formula = kept.front();
    for (size_t i = 1; i < kept.size(); ++i) sub.formula = Formula::conjunction(sub.formula, kept[i]);
  }
  sub.horizon = ctx.horizon;
  if (!ctx.horizon) sub.horizon = traceHorizon(ctx);
  sub.threads = 1;
  VertexOptions vopt;
  vopt.allow_unsafe = ctx.allow_unsafe;
  vopt.threads = ctx.threads;
  if (!isLinear(ctx.file->model)) {
    vopt.allow_unsafe = true;
    notes.push_back("vertex reduction is only proven for linear models");
  }
  ResilienceResult r = vertexResilience(
      ConvexHullSet(vertices), sub.formula, [&](const Vector& v) { return computeAt(sub, v, method); }, vopt);
  r.notes.insert(r.notes.end(), notes.begin(), notes.end());
  return r;
}

}  // namespace rezmet::cli
