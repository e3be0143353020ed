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

#include "rezmet/resilience_nonlinear.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rezmet/errors.hpp"

namespace rezmet {

FalsifierAnswer SamplerFalsifier::check(const FalsificationQuery& q) {
  OracleConfig cfg = config_;
  cfg.eval = q.eval;
  return {falsifyAt(*q.model, q.x0, q.formula, q.horizon, q.epsilon, cfg), false};
}

void writeFileAtomically(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::kIo, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(ErrorKind::kIo, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorKind::kIo, "cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

FalsifierAnswer TranscriptFalsifier::check(const FalsificationQuery& q) {
  const int index = next_++;
  std::filesystem::path script = directory_ / ("query-" + std::to_string(index) + ".smt2");
  std::filesystem::path answer = directory_ / ("query-" + std::to_string(index) + ".out");
  std::string text = emitSmtQuery(q);
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (!std::filesystem::exists(script)) writeFileAtomically(script, text);
  if (!std::filesystem::exists(answer)) {
    fail(ErrorKind::kAwaitingTranscript, "awaiting solver transcript " + answer.string() + " for " + script.string() +
                                             " (eps = " + expr::smtNumber(q.epsilon) + ")");
  }
  std::ifstream in(answer, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  SolverTranscript t = SolverTranscript::parse(buf.str());
  if (t.verdict == SmtVerdict::kUnsat) return {std::nullopt, true};
  return {t.disturbance(inputDimension(*q.model), q.horizon, q.epsilon), false};
}

ResilienceResult bisectFalsify(const Model& model, const Vector& x0, const ltlf::Formula& formula, int horizon,
                               Falsifier& falsifier, const BisectionOptions& options,
                               const ltlf::EvalOptions& eval) {
  ResilienceResult out;
  out.method = "bisect(" + falsifier.name() + ")";
  if (!nominalSatisfies(model, x0, formula, horizon, eval)) {
    out.value = 0.0;
    out.kind = ResultKind::kExact;
    out.notes.push_back("nominal trajectory violates the formula");
    return out;
  }
  FalsificationQuery q{&model, x0, formula, horizon, 0.0, eval};
  bool all_proven = true;
  auto probe = [&](double eps) {
    q.epsilon = eps;
    FalsifierAnswer a = falsifier.check(q);
    if (a.witness) {
      Trajectory t = simulate(model, x0, *a.witness);
      if (ltlf::evaluate(formula, t.trace, 0, eval)) {
        out.notes.push_back("solver witness at eps = " + formatValue(eps) + " does not replay as a violation");
      }
    } else if (!a.proven) {
      all_proven = false;
    }
    return a;
  };

  double lo = 0.0;
  double hi = kInfinity;
  std::optional<DisturbanceTrace> witness;
  int iterations = 0;
  for (double eps = options.initial_epsilon; eps <= options.cap; eps *= 2.0) {
    ++iterations;
    FalsifierAnswer a = probe(eps);
    if (a.witness) {
      hi = eps;
      witness = std::move(a.witness);
      break;
    }
    lo = eps;
  }
  if (!std::isfinite(hi)) {
    out.value = lo;
    out.kind = ResultKind::kLowerBound;
    out.bracket_lower = lo;
    out.bracket_upper = kInfinity;
    out.notes.push_back("no violation found up to the cap; possibly unbounded");
    return out;
  }
  const double tol = options.tolerance.value_or(1e-4 * std::max(1.0, hi));
  while (hi - lo > tol && iterations < options.max_iterations) {
    ++iterations;
    double mid = 0.5 * (lo + hi);
    FalsifierAnswer a = probe(mid);
    if (a.witness) {
      hi = mid;
      witness = std::move(a.witness);
    } else {
      lo = mid;
    }
  }
  out.value = lo;
  out.kind = all_proven ? ResultKind::kExactUpToDelta : ResultKind::kLowerBound;
  out.bracket_lower = lo;
  out.bracket_upper = hi;
  out.witness = std::move(witness);
  out.notes.push_back(std::to_string(iterations) + " falsification queries");
  return out;
}

}  // namespace rezmet
