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

#include "rezmet_cli/app.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rezmet/parallel.hpp"
#include "rezmet/resilience_nonlinear.hpp"
#include "rezmet/smt.hpp"
#include "rezmet_cli/dispatch.hpp"

namespace rezmet::cli {

int exitCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return kExitParse;
    case ErrorKind::kDimension: return kExitDimension;
    case ErrorKind::kInfeasible: return kExitInfeasible;
    case ErrorKind::kNumerical: return kExitNumerical;
    case ErrorKind::kDomain:
    case ErrorKind::kUnsupported: return kExitUnsupported;
    case ErrorKind::kAwaitingTranscript: return kExitAwaitingTranscript;
    case ErrorKind::kIo: return kExitOther;
  }
  return kExitOther;
}

namespace {

std::vector<std::string> splitOn(std::string_view text, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double toDouble(const std::string& s, std::string_view what) {
  try {
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::kParse, std::string(what) + ": bad number '" + s + "'");
  }
}

Vector toPoint(std::string_view text, std::string_view what) {
  std::vector<std::string> parts = splitOn(text, ',');
  Vector v(static_cast<Index>(parts.size()));
  for (size_t i = 0; i < parts.size(); ++i) v(static_cast<Index>(i)) = toDouble(parts[i], what);
  return v;
}

}  // namespace

InitialSpec parseInitialSpec(std::string_view text) {
  InitialSpec spec;
  if (text.rfind("box:", 0) == 0) {
    std::vector<std::string> axes = splitOn(text.substr(4), ',');
    Vector lo(static_cast<Index>(axes.size()));
    Vector hi(static_cast<Index>(axes.size()));
    for (size_t i = 0; i < axes.size(); ++i) {
      std::vector<std::string> b = splitOn(axes[i], ':');
      if (b.size() != 2) fail(ErrorKind::kParse, "--x0 box: expected lo:hi per coordinate");
      lo(static_cast<Index>(i)) = toDouble(b[0], "--x0");
      hi(static_cast<Index>(i)) = toDouble(b[1], "--x0");
    }
    spec.is_set = true;
    spec.points = IntervalBox(lo, hi).vertices();
  } else if (text.rfind("hull:", 0) == 0) {
    spec.is_set = true;
    for (const auto& v : splitOn(text.substr(5), ';')) spec.points.push_back(toPoint(v, "--x0"));
  } else {
    if (text.rfind("point:", 0) == 0) text.remove_prefix(6);
    spec.points.push_back(toPoint(text, "--x0"));
  }
  return spec;
}

std::vector<Vector> parseGrid(std::string_view text) {
  std::vector<std::vector<double>> axes;
  for (const auto& axis : splitOn(text, ',')) {
    std::vector<std::string> p = splitOn(axis, ':');
    if (p.size() != 3) fail(ErrorKind::kParse, "--grid: expected lo:hi:step per coordinate");
    double lo = toDouble(p[0], "--grid");
    double hi = toDouble(p[1], "--grid");
    double step = toDouble(p[2], "--grid");
    if (!(step > 0.0) || hi < lo) fail(ErrorKind::kParse, "--grid: need lo <= hi and a positive step");
    const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> values;
    for (long i = 0; i < count; ++i) values.push_back(lo + static_cast<double>(i) * step);
    axes.push_back(std::move(values));
  }
  std::vector<Vector> points;
  std::vector<size_t> idx(axes.size(), 0);
  while (true) {
    Vector x(static_cast<Index>(axes.size()));
    for (size_t d = 0; d < axes.size(); ++d) x(static_cast<Index>(d)) = axes[d][idx[d]];
    points.push_back(std::move(x));
    size_t d = axes.size();
    while (d > 0) {
      --d;
      if (++idx[d] < axes[d].size()) break;
      idx[d] = 0;
      if (d == 0) return points;
    }
  }
}

namespace {

struct Options {
  std::string model;
  std::string formula;
  std::string method = "auto";
  std::string x0;
  std::string grid;
  std::optional<int> horizon;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string out;
  std::optional<double> emit_smt;
  std::string transcript;
  std::string lp_dump;
  std::size_t samples = 10000;
  bool unsafe_vertex = false;
};

void writeOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  writeFileAtomically(path, text);
}

bool wantsJson(const std::string& path) { return path.size() > 5 && path.substr(path.size() - 5) == ".json"; }

void reportNotes(const ResilienceResult& r) {
  for (const auto& n : r.notes) {
    if (n.rfind("WARNING", 0) == 0) {
      std::cerr << "rezmet: warning: " << n.substr(n.find(':') + 2) << "\n";
    } else {
      std::cerr << "rezmet: note: " << n << "\n";
    }
  }
}

std::string pointColumns(Index n) {
  std::string s;
  for (Index i = 0; i < n; ++i) s += "x" + std::to_string(i + 1) + ",";
  return s;
}

std::string pointValues(const Vector& x) {
  std::string s;
  for (Index i = 0; i < x.size(); ++i) s += formatValue(x(i)) + ",";
  return s;
}

int execute(const Options& opt) {
  const ModelFile file = loadModelFile(opt.model);
  Context ctx;
  ctx.file = &file;
  std::string formula_text = opt.formula.empty() ? file.formula.value_or("") : opt.formula;
  if (formula_text.empty()) fail(ErrorKind::kParse, "no formula given (use --formula or the model's 'formula')");
  ctx.formula = ltlf::parseFormula(formula_text, file.regions);
  ctx.horizon = opt.horizon;
  ctx.seed = opt.seed;
  ctx.tolerance = opt.tol;
  ctx.oracle.samples_per_epsilon = opt.samples;
  ctx.allow_unsafe = opt.unsafe_vertex;
  if (!opt.transcript.empty() && !opt.emit_smt) ctx.transcript_dir = opt.transcript;
  std::string lp_text;
  if (!opt.lp_dump.empty()) ctx.lp_dump = &lp_text;
  const Method method = parseMethod(opt.method);
  const Index n = stateDimension(file.model);

  InitialSpec init;
  if (!opt.x0.empty()) {
    init = parseInitialSpec(opt.x0);
  } else if (file.x0) {
    init.points = {*file.x0};
  } else if (file.initial_box) {
    init.is_set = true;
    init.points = file.initial_box->vertices();
  } else if (file.initial_hull) {
    init.is_set = true;
    init.points = *file.initial_hull;
  }

  if (opt.emit_smt) {
    if (init.is_set || init.points.size() != 1) fail(ErrorKind::kParse, "--emit-smt needs a single initial state");
    FalsificationQuery q{&file.model, init.points[0], ctx.formula, traceHorizon(ctx), *opt.emit_smt, file.eval};
    std::string script = emitSmtQuery(q);
    for (const auto& d : checkSmtSyntax(script)) std::cerr << "rezmet: warning: smt: " << d << "\n";
    writeOutput(opt.out, script);
    if (!opt.transcript.empty()) {
      std::ifstream in(opt.transcript, std::ios::binary);
      if (!in) fail(ErrorKind::kIo, "cannot open transcript " + opt.transcript);
      std::stringstream buf;
      buf << in.rdbuf();
      SolverTranscript t = SolverTranscript::parse(buf.str());
      std::cerr << "rezmet: transcript verdict: " << toString(t.verdict) << "\n";
      if (t.verdict != SmtVerdict::kUnsat) {
        DisturbanceTrace d = t.disturbance(inputDimension(file.model), q.horizon, q.epsilon);
        bool holds = ltlf::evaluate(ctx.formula, simulate(file.model, q.x0, d).trace, 0, file.eval);
        std::cerr << "rezmet: witness replay: " << (holds ? "formula holds (spurious)" : "violation confirmed")
                  << "\n";
      }
    }
    return kExitOk;
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  if (!opt.grid.empty()) {
    std::vector<Vector> points = parseGrid(opt.grid);
    if (points.front().size() != n) fail(ErrorKind::kDimension, "--grid dimension does not match the model");
    Context sub = ctx;
    sub.threads = 1;
    sub.lp_dump = nullptr;
    std::vector<ResilienceResult> results(points.size());
    parallelFor(points.size(), [&](size_t i) { results[i] = computeAt(sub, points[i], method); });
    std::string text;
    if (wantsJson(opt.out)) {
      text = "[\n";
      for (size_t i = 0; i < points.size(); ++i) {
        text += "{\"x\":[";
        for (Index j = 0; j < n; ++j) text += (j ? "," : "") + formatValue(points[i](j));
        text += "],\"result\":" + toJson(results[i]) + "}" + (i + 1 < points.size() ? ",\n" : "\n");
      }
      text += "]\n";
    } else {
      text = pointColumns(n) + csvHeader() + "\n";
      for (size_t i = 0; i < points.size(); ++i) text += pointValues(points[i]) + toCsvRow(results[i]) + "\n";
    }
    writeOutput(opt.out, text);
    std::cerr << "rezmet: " << points.size() << " grid points in " << elapsed() << " s\n";
    return kExitOk;
  }

  if (init.points.empty()) fail(ErrorKind::kParse, "no initial condition (use --x0 or the model's x0/initial_set)");
  ResilienceResult r = init.is_set ? computeOverSet(ctx, init.points, method) : computeAt(ctx, init.points[0], method);
  const double wall = elapsed();
  reportNotes(r);
  if (!opt.lp_dump.empty()) writeFileAtomically(opt.lp_dump, lp_text);
  if (wantsJson(opt.out)) {
    writeOutput(opt.out, toJson(r, wall) + "\n");
  } else {
    writeOutput(opt.out, csvHeader() + "\n" + toCsvRow(r) + "\n");
  }
  std::cerr << "rezmet: " << toString(method) << " finished in " << wall << " s\n";
  return kExitOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Temporal-logic resilience metrics for discrete-time systems", "rezmet"};
  Options opt;
  app.add_option("--model", opt.model, "Model file (JSON)")->required();
  app.add_option("--formula", opt.formula, "Formula in prefix form; defaults to the model's formula");
  app.add_option("--method", opt.method, "exact-reach|safety|reach-lb|scenario|nonlinear-lp|bisect|oracle|auto")
      ->check(CLI::IsMember({"exact-reach", "safety", "reach-lb", "scenario", "nonlinear-lp", "bisect", "oracle", "auto"}));
  app.add_option("--x0", opt.x0, "Initial condition: a,b | point:a,b | box:lo:hi,... | hull:a,b;c,d");
  app.add_option("--grid", opt.grid, "Sweep grid lo:hi:step per coordinate");
  app.add_option("--horizon", opt.horizon, "Trace horizon N");
  app.add_option("--seed", opt.seed, "RNG seed for sampling methods");
  app.add_option("--tol", opt.tol, "Bisection tolerance");
  app.add_option("--out", opt.out, "Output file (.csv or .json); stdout when omitted");
  app.add_option("--emit-smt", opt.emit_smt, "Write the SMT-LIB falsification query at this epsilon");
  app.add_option("--solver-transcript", opt.transcript,
                 "Transcript session directory for bisect, or one transcript file with --emit-smt");
  app.add_option("--lp-dump", opt.lp_dump, "Write the assembled LPs in CPLEX LP format");
  app.add_option("--samples", opt.samples, "Samples per epsilon for the oracle and sampler falsifier");
  app.add_flag("--unsafe-vertex", opt.unsafe_vertex, "Allow vertex reduction without a convexity certificate");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return execute(opt);
  } catch (const Error& e) {
    std::cerr << "rezmet: error[" << toString(e.kind()) << "]: " << e.what() << "\n";
    return exitCode(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "rezmet: error[other]: " << e.what() << "\n";
    return kExitOther;
  }
}

}  // namespace rezmet::cli
