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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rezmet/smt.hpp"
#include "rezmet_cli/app.hpp"
#include "rezmet_cli/dispatch.hpp"

namespace rezmet::cli {
namespace {

std::string model(const std::string& name) { return std::string(REZMET_MODELS_DIR) + "/" + name + ".json"; }

std::filesystem::path tmp(const std::string& name) { return std::filesystem::temp_directory_path() / ("rezmet-cli-" + name); }

int runArgs(std::vector<std::string> args) {
  args.insert(args.begin(), "rezmet");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::vector<std::string>> csvRows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') {
        quoted = !quoted;
      } else if (c == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(CliParse, InitialSpecs) {
  EXPECT_EQ(parseInitialSpec("1,0.5").points.size(), 1u);
  EXPECT_FALSE(parseInitialSpec("point:1,0.5").is_set);
  InitialSpec box = parseInitialSpec("box:0:1,2:3");
  EXPECT_TRUE(box.is_set);
  EXPECT_EQ(box.points.size(), 4u);
  InitialSpec hull = parseInitialSpec("hull:0,0;1,0;0,1");
  EXPECT_EQ(hull.points.size(), 3u);
  EXPECT_DOUBLE_EQ(hull.points[1](0), 1.0);
  EXPECT_THROW(parseInitialSpec("box:0,1"), Error);
  EXPECT_THROW(parseInitialSpec("1,x"), Error);
}

TEST(CliParse, GridIsRowMajor) {
  std::vector<Vector> g = parseGrid("0:1:0.5,10:11:1");
  ASSERT_EQ(g.size(), 6u);
  EXPECT_DOUBLE_EQ(g[0](0), 0.0);
  EXPECT_DOUBLE_EQ(g[1](1), 11.0);
  EXPECT_DOUBLE_EQ(g[2](0), 0.5);
  EXPECT_EQ(parseGrid("-4:6:0.25,-4:6:0.25").size(), 41u * 41u);
  EXPECT_THROW(parseGrid("0:1:0"), Error);
  EXPECT_THROW(parseGrid("1:0:0.1"), Error);
}

TEST(CliParse, ExitCodes) {
  EXPECT_EQ(exitCode(ErrorKind::kParse), 3);
  EXPECT_EQ(exitCode(ErrorKind::kDimension), 4);
  EXPECT_EQ(exitCode(ErrorKind::kInfeasible), 5);
  EXPECT_EQ(exitCode(ErrorKind::kNumerical), 6);
  EXPECT_EQ(exitCode(ErrorKind::kUnsupported), 7);
  EXPECT_EQ(exitCode(ErrorKind::kAwaitingTranscript), 8);
}

TEST(Cli, ErrorExitCodes) {
  auto out = tmp("err.csv").string();
  EXPECT_EQ(runArgs({"--model", model("example42"), "--formula", "(next 3 (atom Nope))", "--out", out}), 3);
  EXPECT_EQ(runArgs({"--model", model("example42"), "--x0", "1,2,3", "--out", out}), 4);
  EXPECT_EQ(runArgs({"--model", model("example42"), "--method", "magic"}), 2);
  EXPECT_EQ(runArgs({"--model", "/nonexistent.json", "--out", out}), 1);
  EXPECT_EQ(runArgs({"--model", model("acc"), "--method", "exact-reach", "--out", out}), 7);
  EXPECT_EQ(runArgs({"--model", model("example42"), "--grid", "0:1:0", "--out", out}), 3);
}

TEST(Cli, TwoByTwoGridMatchesCorners) {
  auto out = tmp("grid.csv");
  ASSERT_EQ(runArgs({"--model", model("example42"), "--method", "exact-reach", "--grid", "-4:6:10,-4:6:10", "--out",
                     out.string()}),
            0);
  auto rows = csvRows(slurp(out));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0][0], "x1");
  EXPECT_EQ(rows[0][2], "value");
  const double expected[] = {0.14169741697, 0.11667233090, 0.13800738007, 0.12036236780};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::stod(rows[static_cast<size_t>(i) + 1][2]), expected[i], 1e-9);
  EXPECT_EQ(rows[2][0], "-4");
  EXPECT_EQ(rows[2][1], "6");
}

TEST(Cli, SinglePointGridEqualsPointCompute) {
  auto g = tmp("one.csv"), p = tmp("pt.csv");
  ASSERT_EQ(runArgs({"--model", model("example42"), "--grid", "1:1:1,2:2:1", "--out", g.string()}), 0);
  ASSERT_EQ(runArgs({"--model", model("example42"), "--x0", "1,2", "--out", p.string()}), 0);
  auto rg = csvRows(slurp(g)), rp = csvRows(slurp(p));
  ASSERT_EQ(rg.size(), 2u);
  ASSERT_EQ(rp.size(), 2u);
  EXPECT_EQ(std::vector<std::string>(rg[1].begin() + 2, rg[1].end()), rp[1]);
}

TEST(Cli, SweepIsByteIdenticalAcrossRuns) {
  auto a = tmp("det-a.csv"), b = tmp("det-b.csv");
  for (const auto& p : {a, b}) {
    ASSERT_EQ(runArgs({"--model", model("example42"), "--method", "oracle", "--samples", "200", "--seed", "5",
                       "--grid", "-4:6:5,-4:6:5", "--out", p.string()}),
              0);
  }
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, OracleBracketsContainExactOnMostOf25Points) {
  auto ex = tmp("x25.csv");
  ASSERT_EQ(runArgs({"--model", model("example42"), "--method", "exact-reach", "--grid", "-4:6:2.5,-4:6:2.5", "--out",
                     ex.string()}),
            0);
  auto exact = csvRows(slurp(ex));
  ASSERT_EQ(exact.size(), 26u);
  ModelFile f = loadModelFile(model("example42"));
  Context ctx;
  ctx.file = &f;
  ctx.formula = ltlf::parseFormula(*f.formula, f.regions);
  ctx.oracle.samples_per_epsilon = 500;
  int contained = 0;
  for (size_t i = 1; i < exact.size(); ++i) {
    Vector x{{std::stod(exact[i][0]), std::stod(exact[i][1])}};
    ResilienceResult r = computeAt(ctx, x, Method::kOracle);
    double v = std::stod(exact[i][2]);
    if (r.bracket_lower && *r.bracket_lower <= v + 1e-12 && v <= r.bracket_upper.value_or(kInfinity) + 1e-12) {
      ++contained;
    }
  }
  EXPECT_GE(contained, 23);
}

TEST(Cli, JsonOutputCarriesWallTime) {
  auto out = tmp("r.json");
  ASSERT_EQ(runArgs({"--model", model("example42"), "--out", out.string()}), 0);
  auto j = nlohmann::json::parse(slurp(out));
  EXPECT_TRUE(j.contains("wall_time_s"));
  EXPECT_EQ(j["method"], "vertex(exact-reach)");
}

TEST(Cli, EmitSmtWritesValidScript) {
  auto out = tmp("acc.smt2");
  ASSERT_EQ(runArgs({"--model", model("acc"), "--emit-smt", "0.0121", "--out", out.string()}), 0);
  std::string script = slurp(out);
  EXPECT_TRUE(checkSmtSyntax(script).empty());
  EXPECT_NE(script.find("(check-sat)"), std::string::npos);
}

TEST(Cli, LpDumpWritten) {
  auto out = tmp("d.csv"), dump = tmp("d.lp");
  ASSERT_EQ(runArgs({"--model", model("example42"), "--x0", "-4,6", "--method", "exact-reach", "--lp-dump",
                     dump.string(), "--out", out.string()}),
            0);
  std::string text = slurp(dump);
  EXPECT_NE(text.find("Maximize"), std::string::npos);
  EXPECT_NE(text.find("eps"), std::string::npos);
}

// Auto dispatch routes each bundled model through the documented method.
TEST(Cli, AutoDispatchTable) {
  struct Case {
    const char* name;
    const char* x0;
    const char* method;
  };
  for (const Case& c : {Case{"example42", "1,1", "exact-reach"}, Case{"temperature_s1", "24.5,24.5,24.5,24.5,24.5,24.5,24.5,24.5,24.5", "and(safety,exact-reach)"},
                        Case{"acc", "60,15", "and(nonlinear-lp,nonlinear-lp)"}, Case{"dcmotor", "0.4,0.5", "scenario"}}) {
    ModelFile f = loadModelFile(model(c.name));
    Context ctx;
    ctx.file = &f;
    ctx.formula = ltlf::parseFormula(*f.formula, f.regions);
    ResilienceResult r = computeAt(ctx, parseInitialSpec(c.x0).points[0], Method::kAuto);
    EXPECT_EQ(r.method, c.method) << c.name;
  }
}

TEST(Cli, DisjunctionWarns) {
  ModelFile f = loadModelFile(model("example42"));
  Context ctx;
  ctx.file = &f;
  ctx.formula = ltlf::parseFormula("(or (next 2 (atom Gamma)) (next 3 (atom Gamma)))", f.regions);
  ResilienceResult r = computeAt(ctx, Vector{{1.0, 1.0}}, Method::kAuto);
  EXPECT_EQ(r.kind, ResultKind::kLowerBound);
  bool warned = false;
  for (const auto& n : r.notes) warned = warned || n.rfind("WARNING", 0) == 0;
  EXPECT_TRUE(warned);
}

TEST(Cli, ConjunctsFlatten) {
  ModelFile f = loadModelFile(model("temperature_s2"));
  EXPECT_EQ(conjuncts(ltlf::parseFormula(*f.formula, f.regions)).size(), 3u);
}

}  // namespace
}  // namespace rezmet::cli
