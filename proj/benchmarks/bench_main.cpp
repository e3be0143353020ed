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

#include <benchmark/benchmark.h>

#include <random>

#include "rezmet/farkas.hpp"
#include "rezmet/model_io.hpp"
#include "rezmet/oracle.hpp"
#include "rezmet/resilience_linear.hpp"
#include "rezmet/scenario.hpp"

namespace rezmet {
namespace {

ModelFile load(const char* name) { return loadModelFile(std::string(REZMET_MODELS_DIR) + "/" + name + ".json"); }

void BM_SimplexRobustLp(benchmark::State& state) {
  const Index rows = state.range(0);
  const Index dim = state.range(1);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RobustConstraintSystem rcs;
  rcs.e = Matrix::NullaryExpr(rows, dim, [&]() { return u(rng); });
  rcs.f = Vector::NullaryExpr(rows, [&]() { return 1.0 + u(rng) * 0.5; });
  rcs.disturbances = DisturbanceTemplate::unitBox(dim);
  for (auto _ : state) benchmark::DoNotOptimize(solveRobust(rcs, RobustSolveMode::kJoint).epsilon);
}
BENCHMARK(BM_SimplexRobustLp)->Args({4, 6})->Args({8, 12})->Args({16, 24});

void BM_ExactReachExample42(benchmark::State& state) {
  ModelFile f = load("example42");
  const auto& sys = std::get<LinearSystem>(f.model);
  const Polytope& t = *f.regions.at("Gamma")->region.polytope();
  Vector x0{{-4.0, 6.0}};
  for (auto _ : state) benchmark::DoNotOptimize(exactTimeReach(sys, x0, t, 3).value);
}
BENCHMARK(BM_ExactReachExample42);

void BM_SafetyTemperature(benchmark::State& state) {
  ModelFile f = load("temperature_s2");
  const auto& sys = std::get<LinearSystem>(f.model);
  const Polytope& s = *f.regions.at("XS")->region.polytope();
  Vector x0 = Vector::Constant(9, 51.0);
  for (auto _ : state) benchmark::DoNotOptimize(finiteHorizonSafety(sys, x0, s, 2).value);
}
BENCHMARK(BM_SafetyTemperature);

void BM_ScenarioScalar(benchmark::State& state) {
  LinearSystem sys(Matrix{{0.5}});
  Polytope t = IntervalBox(Vector{{-1.0}}, Vector{{1.0}}).toPolytope();
  ScenarioConfig c;
  c.eta = std::vector<double>(3, state.range(0) / 1000.0);
  c.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(scenarioReach(sys, Vector{{1.5}}, t, 2, c).value);
}
BENCHMARK(BM_ScenarioScalar)->Arg(50)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_OracleExample42(benchmark::State& state) {
  ModelFile f = load("example42");
  ltlf::Formula phi = ltlf::parseFormula(*f.formula, f.regions);
  OracleConfig c;
  c.samples_per_epsilon = 500;
  c.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(estimateResilience(f.model, Vector{{-4.0, 6.0}}, phi, 3, c).value);
}
BENCHMARK(BM_OracleExample42)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace rezmet

BENCHMARK_MAIN();
