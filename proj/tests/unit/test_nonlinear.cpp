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
#include <regex>
#include <sstream>

#include "rezmet/errors.hpp"
#include "rezmet/resilience_linear.hpp"
#include "rezmet/resilience_nonlinear.hpp"

namespace rezmet {
namespace {

struct Scalar {
  LinearSystem sys{Matrix{{0.5}}};
  Model model = sys;
  Polytope target = IntervalBox(Vector{{-1.0}}, Vector{{1.0}}).toPolytope();
  ltlf::RegionTable regions;
  ltlf::Formula formula = ltlf::Formula::truth();
  Scalar() {
    regions.emplace("T", std::make_shared<ltlf::AtomicPredicate>(ltlf::AtomicPredicate{"T", ltlf::Region(target)}));
    formula = ltlf::parseFormula("(next 2 (atom T))", regions);
  }
};

std::filesystem::path freshDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("rezmet-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(Bisect, SamplerMatchesExactOnLinearSystem) {
  Scalar s;
  double exact = exactTimeReach(s.sys, Vector{{0.0}}, s.target, 2).value;
  OracleConfig c;
  c.samples_per_epsilon = 200;
  SamplerFalsifier f(c);
  BisectionOptions opt;
  opt.tolerance = 1e-6;
  ResilienceResult r = bisectFalsify(s.model, Vector{{0.0}}, s.formula, 2, f, opt);
  EXPECT_EQ(r.kind, ResultKind::kLowerBound);
  EXPECT_NEAR(r.value, exact, 2e-6);
  ASSERT_TRUE(r.bracket_lower && r.bracket_upper);
  EXPECT_LE(*r.bracket_lower, exact + 1e-12);
  EXPECT_GE(*r.bracket_upper, exact - 1e-12);
}

TEST(Bisect, NominalViolationIsZero) {
  Scalar s;
  SamplerFalsifier f;
  EXPECT_DOUBLE_EQ(bisectFalsify(s.model, Vector{{9.0}}, s.formula, 2, f).value, 0.0);
}

// Drives a full transcript session, answering each emitted query from the
// closed form |x_2| = 1.5 eps (sat above 2/3, unsat below).
TEST(Bisect, TranscriptSessionConverges) {
  Scalar s;
  auto dir = freshDir("session");
  BisectionOptions opt;
  opt.tolerance = 1e-5;
  ResilienceResult r;
  int rounds = 0;
  while (true) {
    TranscriptFalsifier f(dir);
    try {
      r = bisectFalsify(s.model, Vector{{0.0}}, s.formula, 2, f, opt);
      break;
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::kAwaitingTranscript);
      ASSERT_LT(++rounds, 500);
      // Answer the newest query.
      int i = 0;
      while (std::filesystem::exists(dir / ("query-" + std::to_string(i) + ".out"))) ++i;
      auto script = dir / ("query-" + std::to_string(i) + ".smt2");
      ASSERT_TRUE(std::filesystem::exists(script));
      std::ifstream in(script);
      std::stringstream buf;
      buf << in.rdbuf();
      std::smatch m;
      std::string text = buf.str();
      ASSERT_TRUE(std::regex_search(text, m, std::regex(R"(\(<= d_0_0 ([0-9.]+)\))")));
      double eps = std::stod(m[1]);
      std::ofstream out(dir / ("query-" + std::to_string(i) + ".out"));
      if (1.5 * eps > 1.0) {
        out << "sat\nd_0_0 " << eps << "\nd_1_0 " << eps << "\n";
      } else {
        out << "unsat\n";
      }
    }
  }
  EXPECT_EQ(r.kind, ResultKind::kExactUpToDelta);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 2e-5);
  std::filesystem::remove_all(dir);
}

TEST(Bisect, MissingAnswerWritesScript) {
  Scalar s;
  auto dir = freshDir("await");
  TranscriptFalsifier f(dir);
  try {
    bisectFalsify(s.model, Vector{{0.0}}, s.formula, 2, f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAwaitingTranscript);
  }
  EXPECT_TRUE(std::filesystem::exists(dir / "query-0.smt2"));
  std::filesystem::remove_all(dir);
}

TEST(AtomicWrite, ReplacesContent) {
  auto dir = freshDir("atomic");
  auto p = dir / "f.txt";
  writeFileAtomically(p, "one");
  writeFileAtomically(p, "two");
  std::ifstream in(p);
  std::string s;
  in >> s;
  EXPECT_EQ(s, "two");
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace rezmet
