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
#include <string>
#include <string_view>
#include <vector>

#include "rezmet/ltlf.hpp"
#include "rezmet/system.hpp"

namespace rezmet {

/// Does some disturbance with |d_k|_inf <= epsilon violate the formula?
struct FalsificationQuery {
  const Model* model = nullptr;
  Vector x0;
  ltlf::Formula formula = ltlf::Formula::truth();
  int horizon = 0;
  double epsilon = 0.0;
  ltlf::EvalOptions eval;
};

/// SMT-LIB 2 script: d_k_j in [-eps, eps], x_k_i unrolled for N steps,
/// (assert (not <formula at step 0>)), (check-sat). A sat answer is a
/// violating disturbance.
std::string emitSmtQuery(const FalsificationQuery& query);

/// Structural check of an SMT-LIB script (balance, commands, declared
/// symbols, operator arity, numerals). Empty when clean.
std::vector<std::string> checkSmtSyntax(std::string_view script);

enum class SmtVerdict { kSat, kUnsat, kDeltaSat };

/// First line `sat`, `unsat` or `delta-sat`; then `name value` lines.
struct SolverTranscript {
  SmtVerdict verdict = SmtVerdict::kUnsat;
  std::map<std::string, double> values;

  static SolverTranscript parse(std::string_view text);
  /// d_k_j values as a disturbance trace; missing entries are an error.
  DisturbanceTrace disturbance(Index inputs, int horizon, double epsilon) const;
};

std::string_view toString(SmtVerdict verdict);

}  // namespace rezmet
