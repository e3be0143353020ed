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

#include <string>
#include <string_view>
#include <vector>

namespace rezmet::detail {

/// Minimal s-expression tree shared by the formula reader and the SMT-LIB
/// checker.
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  size_t offset = 0;

  bool isAtom(std::string_view s) const { return !is_list && atom == s; }
};

struct SExprReadResult {
  std::vector<SExpr> forms;
  std::string error;  // empty on success
  size_t error_offset = 0;
};

/// Reads a sequence of top-level forms. `;` starts a line comment; `|...|`
/// quoted symbols and `"..."` strings are kept verbatim as atoms.
SExprReadResult readSExprs(std::string_view text);

std::string printSExpr(const SExpr& e);

}  // namespace rezmet::detail
