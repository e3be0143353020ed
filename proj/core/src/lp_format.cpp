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

#include <cmath>
#include <sstream>

#include "rezmet/lp.hpp"

namespace rezmet::lp {

namespace {

void writeTerms(std::ostringstream& out, const Vector& row, const std::vector<std::string>& names) {
  bool first = true;
  for (Index j = 0; j < row.size(); ++j) {
    double v = row(j);
    if (v == 0.0) continue;
    if (first) {
      if (v < 0) out << "- ";
    } else {
      out << (v < 0 ? " - " : " + ");
    }
    out << std::abs(v) << ' ' << names[static_cast<size_t>(j)];
    first = false;
  }
  if (first) out << "0 " << names.front();
}

}  // namespace

std::string toLpFormat(const LinearProgram& lp) {
  std::ostringstream out;
  out.precision(17);
  out << (lp.sense() == Sense::kMaximize ? "Maximize\n" : "Minimize\n") << " obj: ";
  writeTerms(out, lp.objective(), lp.names());
  out << "\nSubject To\n";
  for (size_t i = 0; i < lp.constraints().size(); ++i) {
    const Constraint& c = lp.constraints()[i];
    out << " c" << i << ": ";
    writeTerms(out, c.coefficients, lp.names());
    switch (c.relation) {
      case Relation::kLessEqual: out << " <= "; break;
      case Relation::kEqual: out << " = "; break;
      case Relation::kGreaterEqual: out << " >= "; break;
    }
    out << c.rhs << '\n';
  }
  out << "Bounds\n";
  for (Index j = 0; j < lp.variables(); ++j) {
    const Bound& b = lp.bounds()[static_cast<size_t>(j)];
    const std::string& name = lp.names()[static_cast<size_t>(j)];
    bool lo = std::isfinite(b.lower);
    bool hi = std::isfinite(b.upper);
    if (!lo && !hi) {
      out << ' ' << name << " free\n";
    } else if (lo && hi) {
      out << ' ' << b.lower << " <= " << name << " <= " << b.upper << '\n';
    } else if (lo) {
      if (b.lower != 0.0) out << ' ' << name << " >= " << b.lower << '\n';
    } else {
      out << " -inf <= " << name << " <= " << b.upper << '\n';
    }
  }
  out << "End\n";
  return out.str();
}

}  // namespace rezmet::lp
