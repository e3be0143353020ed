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

#include "rezmet/result.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "json.hpp"
#include "rezmet/errors.hpp"

namespace rezmet {

std::string_view toString(ResultKind kind) {
  switch (kind) {
    case ResultKind::kExact: return "exact";
    case ResultKind::kExactUpToDelta: return "exact-up-to-delta";
    case ResultKind::kLowerBound: return "lower-bound";
    case ResultKind::kUpperBound: return "upper-bound";
    case ResultKind::kProbabilistic: return "probabilistic";
    case ResultKind::kHeuristic: return "heuristic";
  }
  return "unknown";
}

std::string formatValue(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

class Fnv1a {
 public:
  void add(double v) {
    std::string s = formatValue(v);
    for (char c : s) mix(static_cast<unsigned char>(c));
    mix(',');
  }
  void mix(unsigned char c) {
    h_ ^= c;
    h_ *= 0x100000001b3ULL;
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return formatValue(v);
}

}  // namespace

std::string certificateDigest(const ResilienceResult& result) {
  Fnv1a h;
  if (result.certificate) {
    const Matrix& p = result.certificate->p;
    h.add(static_cast<double>(p.rows()));
    h.add(static_cast<double>(p.cols()));
    for (Index i = 0; i < p.rows(); ++i) {
      for (Index j = 0; j < p.cols(); ++j) h.add(p(i, j));
    }
    h.add(result.certificate->epsilon);
    return h.hex();
  }
  if (result.witness) {
    for (const Vector& d : result.witness->steps) {
      for (Index j = 0; j < d.size(); ++j) h.add(d(j));
      h.mix(';');
    }
    return h.hex();
  }
  return "none";
}

std::string csvHeader() { return "value,kind,method,confidence,seed,certificate_digest"; }

std::string toCsvRow(const ResilienceResult& r) {
  std::string method = r.method;
  if (method.find_first_of(",\"") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : method) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    method = quoted + "\"";
  }
  return formatValue(r.value) + "," + std::string(toString(r.kind)) + "," + method + "," +
         formatValue(r.confidence) + "," + (r.seed ? std::to_string(*r.seed) : std::string()) + "," +
         certificateDigest(r);
}

std::string toJson(const ResilienceResult& r, std::optional<double> wall_time_s) {
  nlohmann::ordered_json j;
  j["value"] = number(r.value);
  j["kind"] = toString(r.kind);
  j["method"] = r.method;
  j["confidence"] = r.confidence;
  j["certificate_digest"] = certificateDigest(r);
  if (r.bracket_lower) j["bracket"] = {number(*r.bracket_lower), number(r.bracket_upper.value_or(kInfinity))};
  if (r.seed) j["seed"] = *r.seed;
  if (r.samples) j["samples"] = *r.samples;
  if (!r.gamma.empty()) j["gamma"] = r.gamma;
  if (r.witness) {
    nlohmann::json w = nlohmann::json::array();
    for (const Vector& d : r.witness->steps) w.push_back(toStdVector(d));
    j["witness"] = std::move(w);
  }
  if (r.lp_iterations > 0) j["lp_iterations"] = r.lp_iterations;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (wall_time_s) j["wall_time_s"] = *wall_time_s;
  return j.dump();
}

namespace {

ResultKind combineKinds(std::span<const ResilienceResult> results, bool disjunction, double* confidence) {
  std::set<ResultKind> kinds;
  double miss = 0.0;
  for (const auto& r : results) {
    kinds.insert(r.kind);
    miss += 1.0 - r.confidence;
  }
  *confidence = std::max(0.0, 1.0 - miss);
  auto subset = [&](std::initializer_list<ResultKind> allowed) {
    return std::all_of(kinds.begin(), kinds.end(), [&](ResultKind k) {
      return std::find(allowed.begin(), allowed.end(), k) != allowed.end();
    });
  };
  using K = ResultKind;
  if (kinds.count(K::kProbabilistic) && subset({K::kExact, K::kExactUpToDelta, K::kLowerBound, K::kProbabilistic})) {
    return K::kProbabilistic;
  }
  *confidence = 1.0;
  if (!disjunction) {
    if (subset({K::kExact})) return K::kExact;
    if (subset({K::kExact, K::kExactUpToDelta})) return K::kExactUpToDelta;
    if (subset({K::kExact, K::kUpperBound})) return K::kUpperBound;
  }
  if (subset({K::kExact, K::kExactUpToDelta, K::kLowerBound})) return K::kLowerBound;
  return K::kHeuristic;
}

ResilienceResult compose(std::span<const ResilienceResult> results, bool disjunction) {
  if (results.empty()) fail(ErrorKind::kDimension, "composition needs at least one result");
  size_t pick = 0;
  for (size_t i = 1; i < results.size(); ++i) {
    bool better = disjunction ? results[i].value > results[pick].value : results[i].value < results[pick].value;
    if (better) pick = i;
  }
  ResilienceResult out = results[pick];
  out.kind = combineKinds(results, disjunction, &out.confidence);
  std::string method = disjunction ? "or(" : "and(";
  for (size_t i = 0; i < results.size(); ++i) method += (i ? "," : "") + results[i].method;
  out.method = method + ")";
  out.notes.clear();
  out.lp_iterations = 0;
  for (const auto& r : results) {
    out.notes.insert(out.notes.end(), r.notes.begin(), r.notes.end());
    out.lp_iterations += r.lp_iterations;
  }
  return out;
}

}  // namespace

ResilienceResult composeConjunction(std::span<const ResilienceResult> results) { return compose(results, false); }

ResilienceResult composeDisjunctionLower(std::span<const ResilienceResult> results) {
  return compose(results, true);
}

}  // namespace rezmet
