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

#include "rezmet/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#include "rezmet/errors.hpp"
#include "rezmet/parallel.hpp"
#include "rezmet/rng.hpp"

namespace rezmet {

namespace {

constexpr std::size_t kChunk = 256;

std::size_t exhaustiveCount(const OracleConfig& config, Index inputs, int horizon) {
  Index bits = inputs * horizon;
  if (bits > config.exhaustive_vertex_bits || bits >= 63) return 0;
  return std::min<std::size_t>(std::size_t{1} << bits, config.samples_per_epsilon);
}

}  // namespace

DisturbanceTrace sampleDisturbance(const OracleConfig& config, Index inputs, int horizon, std::size_t index,
                                   double epsilon) {
  DisturbanceTrace t;
  t.bound = epsilon;
  t.steps.reserve(static_cast<size_t>(horizon));
  const std::size_t exhaustive = exhaustiveCount(config, inputs, horizon);
  CounterRng rng(config.seed);
  const bool vertex = index < exhaustive || rng.uniform(index, 0) < config.vertex_fraction;
  for (int k = 0; k < horizon; ++k) {
    Vector d(inputs);
    for (Index j = 0; j < inputs; ++j) {
      const std::uint64_t slot = 1 + static_cast<std::uint64_t>(k * inputs + j);
      if (index < exhaustive) {
        d(j) = (index >> (slot - 1)) & 1 ? epsilon : -epsilon;
      } else if (vertex) {
        d(j) = rng.bits(index, slot) & 1 ? epsilon : -epsilon;
      } else {
        d(j) = epsilon * rng.symmetric(index, slot);
      }
    }
    t.steps.push_back(std::move(d));
  }
  return t;
}

std::optional<DisturbanceTrace> falsifyAt(const Model& model, const Vector& x0, const ltlf::Formula& formula,
                                          int horizon, double epsilon, const OracleConfig& config) {
  if (!(epsilon >= 0.0)) fail(ErrorKind::kDomain, "epsilon must be non-negative");
  if (config.samples_per_epsilon == 0) fail(ErrorKind::kDomain, "oracle needs a positive sample count");
  const Index m = inputDimension(model);
  auto violates = [&](const DisturbanceTrace& d) {
    return !ltlf::evaluate(formula, simulate(model, x0, d).trace, 0, config.eval);
  };
  if (epsilon == 0.0) {
    DisturbanceTrace d = DisturbanceTrace::zero(m, horizon);
    if (violates(d)) return d;
    return std::nullopt;
  }
  const std::size_t total = config.samples_per_epsilon;
  const std::size_t chunks = (total + kChunk - 1) / kChunk;
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  parallelFor(
      chunks,
      [&](size_t c) {
        const std::size_t begin = c * kChunk;
        const std::size_t end = std::min(total, begin + kChunk);
        for (std::size_t i = begin; i < end; ++i) {
          if (i >= best.load()) return;
          if (violates(sampleDisturbance(config, m, horizon, i, epsilon))) {
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            return;
          }
        }
      },
      config.threads);
  if (best.load() == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return sampleDisturbance(config, m, horizon, best.load(), epsilon);
}

ResilienceResult estimateResilience(const Model& model, const Vector& x0, const ltlf::Formula& formula, int horizon,
                                    const OracleConfig& config) {
  if (config.grid_points < 1) fail(ErrorKind::kDomain, "oracle grid needs at least one point");
  ResilienceResult out;
  out.method = "oracle";
  out.kind = ResultKind::kUpperBound;
  out.seed = config.seed;
  out.samples = config.samples_per_epsilon;

  if (auto w = falsifyAt(model, x0, formula, horizon, 0.0, config)) {
    out.value = 0.0;
    out.bracket_lower = 0.0;
    out.bracket_upper = 0.0;
    out.witness = std::move(w);
    out.notes.push_back("nominal trajectory violates the formula");
    return out;
  }

  double cap = 0.0;
  if (config.cap) {
    cap = *config.cap;
  } else {
    for (double e = 1e-3; e <= config.cap_limit; e *= 2.0) {
      cap = e;
      if (falsifyAt(model, x0, formula, horizon, e, config)) break;
    }
  }
  const int g = config.grid_points;
  double lo = 0.0;
  double hi = kInfinity;
  std::optional<DisturbanceTrace> witness;
  for (int i = 1; i <= g; ++i) {
    double e = cap * i / g;
    if (auto w = falsifyAt(model, x0, formula, horizon, e, config)) {
      hi = e;
      witness = std::move(w);
      break;
    }
    lo = e;
  }
  if (!std::isfinite(hi)) {
    out.value = kInfinity;
    out.bracket_lower = lo;
    out.bracket_upper = kInfinity;
    out.notes.push_back(">= " + formatValue(lo) + " (no violation found up to the cap)");
    return out;
  }
  for (int it = 0; it < 80 && hi - lo > config.resolution; ++it) {
    double mid = 0.5 * (lo + hi);
    if (auto w = falsifyAt(model, x0, formula, horizon, mid, config)) {
      hi = mid;
      witness = std::move(w);
    } else {
      lo = mid;
    }
  }
  out.value = lo;
  out.bracket_lower = lo;
  out.bracket_upper = hi;
  out.witness = std::move(witness);
  return out;
}

}  // namespace rezmet
