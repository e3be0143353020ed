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

#include "rezmet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rezmet/errors.hpp"
#include "rezmet/parallel.hpp"
#include "rezmet/rng.hpp"

namespace rezmet {

namespace {

void checkEta(const std::vector<double>& eta, int horizon) {
  if (horizon < 1) fail(ErrorKind::kDimension, "scenario horizon must be >= 1");
  if (eta.size() != static_cast<size_t>(horizon) + 1) {
    fail(ErrorKind::kDimension, "eta needs N+1 = " + std::to_string(horizon + 1) + " entries, got " +
                                    std::to_string(eta.size()));
  }
  for (double e : eta) {
    if (!(e > 0.0 && e <= 1.0)) fail(ErrorKind::kDomain, "eta entries must lie in (0, 1]");
  }
}

double failureSum(const std::vector<double>& rates, std::size_t m) {
  double s = 0.0;
  for (double r : rates) s += std::pow(r, static_cast<double>(m));
  return s;
}

}  // namespace

std::size_t requiredSamples(const ScenarioConfig& config, int horizon) {
  checkEta(config.eta, horizon);
  if (!(config.beta > 0.0 && config.beta <= 1.0)) fail(ErrorKind::kDomain, "beta must lie in (0, 1]");
  std::vector<double> rates;
  double worst = 0.0;
  for (double e : config.eta) {
    rates.push_back(1.0 - std::pow(e, 1.0 / horizon));
    worst = std::max(worst, rates.back());
  }
  if (worst <= 0.0) return 1;
  // worst^M <= sum <= (N+1) worst^M brackets the answer.
  double lw = std::log(worst);
  auto lo = static_cast<std::size_t>(std::max(1.0, std::floor(std::log(config.beta) / lw)));
  auto hi = static_cast<std::size_t>(std::ceil(std::log(config.beta / static_cast<double>(rates.size())) / lw)) + 1;
  for (std::size_t m = lo; m <= hi; ++m) {
    if (failureSum(rates, m) <= config.beta) return m;
  }
  return hi;
}

Vector gammaMargins(const LinearSystem& sys, const Vector& x0, const Polytope& target, int horizon,
                    const std::vector<double>& eta) {
  checkEta(eta, horizon);
  if (x0.size() != sys.stateDimension() || target.dimension() != sys.stateDimension()) {
    fail(ErrorKind::kDimension, "scenario margins: dimension mismatch");
  }
  const double a = spectralNorm(sys.A());
  const double gx = (target.G() * x0).norm();
  const double h = target.H().norm();
  Vector gamma(horizon + 1);
  for (int k = 1; k <= horizon + 1; ++k) {
    gamma(k - 1) = (std::pow(a, k - 1) * gx + h) * std::pow(eta[static_cast<size_t>(k - 1)], 1.0 / horizon);
  }
  return gamma;
}

ResilienceResult scenarioReach(const LinearSystem& sys, const Vector& x0, const Polytope& target, int horizon,
                               const ScenarioConfig& config, const LinearOptions& options) {
  checkEta(config.eta, horizon);
  if (config.samples_override && *config.samples_override == 0) fail(ErrorKind::kDomain, "sample count must be >= 1");
  if (config.grid_points < 2) fail(ErrorKind::kDomain, "scenario grid needs at least two points");
  const Index n = sys.stateDimension();
  const Index m = sys.inputDimension();
  const Index q = target.facets();
  if (x0.size() != n || target.dimension() != n) fail(ErrorKind::kDimension, "scenario: dimension mismatch");

  ResilienceResult out;
  out.method = "scenario";
  out.seed = config.seed;

  // Nominal state at steps 0..N; a trajectory that never enters has
  // resilience zero.
  std::vector<Vector> nominal{x0};
  for (int k = 1; k <= horizon; ++k) nominal.push_back(sys.A() * nominal.back());
  if (std::none_of(nominal.begin(), nominal.end(), [&](const Vector& x) { return target.contains(x); })) {
    out.value = 0.0;
    out.kind = ResultKind::kExact;
    out.notes.push_back("nominal trajectory never enters the target");
    return out;
  }

  const std::size_t samples = config.samples_override.value_or(requiredSamples(config, horizon));
  const Vector gamma = gammaMargins(sys, x0, target, horizon, config.eta);
  out.samples = samples;
  out.gamma = toStdVector(gamma);

  // a_k = G A^{k-1} x0 - H; s_{k,i} = G sum_{j<k-1} A^{k-2-j} W z_j^i.
  const int disjuncts = horizon + 1;
  std::vector<Vector> a(static_cast<size_t>(disjuncts));
  for (int k = 1; k <= disjuncts; ++k) {
    a[static_cast<size_t>(k - 1)] = target.G() * nominal[static_cast<size_t>(k - 1)] - target.H();
  }
  CounterRng rng(config.seed);
  std::vector<Matrix> s(samples, Matrix::Zero(q, disjuncts));
  std::vector<std::vector<Vector>> draws(samples);
  parallelFor(
      samples,
      [&](size_t i) {
        std::vector<Vector>& z = draws[i];
        for (int j = 0; j < horizon; ++j) {
          Vector zj(m);
          for (Index c = 0; c < m; ++c) zj(c) = rng.symmetric(i, static_cast<std::uint64_t>(j * m + c));
          z.push_back(std::move(zj));
        }
        Vector state = Vector::Zero(n);
        for (int k = 2; k <= disjuncts; ++k) {
          state = sys.A() * state + sys.W() * z[static_cast<size_t>(k - 2)];
          s[i].col(k - 1) = target.G() * state;
        }
      },
      config.threads);

  auto sampleOk = [&](size_t i, double mu) {
    for (int k = 0; k < disjuncts; ++k) {
      double worst = (mu * a[static_cast<size_t>(k)] + s[i].col(k)).maxCoeff() + gamma(k);
      if (worst <= 0.0) return true;
    }
    return false;
  };
  auto firstFailure = [&](double mu) -> std::optional<size_t> {
    for (size_t i = 0; i < samples; ++i) {
      if (!sampleOk(i, mu)) return i;
    }
    return std::nullopt;
  };

  double mu_bar = 0.0;
  if (config.mu_bar) {
    mu_bar = *config.mu_bar;
  } else {
    ResilienceResult lb = finiteHorizonReachLower(sys, x0, target, horizon, options);
    if (lb.value > 0.0 && std::isfinite(lb.value)) mu_bar = 1.0 / lb.value;
  }
  if (!(mu_bar > 0.0) || firstFailure(mu_bar)) {
    // No usable bound from the exact side; search upward.
    double probe = mu_bar > 0.0 ? mu_bar : 1.0;
    bool found = false;
    for (int t = 0; t < 80 && !found; ++t, probe *= 2.0) {
      if (!firstFailure(probe)) {
        mu_bar = probe;
        found = true;
      }
    }
    if (!found) {
      auto bad = firstFailure(probe);
      out.value = 0.0;
      out.kind = ResultKind::kProbabilistic;
      out.confidence = 1.0 - config.beta;
      out.notes.push_back("scenario program infeasible up to mu = " + formatValue(probe));
      if (bad) {
        DisturbanceTrace w;
        w.steps = draws[*bad];
        w.bound = 1.0;
        out.witness = std::move(w);
      }
      return out;
    }
    out.notes.push_back("mu_bar raised to " + formatValue(mu_bar));
  }

  const int g = config.grid_points;
  std::vector<char> feasible(static_cast<size_t>(g));
  for (int i = 1; i <= g; ++i) feasible[static_cast<size_t>(i - 1)] = !firstFailure(mu_bar * i / g);
  int least = -1;
  for (int i = 1; i <= g; ++i) {
    if (feasible[static_cast<size_t>(i - 1)]) {
      least = i;
      break;
    }
  }
  if (least < 0) least = g;  // mu_bar itself is feasible
  for (int i = least + 1; i <= g; ++i) {
    if (!feasible[static_cast<size_t>(i - 1)]) {
      out.notes.push_back("feasibility is not monotone in mu on the grid");
      break;
    }
  }
  double lo = mu_bar * (least - 1) / g;
  double hi = mu_bar * least / g;
  for (int it = 0; it < config.bisection_steps; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (firstFailure(mid) ? lo : hi) = mid;
  }
  out.value = 1.0 / hi;
  out.kind = ResultKind::kProbabilistic;
  out.confidence = 1.0 - config.beta;
  double eta_max = *std::max_element(config.eta.begin(), config.eta.end());
  out.notes.push_back("objective accuracy within " + formatValue(eta_max) + " at confidence " +
                      formatValue(out.confidence));
  return out;
}

}  // namespace rezmet
