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

#include "rezmet/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rezmet/errors.hpp"

namespace rezmet {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(ErrorKind::kParse, "model: " + where + ": " + what);
}

void allowOnly(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) bad(where, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) bad(where, "unknown key '" + it.key() + "'");
  }
}

const json& require(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) bad(where, std::string("missing '") + key + "'");
  return obj.at(key);
}

double number(const json& v, const std::string& where, const std::map<std::string, double>& params) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    expr::Expression e = expr::Expression::parse(v.get<std::string>(), {}, params);
    if (!e.isConstant()) bad(where, "expression is not constant");
    return e.constantValue();
  }
  bad(where, "expected a number");
}

Vector vector(const json& v, const std::string& where, const std::map<std::string, double>& params) {
  if (!v.is_array() || v.empty()) bad(where, "expected a non-empty array");
  Vector out(static_cast<Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = number(v[i], where, params);
  return out;
}

Matrix matrix(const json& v, const std::string& where, const std::map<std::string, double>& params) {
  if (!v.is_array() || v.empty()) bad(where, "expected an array of rows");
  const size_t cols = v[0].is_array() ? v[0].size() : 0;
  if (cols == 0) bad(where, "expected an array of rows");
  Matrix out(static_cast<Index>(v.size()), static_cast<Index>(cols));
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array() || v[i].size() != cols) bad(where, "rows differ in length");
    for (size_t j = 0; j < cols; ++j) {
      out(static_cast<Index>(i), static_cast<Index>(j)) = number(v[i][j], where, params);
    }
  }
  return out;
}

IntervalBox box(const json& v, const std::string& where, const std::map<std::string, double>& params) {
  allowOnly(v, where, {"lower", "upper"});
  Vector lo = vector(require(v, where, "lower"), where + ".lower", params);
  Vector hi = vector(require(v, where, "upper"), where + ".upper", params);
  try {
    return IntervalBox(lo, hi);
  } catch (const Error& e) {
    bad(where, e.what());
  }
}

Polytope polytope(const json& v, const std::string& where, const std::map<std::string, double>& params) {
  if (v.contains("box")) {
    allowOnly(v, where, {"box"});
    return box(v.at("box"), where + ".box", params).toPolytope();
  }
  allowOnly(v, where, {"polytope"});
  const json& p = require(v, where, "polytope");
  allowOnly(p, where + ".polytope", {"G", "H"});
  return Polytope(matrix(require(p, where, "G"), where + ".G", params), vector(require(p, where, "H"), where + ".H", params));
}

ltlf::Region region(const json& v, const std::string& where, const std::vector<std::string>& states,
                    const std::map<std::string, double>& params) {
  if (!v.is_object()) bad(where, "expected an object");
  if (v.contains("union")) {
    allowOnly(v, where, {"union"});
    const json& members = v.at("union");
    if (!members.is_array() || members.empty()) bad(where, "union needs a non-empty array");
    ltlf::PolytopeUnion u;
    for (size_t i = 0; i < members.size(); ++i) {
      u.members.push_back(polytope(members[i], where + ".union[" + std::to_string(i) + "]", params));
    }
    return ltlf::Region(std::move(u));
  }
  if (v.contains("predicates")) {
    allowOnly(v, where, {"predicates"});
    const json& p = v.at("predicates");
    allowOnly(p, where + ".predicates", {"functions", "connectives", "closed", "convex", "open"});
    ltlf::PredicateChain chain;
    chain.dimension = static_cast<Index>(states.size());
    for (const auto& f : require(p, where, "functions")) {
      if (!f.is_string()) bad(where, "predicate functions must be strings");
      chain.functions.push_back(expr::Expression::parse(f.get<std::string>(), states, params));
    }
    if (p.contains("connectives")) {
      for (const auto& c : p.at("connectives")) {
        std::string s = c.is_string() ? c.get<std::string>() : "";
        if (s == "and") {
          chain.connectives.push_back(ltlf::Connective::kAnd);
        } else if (s == "or") {
          chain.connectives.push_back(ltlf::Connective::kOr);
        } else {
          bad(where, "connectives must be 'and' or 'or'");
        }
      }
    }
    bool closed = p.value("closed", false);
    bool convex = p.value("convex", false);
    bool open = p.value("open", false);
    return ltlf::Region(std::move(chain), closed, convex, open);
  }
  return ltlf::Region(polytope(v, where, params));
}

ScenarioConfig scenario(const json& v, const std::map<std::string, double>& params) {
  allowOnly(v, "scenario", {"beta", "eta", "mu_bar", "seed", "samples", "grid_points"});
  ScenarioConfig c;
  c.beta = number(require(v, "scenario", "beta"), "scenario.beta", params);
  Vector eta = vector(require(v, "scenario", "eta"), "scenario.eta", params);
  c.eta = toStdVector(eta);
  if (v.contains("mu_bar")) c.mu_bar = number(v.at("mu_bar"), "scenario.mu_bar", params);
  if (v.contains("seed")) c.seed = v.at("seed").get<std::uint64_t>();
  if (v.contains("samples")) c.samples_override = v.at("samples").get<std::size_t>();
  if (v.contains("grid_points")) c.grid_points = v.at("grid_points").get<int>();
  return c;
}

}  // namespace

ModelFile parseModelJson(std::string_view text, std::string name) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kParse, "model: invalid JSON: " + std::string(e.what()));
  }
  allowOnly(root, "model",
            {"name", "description", "type", "parameters", "states", "A", "W", "f", "jacobian_bounds", "domain",
             "allow_affine_rebase", "acknowledge_sign_caveat", "regions", "formula", "horizon", "x0", "initial_set",
             "eventually_window", "scenario"});
  ModelFile out;
  try {
    out.name = root.value("name", name);
    out.description = root.value("description", "");
    if (root.contains("parameters")) {
      for (auto it = root.at("parameters").begin(); it != root.at("parameters").end(); ++it) {
        out.parameters[it.key()] = number(it.value(), "parameters." + it.key(), out.parameters);
      }
    }
    const auto& params = out.parameters;
    const std::string type = require(root, "model", "type").get<std::string>();
    if (type == "linear") {
      Matrix a = matrix(require(root, "model", "A"), "A", params);
      Matrix w = root.contains("W") ? matrix(root.at("W"), "W", params) : Matrix::Identity(a.rows(), a.rows());
      out.model = LinearSystem(std::move(a), std::move(w));
      if (root.contains("states")) {
        out.states = root.at("states").get<std::vector<std::string>>();
      } else {
        for (Index i = 0; i < stateDimension(out.model); ++i) out.states.push_back("x" + std::to_string(i + 1));
      }
    } else if (type == "nonlinear") {
      out.states = require(root, "model", "states").get<std::vector<std::string>>();
      std::vector<expr::Expression> f;
      for (const auto& fi : require(root, "model", "f")) {
        if (!fi.is_string()) bad("f", "dynamics must be expression strings");
        f.push_back(expr::Expression::parse(fi.get<std::string>(), out.states, params));
      }
      const Index n = static_cast<Index>(out.states.size());
      Matrix w = root.contains("W") ? matrix(root.at("W"), "W", params) : Matrix::Identity(n, n);
      IntervalBox domain = box(require(root, "model", "domain"), "domain", params);
      std::optional<Matrix> lo;
      std::optional<Matrix> hi;
      if (root.contains("jacobian_bounds")) {
        const json& jb = root.at("jacobian_bounds");
        allowOnly(jb, "jacobian_bounds", {"lower", "upper"});
        lo = matrix(require(jb, "jacobian_bounds", "lower"), "jacobian_bounds.lower", params);
        hi = matrix(require(jb, "jacobian_bounds", "upper"), "jacobian_bounds.upper", params);
      }
      NonlinearOptions opt;
      opt.allow_affine_rebase = root.value("allow_affine_rebase", false);
      opt.acknowledge_sign_caveat = root.value("acknowledge_sign_caveat", false);
      out.model = NonlinearModel(out.states, std::move(f), std::move(w), std::move(domain), lo, hi, opt);
    } else {
      bad("type", "expected 'linear' or 'nonlinear', got '" + type + "'");
    }
    if (static_cast<Index>(out.states.size()) != stateDimension(out.model)) {
      fail(ErrorKind::kDimension, "model: states list does not match the state dimension");
    }

    if (root.contains("regions")) {
      const json& regs = root.at("regions");
      if (!regs.is_object()) bad("regions", "expected an object");
      for (auto it = regs.begin(); it != regs.end(); ++it) {
        auto atom = std::make_shared<ltlf::AtomicPredicate>(
            ltlf::AtomicPredicate{it.key(), region(it.value(), "regions." + it.key(), out.states, params)});
        if (atom->region.dimension() != stateDimension(out.model)) {
          fail(ErrorKind::kDimension, "model: region '" + it.key() + "' has dimension " +
                                          std::to_string(atom->region.dimension()) + ", state has " +
                                          std::to_string(stateDimension(out.model)));
        }
        out.regions.emplace(it.key(), std::move(atom));
      }
    }
    if (root.contains("formula")) out.formula = root.at("formula").get<std::string>();
    if (root.contains("horizon")) out.horizon = root.at("horizon").get<int>();
    if (root.contains("x0")) out.x0 = vector(root.at("x0"), "x0", params);
    if (root.contains("initial_set")) {
      const json& s = root.at("initial_set");
      if (s.contains("box")) {
        allowOnly(s, "initial_set", {"box"});
        out.initial_box = box(s.at("box"), "initial_set.box", params);
      } else {
        allowOnly(s, "initial_set", {"hull"});
        std::vector<Vector> vs;
        for (const auto& v : require(s, "initial_set", "hull")) vs.push_back(vector(v, "initial_set.hull", params));
        out.initial_hull = std::move(vs);
      }
    }
    if (root.contains("eventually_window")) {
      std::string w = root.at("eventually_window").get<std::string>();
      if (w == "as-written") {
        out.eval.eventually = ltlf::EventuallyWindow::kAsWritten;
      } else if (w == "inclusive") {
        out.eval.eventually = ltlf::EventuallyWindow::kInclusive;
      } else {
        bad("eventually_window", "expected 'as-written' or 'inclusive'");
      }
    }
    if (root.contains("scenario")) out.scenario = scenario(root.at("scenario"), params);
  } catch (const json::exception& e) {
    fail(ErrorKind::kParse, "model: " + std::string(e.what()));
  }
  return out;
}

ModelFile loadModelFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open model file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parseModelJson(buf.str(), path.stem().string());
}

}  // namespace rezmet
