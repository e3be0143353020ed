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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rezmet/geometry.hpp"
#include "rezmet/ltlf.hpp"
#include "rezmet/oracle.hpp"
#include "rezmet/scenario.hpp"
#include "rezmet/system.hpp"

namespace rezmet {

/// Contents of a JSON model file (schema in docs/formats.md).
struct ModelFile {
  std::string name;
  std::string description;
  Model model = LinearSystem(Matrix::Identity(1, 1));
  std::vector<std::string> states;
  std::map<std::string, double> parameters;
  ltlf::RegionTable regions;
  std::optional<std::string> formula;
  std::optional<int> horizon;
  std::optional<Vector> x0;
  std::optional<IntervalBox> initial_box;
  std::optional<std::vector<Vector>> initial_hull;
  ltlf::EvalOptions eval;
  std::optional<ScenarioConfig> scenario;
};

ModelFile parseModelJson(std::string_view text, std::string name = "model");
ModelFile loadModelFile(const std::filesystem::path& path);

}  // namespace rezmet
