// Copyright 2026 The psgrowth Authors
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

#ifndef PSG_CONFIG_HPP_
#define PSG_CONFIG_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "psg/spaces.hpp"

namespace psg {

struct SpaceSpec {
  std::string backend = "free_group";  // free_group | free_product | graph
  unsigned rank = 2;
  std::vector<uint32_t> orders;         // free_product; 0 means infinite
  std::optional<GraphSpec> graph;
  std::optional<Rational> rho0, kappa0;
  uint64_t n0 = 1;
};

struct SetSpec {
  std::string kind = "elements";  // elements | safin | random
  std::vector<std::string> elements;
  unsigned safin_n = 0;
  std::optional<uint64_t> seed;  // defaults to the config seed
  unsigned count = 0;
  unsigned max_length = 0;
};

struct Thresholds {
  std::optional<Rational> case_threshold;  // energy case split T
  std::optional<Rational> floor;           // below-threshold floor
  std::optional<Rational> reduction;       // reduction hypothesis threshold
  std::optional<Rational> period;          // periodic length
  std::optional<Rational> pingpong_a;
  std::optional<Rational> concentrated;    // K of the concentrated pipeline
};

struct ExperimentConfig {
  nlohmann::json echo;  // the parsed document, for report provenance
  SpaceSpec space;
  std::optional<SetSpec> set;
  std::string command;
  bool paper = false;
  Thresholds thresholds;
  unsigned n = 3;
  uint64_t budget = 10'000'000;
  uint64_t seed = 1;
  unsigned threads = 0;
  std::optional<std::string> base_point;
  // period: element (and root) or, without element, the bi-periodic test on the set.
  std::optional<std::string> element, root;
  // pingpong: V is the set, t and root given here; separation r for the separate step.
  std::optional<std::string> t;
  unsigned r = 0;
  std::string reduction_version = "auto";  // auto | tree | graph | tree_approx
  std::vector<std::string> targets;        // treeapprox; empty means every vertex
  std::optional<std::string> out_dir;
  bool csv = true;
};

// Throws Error(kConfig) on unknown keys, wrong types or missing fields.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(std::string_view text);
// The "space" object alone.
SpaceSpec parse_space_spec(const nlohmann::json& j);

SpacePtr build_space(const SpaceSpec& spec);
ElementSet build_set(const ActionSpace& space, const SetSpec& spec);

}  // namespace psg

#endif  // PSG_CONFIG_HPP_
