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

#include "psg/spaces.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace psg {

std::string to_string(Backend b) {
  switch (b) {
    case Backend::kFreeGroupTree:
      return "free_group";
    case Backend::kFreeProductTree:
      return "free_product";
    case Backend::kFiniteHypGraph:
      return "graph";
  }
  return "unknown";
}

void ActionSpace::check_group(const Element& g) const {
  if (g.context() != group_.get()) {
    fail(ErrorCode::kContextMismatch, "element is not in the group acting on this space");
  }
}

Point ActionSpace::step_toward(const Point& x, const Point& y, int64_t k) const {
  std::vector<Point> path = geodesic(x, y);
  if (k < 0 || static_cast<size_t>(k) >= path.size()) {
    fail(ErrorCode::kInvalidArgument, "step beyond the end of the geodesic");
  }
  return path[static_cast<size_t>(k)];
}

std::vector<Point> ActionSpace::sphere(const Point& c, Length r, std::span<const Point> scope) const {
  validate(c);
  if (!r.whole() || r < Length()) fail(ErrorCode::kInvalidArgument, "sphere radius must be a whole number of edges");
  std::set<Point> out;
  if (!scope.empty()) {
    for (const Point& s : scope) {
      if (dist(c, s) >= r) out.insert(step_toward(c, s, r.whole_edges()));
    }
    return {out.begin(), out.end()};
  }
  std::vector<Point> layer{c};
  std::set<Point> seen{c};
  for (int64_t k = 0; k < r.whole_edges(); ++k) {
    std::vector<Point> next;
    for (const Point& p : layer) {
      for (Point& q : neighbors(p)) {
        if (seen.insert(q).second) next.push_back(std::move(q));
      }
    }
    if (seen.size() > 5'000'000) fail(ErrorCode::kBudgetExceeded, "sphere enumeration too large");
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

std::vector<Point> ActionSpace::all_points() const {
  fail(ErrorCode::kUnsupported, "vertex enumeration needs a finite graph");
}

GraphSpec parse_graph_spec(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("graph json: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::kParse, "graph json must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "vertices" && it.key() != "edges" && it.key() != "generators") {
      fail(ErrorCode::kConfig, "unknown graph key '" + it.key() + "'");
    }
  }
  GraphSpec spec;
  try {
    spec.vertices = j.at("vertices").get<uint32_t>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) fail(ErrorCode::kParse, "edge must be a pair");
      spec.edges.emplace_back(e[0].get<uint32_t>(), e[1].get<uint32_t>());
    }
    if (j.contains("generators")) {
      for (const auto& g : j.at("generators")) spec.generators.push_back(g.get<std::vector<uint32_t>>());
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("graph json: ") + e.what());
  }
  return spec;
}

std::string graph_spec_to_json(const GraphSpec& spec) {
  nlohmann::json j;
  j["vertices"] = spec.vertices;
  j["edges"] = nlohmann::json::array();
  for (auto [a, b] : spec.edges) j["edges"].push_back({a, b});
  j["generators"] = spec.generators;
  return j.dump();
}

}  // namespace psg
