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

#include "psg/config.hpp"

#include <set>

namespace psg {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::kConfig, what); }

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) bad(where + " must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) bad("unknown key " + where + "." + k);
  }
}

Rational rational_of(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<int64_t>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error&) {
      bad(where + ": not a rational");
    }
  }
  bad(where + " must be an integer or a string rational");
}

template <typename T>
T number_of(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<int64_t>() >= 0)) {
    bad(where + " must be a non-negative integer");
  }
  return j.get<T>();
}

std::string string_of(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where + " must be a string");
  return j.get<std::string>();
}

}  // namespace

SpaceSpec parse_space_spec(const json& j) {
  only_keys(j, "space", {"backend", "rank", "orders", "graph", "rho0", "kappa0", "n0"});
  SpaceSpec s;
  if (j.contains("backend")) s.backend = string_of(j["backend"], "space.backend");
  if (s.backend != "free_group" && s.backend != "free_product" && s.backend != "graph") {
    bad("unknown backend " + s.backend);
  }
  if (j.contains("rank")) s.rank = number_of<unsigned>(j["rank"], "space.rank");
  if (j.contains("orders")) {
    if (!j["orders"].is_array()) bad("space.orders must be an array");
    for (const json& o : j["orders"]) s.orders.push_back(number_of<uint32_t>(o, "space.orders[]"));
  }
  if (j.contains("graph")) {
    try {
      s.graph = parse_graph_spec(j["graph"].dump());
    } catch (const Error& e) {
      bad(std::string("space.graph: ") + e.what());
    }
  }
  if (j.contains("rho0")) s.rho0 = rational_of(j["rho0"], "space.rho0");
  if (j.contains("kappa0")) s.kappa0 = rational_of(j["kappa0"], "space.kappa0");
  if (j.contains("n0")) s.n0 = number_of<uint64_t>(j["n0"], "space.n0");
  if (s.backend == "free_product" && s.orders.size() != 2) bad("free_product needs exactly two orders");
  if (s.backend == "graph" && !s.graph) bad("graph backend needs space.graph");
  return s;
}

namespace {

SetSpec parse_set(const json& j) {
  only_keys(j, "set", {"elements", "safin", "random"});
  if (j.size() != 1) bad("set needs exactly one of elements, safin, random");
  SetSpec s;
  if (j.contains("elements")) {
    if (!j["elements"].is_array()) bad("set.elements must be an array");
    for (const json& e : j["elements"]) s.elements.push_back(string_of(e, "set.elements[]"));
  } else if (j.contains("safin")) {
    s.kind = "safin";
    s.safin_n = number_of<unsigned>(j["safin"], "set.safin");
  } else {
    s.kind = "random";
    const json& r = j["random"];
    only_keys(r, "set.random", {"seed", "count", "max_length"});
    if (!r.contains("count") || !r.contains("max_length")) bad("set.random needs count and max_length");
    if (r.contains("seed")) s.seed = number_of<uint64_t>(r["seed"], "set.random.seed");
    s.count = number_of<unsigned>(r["count"], "set.random.count");
    s.max_length = number_of<unsigned>(r["max_length"], "set.random.max_length");
  }
  return s;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  only_keys(doc, "config", {"space", "set", "command", "mode", "thresholds", "n", "budget", "seed", "threads",
                            "base_point", "period", "pingpong", "reduce", "treeapprox", "output"});
  ExperimentConfig c;
  c.echo = doc;
  if (!doc.contains("command")) bad("config needs a command");
  c.command = string_of(doc["command"], "command");
  static const std::set<std::string> commands = {"growth", "energy", "reduce", "period",
                                                 "pingpong", "treeapprox", "verify-all"};
  if (!commands.count(c.command)) bad("unknown command " + c.command);
  if (doc.contains("space")) c.space = parse_space_spec(doc["space"]);
  if (doc.contains("set")) c.set = parse_set(doc["set"]);
  if (doc.contains("mode")) {
    std::string m = string_of(doc["mode"], "mode");
    if (m != "paper" && m != "practical") bad("mode must be paper or practical");
    c.paper = m == "paper";
  }
  if (doc.contains("thresholds")) {
    const json& t = doc["thresholds"];
    only_keys(t, "thresholds", {"case", "floor", "reduction", "period", "pingpong_a", "concentrated"});
    auto opt = [&](const char* k, std::optional<Rational>& out) {
      if (t.contains(k)) out = rational_of(t[k], std::string("thresholds.") + k);
    };
    opt("case", c.thresholds.case_threshold);
    opt("floor", c.thresholds.floor);
    opt("reduction", c.thresholds.reduction);
    opt("period", c.thresholds.period);
    opt("pingpong_a", c.thresholds.pingpong_a);
    opt("concentrated", c.thresholds.concentrated);
  }
  if (doc.contains("n")) c.n = number_of<unsigned>(doc["n"], "n");
  if (c.n == 0) bad("n must be positive");
  if (doc.contains("budget")) c.budget = number_of<uint64_t>(doc["budget"], "budget");
  if (doc.contains("seed")) c.seed = number_of<uint64_t>(doc["seed"], "seed");
  if (doc.contains("threads")) c.threads = number_of<unsigned>(doc["threads"], "threads");
  if (doc.contains("base_point")) c.base_point = string_of(doc["base_point"], "base_point");
  if (doc.contains("period")) {
    const json& p = doc["period"];
    only_keys(p, "period", {"element", "root"});
    if (p.contains("element")) c.element = string_of(p["element"], "period.element");
    if (p.contains("root")) c.root = string_of(p["root"], "period.root");
  }
  if (doc.contains("pingpong")) {
    const json& p = doc["pingpong"];
    only_keys(p, "pingpong", {"t", "root", "r"});
    if (p.contains("t")) c.t = string_of(p["t"], "pingpong.t");
    if (p.contains("root")) c.root = string_of(p["root"], "pingpong.root");
    if (p.contains("r")) c.r = number_of<unsigned>(p["r"], "pingpong.r");
    if (!c.t || !c.root) bad("pingpong needs t and root");
  }
  if (doc.contains("reduce")) {
    const json& p = doc["reduce"];
    only_keys(p, "reduce", {"version"});
    if (p.contains("version")) c.reduction_version = string_of(p["version"], "reduce.version");
    static const std::set<std::string> versions = {"auto", "tree", "graph", "tree_approx"};
    if (!versions.count(c.reduction_version)) bad("unknown reduce.version " + c.reduction_version);
  }
  if (doc.contains("treeapprox")) {
    const json& p = doc["treeapprox"];
    only_keys(p, "treeapprox", {"targets"});
    if (p.contains("targets")) {
      if (!p["targets"].is_array()) bad("treeapprox.targets must be an array");
      for (const json& e : p["targets"]) c.targets.push_back(string_of(e, "treeapprox.targets[]"));
    }
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    only_keys(o, "output", {"dir", "csv"});
    if (o.contains("dir")) c.out_dir = string_of(o["dir"], "output.dir");
    if (o.contains("csv")) {
      if (!o["csv"].is_boolean()) bad("output.csv must be a boolean");
      c.csv = o["csv"].get<bool>();
    }
  }
  if (c.set && c.set->kind == "random" && !c.set->seed) c.set->seed = c.seed;
  bool needs_set = c.command == "growth" || c.command == "energy" || c.command == "reduce" ||
                   c.command == "pingpong" || (c.command == "period" && !c.element);
  if (needs_set && !c.set) bad(c.command + " needs a set");
  if (c.command == "treeapprox" && c.space.backend != "graph") bad("treeapprox needs the graph backend");
  return c;
}

ExperimentConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("config is not valid json: ") + e.what());
  }
  return parse_config(doc);
}

SpacePtr build_space(const SpaceSpec& spec) {
  SpaceOptions o;
  o.rho0 = spec.rho0;
  o.kappa0 = spec.kappa0;
  o.n0 = spec.n0;
  try {
    if (spec.backend == "free_group") return make_free_group_tree(spec.rank, o);
    if (spec.backend == "free_product") {
      std::vector<uint32_t> orders;
      for (uint32_t k : spec.orders) orders.push_back(k == 0 ? kInfiniteOrder : k);
      return make_free_product_tree(orders, o);
    }
    return make_hyp_graph(*spec.graph, o);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBudgetExceeded) throw;
    bad(std::string("space: ") + e.what());
  }
}

ElementSet build_set(const ActionSpace& space, const SetSpec& spec) {
  const Presentation& g = space.group();
  try {
    if (spec.kind == "elements") return parse_element_set(g, spec.elements);
    if (spec.kind == "safin") return safin_family(g, spec.safin_n).set;
    return random_element_set(g, spec.seed.value_or(1), spec.count, spec.max_length);
  } catch (const Error& e) {
    bad(std::string("set: ") + e.what());
  }
}

}  // namespace psg
