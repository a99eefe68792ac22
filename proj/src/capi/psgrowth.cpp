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

#include "psgrowth/psgrowth.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "psg/acceptance.hpp"
#include "psg/config.hpp"
#include "psg/energy.hpp"
#include "psg/hypgeom.hpp"
#include "psg/run.hpp"

struct psg_space {
  psg::SpacePtr space;
};

struct psg_set {
  psg::SpacePtr space;
  psg::ElementSet set;
};

namespace {

thread_local std::string g_last_error;

psg_status status_of(psg::ErrorCode c) {
  switch (c) {
    case psg::ErrorCode::kInvalidArgument: return PSG_INVALID_ARGUMENT;
    case psg::ErrorCode::kContextMismatch: return PSG_CONTEXT_MISMATCH;
    case psg::ErrorCode::kParse: return PSG_PARSE;
    case psg::ErrorCode::kBudgetExceeded: return PSG_BUDGET_EXCEEDED;
    case psg::ErrorCode::kUnsupported: return PSG_UNSUPPORTED;
    case psg::ErrorCode::kConfig: return PSG_CONFIG;
    default: return PSG_INTERNAL;
  }
}

template <typename F>
psg_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return PSG_OK;
  } catch (const psg::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return PSG_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PSG_BUDGET_EXCEEDED;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PSG_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) psg::fail(psg::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

psg_space* wrap(psg::SpacePtr s) { return new psg_space{std::move(s)}; }

}  // namespace

extern "C" {

const char* psg_version(void) { return "0.1.0"; }

const char* psg_last_error(void) { return g_last_error.c_str(); }

void psg_free_string(char* s) { std::free(s); }

psg_status psg_space_free_group(unsigned rank, psg_space** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(psg::make_free_group_tree(rank));
  });
}

psg_status psg_space_free_product(uint32_t order_a, uint32_t order_b, psg_space** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(psg::make_free_product_tree({order_a, order_b}));
  });
}

psg_status psg_space_from_json(const char* space_json, psg_space** out) {
  return guarded([&] {
    need(space_json, "space_json");
    need(out, "out");
    *out = wrap(psg::build_space(psg::parse_space_spec(nlohmann::json::parse(space_json))));
  });
}

void psg_space_destroy(psg_space* space) { delete space; }

psg_status psg_space_describe(const psg_space* space, char** json_out) {
  return guarded([&] {
    need(space, "space");
    need(json_out, "json_out");
    const psg::SpaceConstants& c = space->space->constants();
    nlohmann::json j = {{"backend", psg::to_string(space->space->backend())},
                        {"group", space->space->group().describe()},
                        {"delta", psg::to_string(c.delta_abs())},
                        {"edge_length", psg::to_string(c.edge_length)},
                        {"rho0", psg::to_string(c.rho0)},
                        {"kappa0", psg::to_string(c.kappa0)},
                        {"n0", c.n0}};
    *json_out = dup(j.dump());
  });
}

psg_status psg_space_dist(const psg_space* space, const char* x, const char* y, char** out) {
  return guarded([&] {
    need(space, "space");
    need(x, "x");
    need(y, "y");
    need(out, "out");
    const psg::ActionSpace& s = *space->space;
    *out = dup(psg::to_string(s.constants().abs(s.dist(s.parse_point(x), s.parse_point(y)))));
  });
}

psg_status psg_translation_length(const psg_space* space, const char* element, char** out) {
  return guarded([&] {
    need(space, "space");
    need(element, "element");
    need(out, "out");
    const psg::ActionSpace& s = *space->space;
    psg::AxisData a = psg::translation_length(s, psg::parse_element(s.group(), element));
    *out = dup(psg::to_string(s.constants().abs(a.translation)));
  });
}

psg_status psg_set_parse(const psg_space* space, const char* const* words, size_t count, psg_set** out) {
  return guarded([&] {
    need(space, "space");
    need(out, "out");
    if (count > 0) need(words, "words");
    std::vector<std::string> w;
    for (size_t i = 0; i < count; ++i) {
      need(words[i], "word");
      w.emplace_back(words[i]);
    }
    *out = new psg_set{space->space, psg::parse_element_set(space->space->group(), w)};
  });
}

psg_status psg_set_safin(const psg_space* space, unsigned n, psg_set** out) {
  return guarded([&] {
    need(space, "space");
    need(out, "out");
    *out = new psg_set{space->space, psg::safin_family(space->space->group(), n).set};
  });
}

psg_status psg_set_random(const psg_space* space, uint64_t seed, unsigned count, unsigned max_length,
                          psg_set** out) {
  return guarded([&] {
    need(space, "space");
    need(out, "out");
    *out = new psg_set{space->space, psg::random_element_set(space->space->group(), seed, count, max_length)};
  });
}

size_t psg_set_size(const psg_set* set) { return set ? set->set.size() : 0; }

psg_status psg_set_words(const psg_set* set, char** out) {
  return guarded([&] {
    need(set, "set");
    need(out, "out");
    std::string s;
    for (const std::string& w : psg::to_strings(set->set)) s += w + "\n";
    *out = dup(s);
  });
}

void psg_set_destroy(psg_set* set) { delete set; }

psg_status psg_product_sizes(const psg_set* set, unsigned n, uint64_t budget, uint64_t* sizes, unsigned* computed) {
  return guarded([&] {
    need(set, "set");
    need(sizes, "sizes");
    need(computed, "computed");
    psg::ProductOptions po;
    po.budget = budget;
    psg::ProductSizes ps = psg::product_sizes(set->set, n, po);
    for (size_t k = 0; k < ps.sizes.size(); ++k) sizes[k] = ps.sizes[k];
    *computed = static_cast<unsigned>(ps.sizes.size());
  });
}

psg_status psg_energy(const psg_set* set, char** json_out) {
  return guarded([&] {
    need(set, "set");
    need(json_out, "json_out");
    const psg::ActionSpace& s = *set->space;
    psg::EnergyProfile p = psg::minimize_energy(s, set->set);
    psg::CaseSplit c = psg::classify(s, set->set, p, {});
    nlohmann::json j = {{"base_point", s.format_point(p.base_point)},
                        {"energy", psg::to_string(p.energy)},
                        {"displacement", psg::to_string(p.displacement)},
                        {"case", psg::to_string(c.kind)},
                        {"small", c.small}};
    *json_out = dup(j.dump());
  });
}

psg_status psg_run_config(const char* config_json, char** report_json, char** sizes_csv, int* exit_code) {
  return guarded([&] {
    need(config_json, "config_json");
    need(report_json, "report_json");
    need(exit_code, "exit_code");
    psg::RunResult r = psg::run_config_text(config_json);
    *report_json = dup(psg::dump_report(r.report));
    if (sizes_csv) *sizes_csv = dup(r.sizes_csv);
    *exit_code = r.exit_code;
  });
}

psg_status psg_write_outputs(const char* dir, const char* report_json, const char* sizes_csv) {
  return guarded([&] {
    need(dir, "dir");
    need(report_json, "report_json");
    psg::write_report_files(dir, report_json, sizes_csv ? sizes_csv : "");
  });
}

psg_status psg_verify_all(uint64_t seed, uint64_t budget, char** report_json, int* exit_code) {
  return guarded([&] {
    need(report_json, "report_json");
    need(exit_code, "exit_code");
    nlohmann::json doc = {{"command", "verify-all"}, {"seed", seed}, {"budget", budget}};
    psg::RunResult r = psg::run_config_text(doc.dump());
    *report_json = dup(psg::dump_report(r.report));
    *exit_code = r.exit_code;
  });
}

psg_status psg_run_criterion(int id, uint64_t seed, uint64_t budget, int* pass, char** line, char** data_json) {
  return guarded([&] {
    need(pass, "pass");
    psg::AcceptanceOptions o;
    o.seed = seed;
    o.budget = budget;
    psg::CriterionResult r = psg::run_criterion(id, o);
    *pass = r.pass ? 1 : 0;
    if (line) *line = dup(psg::format_line(r));
    if (data_json) *data_json = dup(r.data.dump());
  });
}

}  // extern "C"
