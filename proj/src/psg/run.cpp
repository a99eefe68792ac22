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

#include "psg/run.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "psg/acceptance.hpp"
#include "psg/energy.hpp"
#include "psg/growth.hpp"
#include "psg/periodicity.hpp"
#include "psg/reduction.hpp"
#include "psg/treeapprox.hpp"

namespace psg {

namespace {

using nlohmann::json;

json rat(const Rational& q) { return to_string(q); }

struct Ctx {
  const ExperimentConfig& cfg;
  SpacePtr space;
  json certificates = json::array();
  json violations = json::array();
  bool truncated = false;

  json len(Length l) const { return l >= Length::infinity() ? json("inf") : rat(space->constants().abs(l)); }
  std::string pt(const Point& x) const { return space->format_point(x); }
  Element elem(const std::string& s) const {
    try {
      return parse_element(space->group(), s);
    } catch (const Error& e) {
      fail(ErrorCode::kConfig, "bad element '" + s + "': " + e.what());
    }
  }
  Point point(const std::string& s) const {
    try {
      return space->parse_point(s);
    } catch (const Error& e) {
      fail(ErrorCode::kConfig, "bad point '" + s + "': " + e.what());
    }
  }
  ProductOptions products() const { return {cfg.budget, cfg.threads}; }
  PeriodMode period_mode() const { return {cfg.paper, cfg.thresholds.period, cfg.thresholds.pingpong_a}; }
  CaseMode case_mode() const { return {cfg.paper, cfg.thresholds.case_threshold, cfg.thresholds.floor}; }
  ReductionOptions reduction_options() const {
    ReductionOptions o;
    o.paper = cfg.paper;
    o.threshold = cfg.thresholds.reduction;
    return o;
  }
  void certificate(json c) { certificates.push_back(std::move(c)); }
  void violation(const std::string& v) { violations.push_back(v); }
};

json space_json(const ActionSpace& s) {
  const SpaceConstants& c = s.constants();
  return {{"backend", to_string(s.backend())}, {"delta", rat(c.delta_abs())},
          {"edge_length", rat(c.edge_length)}, {"rho0", rat(c.rho0)},
          {"kappa0", rat(c.kappa0)}, {"n0", c.n0}};
}

json profile_json(const Ctx& cx, const EnergyProfile& p) {
  return {{"base_point", cx.pt(p.base_point)}, {"energy", rat(p.energy)},
          {"displacement", rat(p.displacement)}, {"d_factor", rat(p.d_factor)}, {"steps", p.steps}};
}

json split_json(const CaseSplit& s) {
  return {{"kind", to_string(s.kind)}, {"threshold", rat(s.threshold)}, {"floor", rat(s.floor)}, {"small", s.small}};
}

json checks_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const Check& c : checks) {
    out.push_back({{"name", c.name}, {"lhs", rat(c.lhs)}, {"relation", c.relation}, {"rhs", rat(c.rhs)},
                   {"holds", c.holds}});
  }
  return out;
}

json opt_count(const std::optional<uint64_t>& v) { return v ? json(*v) : json(nullptr); }

json period_json(const Ctx& cx, const PeriodOutcome& p) {
  json j = {{"kind", "periodic"}, {"certified", p.certified}, {"bound_violation", p.bound_violation},
            {"refusal", p.refusal}, {"checks", checks_json(p.checks)}};
  if (p.certificate) {
    j["element"] = to_string(p.certificate->element);
    j["period_root"] = to_string(p.certificate->period_root);
    j["base_point"] = cx.pt(p.certificate->base_point);
    j["slack"] = rat(p.certificate->slack);
  }
  return j;
}

json biperiodic_json(const BiPeriodicOutcome& b) {
  json j = {{"kind", "bi_periodic"}, {"certified", b.certified}, {"refusal", b.refusal},
            {"checks", checks_json(b.checks)}};
  if (b.witness) {
    j["set"] = to_strings(b.witness->set);
    j["e1_root"] = to_string(b.witness->e1_root);
    j["e2_root"] = to_string(b.witness->e2_root);
    j["coset_root"] = to_string(b.witness->coset_root);
    j["coset_rep"] = to_string(b.witness->coset_rep);
  }
  return j;
}

json ereduction_json(const Ctx& cx, const EReduction& e) {
  return {{"ok", e.ok}, {"refusal", e.refusal}, {"e", to_string(e.e)}, {"t_prime", to_string(e.t_prime)},
          {"f", to_string(e.f)}, {"e_power", e.e_power}, {"f_power", e.f_power},
          {"displacement", cx.len(e.displacement)}, {"window", e.window},
          {"window_certified", e.window_certified}};
}

json separation_json(const SeparationResult& s) {
  return {{"v0", to_strings(s.v0)}, {"spacing", rat(s.spacing)}, {"guarantee_applies", s.guarantee_applies},
          {"guarantee_met", s.guarantee_met}, {"refusal", s.refusal}};
}

json pingpong_json(const PingPongResult& p) {
  return {{"kind", "ping_pong"}, {"certified", p.certified}, {"hypotheses_ok", p.hypotheses_ok},
          {"refusal", p.refusal}, {"checks", checks_json(p.checks)}, {"a", rat(p.a)},
          {"min_slack", rat(p.min_slack)}, {"triples", p.triples},
          {"product_count", opt_count(p.product_count)}, {"expected", p.expected}};
}

json reduction_json(const Ctx& cx, const ReductionResult& r) {
  return {{"kind", "reduction"},
          {"certified", r.certified},
          {"branch", to_string(r.branch)},
          {"failure", to_string(r.failure)},
          {"diagnostic", r.diagnostic},
          {"tolerance", cx.len(r.tolerance)},
          {"radius", cx.len(r.radius)},
          {"threshold", rat(r.threshold)},
          {"u1", to_strings(r.u1)},
          {"u2", to_strings(r.u2)},
          {"cross", {{"max_12", cx.len(r.certificate.max_12)},
                     {"max_21", cx.len(r.certificate.max_21)},
                     {"pairs", r.certificate.pairs},
                     {"ok", r.certificate.ok}}},
          {"small", r.small},
          {"discarded", r.discarded},
          {"sphere_points", r.sphere_points},
          {"rounds", r.rounds},
          {"ball_bound", r.ball_bound},
          {"classes", {{"ab", r.count_ab}, {"ba", r.count_ba}, {"aa", r.count_aa}, {"bb", r.count_bb}}},
          {"max_class", r.max_class},
          {"max_class_point", r.max_class_point}};
}

json concentrated_json(const Ctx& cx, const ConcentratedResult& c) {
  return {{"kind", "concentrated"},
          {"certified", c.certified},
          {"refusal", c.refusal},
          {"witness", to_string(c.witness)},
          {"witness_displacement", rat(c.witness_displacement)},
          {"threshold", rat(c.threshold)},
          {"offset", cx.len(c.offset)},
          {"spacing", rat(c.spacing)},
          {"m", cx.pt(c.m)},
          {"u1", to_strings(c.u1)},
          {"u2", to_strings(c.u2)},
          {"min_slack", rat(c.min_slack)},
          {"triples", c.triples},
          {"n", c.n},
          {"expected", c.expected},
          {"chain_count", opt_count(c.chain_count)},
          {"measured", opt_count(c.measured)},
          {"achieved_bound", rat(c.achieved_bound)},
          {"paper_bound", rat(c.paper_bound)}};
}

void concentrated_checks(Ctx& cx, const ConcentratedResult& c) {
  cx.certificate(concentrated_json(cx, c));
  if (!c.certified) return;
  if (c.chain_count && *c.chain_count != c.expected) cx.violation("concentrated chain count differs from |U2|^n");
  if (c.measured && Rational(static_cast<int64_t>(*c.measured)) < c.achieved_bound) {
    cx.violation("concentrated bound exceeds the measured size");
  }
}

json diffuse_json(Ctx& cx, const DiffuseResult& d) {
  json counts = json::array();
  for (const ElementCount& c : d.counts) {
    counts.push_back({{"v", to_string(c.v)}, {"count", c.count}, {"fiber", c.fiber}, {"extraction", c.extraction},
                      {"period_root", c.period_root ? json(to_string(*c.period_root)) : json(nullptr)}});
  }
  json j = {{"branch", to_string(d.branch)},
            {"reason", d.reason},
            {"base_point", cx.pt(d.base_point)},
            {"u1_size", d.u1.size()},
            {"u2_size", d.u2.size()},
            {"w", to_strings(d.w)},
            {"n", d.n},
            {"l", d.l},
            {"counts", counts},
            {"best_count", d.best_count},
            {"t_in_e", d.t_in_e},
            {"counting_bound", rat(d.counting_bound)},
            {"pingpong_bound", rat(d.pingpong_bound)},
            {"achieved_bound", rat(d.achieved_bound)},
            {"bound_source", d.bound_source},
            {"paper_bound", rat(d.paper_bound)},
            {"measured", opt_count(d.measured)}};
  if (d.branch != DiffuseBranch::kRerouted && d.branch != DiffuseBranch::kNotApplicable) {
    cx.certificate(reduction_json(cx, d.reduction));
  }
  if (d.ping_t) j["ping_t"] = to_string(*d.ping_t);
  if (d.ereduction) j["ereduction"] = ereduction_json(cx, *d.ereduction);
  if (d.separation) j["separation"] = separation_json(*d.separation);
  if (d.biperiodic) cx.certificate(biperiodic_json(*d.biperiodic));
  if (d.pingpong) {
    cx.certificate(pingpong_json(*d.pingpong));
    const PingPongResult& p = *d.pingpong;
    if (p.certified && p.product_count && *p.product_count != p.expected) {
      cx.violation("ping-pong product count differs from |V|^n");
    }
  }
  if (d.rerouted) concentrated_checks(cx, *d.rerouted);
  return j;
}

Point base_or(const Ctx& cx, const Point& fallback) {
  return cx.cfg.base_point ? cx.point(*cx.cfg.base_point) : fallback;
}

json cmd_growth(Ctx& cx, const ElementSet& u, json& report, std::string& csv) {
  GrowthOptions o;
  o.paper = cx.cfg.paper;
  o.n_max = cx.cfg.n;
  o.products = cx.products();
  o.pipeline.n = cx.cfg.n;
  o.pipeline.case_mode = cx.case_mode();
  o.pipeline.reduction = cx.reduction_options();
  o.pipeline.period = cx.period_mode();
  o.pipeline.concentrated.threshold = cx.cfg.thresholds.concentrated;
  GrowthReport g = growth_report(*cx.space, u, o);
  cx.truncated = g.truncated;
  for (const std::string& v : g.violations) cx.violation(v);
  report["profile"] = profile_json(cx, g.profile);
  report["case_trace"] = g.case_trace;
  report["sizes"] = g.sizes;
  json bounds = json::array();
  std::ostringstream table;
  table << "n,size,bound,holds\n";
  for (size_t k = 0; k < g.bounds.size(); ++k) {
    json b = {{"n", k + 1}, {"bound", rat(g.bounds[k])}};
    if (k < g.sizes.size()) {
      b["holds"] = static_cast<bool>(g.bound_holds[k]);
      table << k + 1 << ',' << g.sizes[k] << ',' << to_string(g.bounds[k]) << ','
            << (g.bound_holds[k] ? "true" : "false") << '\n';
    }
    bounds.push_back(b);
  }
  report["bounds"] = bounds;
  csv = table.str();
  json r = {{"set_size", g.set_size},
            {"truncated", g.truncated},
            {"alpha", rat(g.alpha)},
            {"alpha_source", g.alpha_source},
            {"virtually_cyclic", g.cyclic.virtually_cyclic},
            {"cyclic_reason", g.cyclic.reason},
            {"displacement_floor", rat(g.displacement_floor)},
            {"hypotheses_certified", g.hypotheses_certified},
            {"entropy_lb", g.entropy_lb},
            {"entropy_measured", g.entropy_measured}};
  if (!g.cyclic.virtually_cyclic) r["split"] = split_json(g.split);
  if (g.pipeline) r["pipeline"] = diffuse_json(cx, *g.pipeline);
  return r;
}

json cmd_energy(Ctx& cx, const ElementSet& u, json& report) {
  EnergyProfile p = minimize_energy(*cx.space, u);
  report["profile"] = profile_json(cx, p);
  CaseSplit s = classify(*cx.space, u, p, cx.case_mode());
  report["case_trace"] = json::array({to_string(s.kind)});
  json r = {{"split", split_json(s)}};
  if (cx.cfg.base_point) {
    Point x = cx.point(*cx.cfg.base_point);
    r["probe"] = {{"point", cx.pt(x)}, {"energy", rat(energy_at(*cx.space, u, x))},
                  {"displacement", rat(displacement_at(*cx.space, u, x))}};
  }
  return r;
}

json cmd_reduce(Ctx& cx, const ElementSet& u, json& report) {
  EnergyProfile p = minimize_energy(*cx.space, u);
  report["profile"] = profile_json(cx, p);
  Point x0 = base_or(cx, p.base_point);
  std::string v = cx.cfg.reduction_version;
  if (v == "auto") v = cx.space->is_tree() ? "tree" : "graph";
  if (v == "tree" && !cx.space->is_tree()) fail(ErrorCode::kConfig, "reduce.version tree needs a tree backend");
  ReductionOptions o = cx.reduction_options();
  ReductionResult r = v == "tree"    ? reduce_tree(*cx.space, u, x0, o)
                      : v == "graph" ? reduce_graph(*cx.space, u, x0, o)
                                     : reduce_via_tree_approx(cx.space, u, x0, o);
  cx.certificate(reduction_json(cx, r));
  return {{"version", v}, {"base_point", cx.pt(x0)}, {"certified", r.certified},
          {"u1_size", r.u1.size()}, {"u2_size", r.u2.size()}, {"failure", to_string(r.failure)}};
}

json cmd_period(Ctx& cx, const std::optional<ElementSet>& u) {
  Point x0 = base_or(cx, cx.space->base_point());
  PeriodMode mode = cx.period_mode();
  if (!cx.cfg.element) {
    BiPeriodicOutcome b = is_biperiodic(*cx.space, *u, x0, mode);
    cx.certificate(biperiodic_json(b));
    return {{"test", "bi_periodic"}, {"base_point", cx.pt(x0)}, {"certified", b.certified}, {"refusal", b.refusal}};
  }
  Element v = cx.elem(*cx.cfg.element);
  PeriodOutcome p;
  if (cx.cfg.root) {
    p = is_periodic(*cx.space, v, cx.elem(*cx.cfg.root), x0, mode);
  } else {
    if (!cx.space->is_tree()) fail(ErrorCode::kConfig, "period search without a root needs a tree backend");
    p = find_period(*cx.space, v, x0, mode);
  }
  if (p.bound_violation) cx.violation("period conclusion failed under certified hypotheses");
  cx.certificate(period_json(cx, p));
  json r = {{"test", cx.cfg.root ? "periodic" : "find_period"}, {"base_point", cx.pt(x0)},
            {"certified", p.certified}, {"refusal", p.refusal}};
  if (p.certificate) r["period_root"] = to_string(p.certificate->period_root);
  return r;
}

json cmd_pingpong(Ctx& cx, const ElementSet& u) {
  Point x0 = base_or(cx, cx.space->base_point());
  PeriodMode mode = cx.period_mode();
  Element root = cx.elem(*cx.cfg.root);
  Element t = cx.elem(*cx.cfg.t);
  json r = {{"base_point", cx.pt(x0)}};
  r["ereduction"] = ereduction_json(cx, e_reduce(*cx.space, t, root, x0));
  ElementSet v = u;
  if (cx.cfg.r > 0) {
    SeparationResult s = separate(*cx.space, u, root, cx.cfg.r, x0, mode);
    r["separation"] = separation_json(s);
    v = s.v0;
  }
  PingPongResult p = pingpong_certify(*cx.space, v, root, t, cx.cfg.n, x0, mode, cx.cfg.budget);
  cx.certificate(pingpong_json(p));
  if (p.certified && p.product_count && *p.product_count != p.expected) {
    cx.violation("ping-pong product count differs from |V|^n");
  }
  if (p.certified && !p.product_count) cx.truncated = true;
  r["certified"] = p.certified;
  r["refusal"] = p.refusal;
  r["product_count"] = opt_count(p.product_count);
  r["expected"] = p.expected;
  return r;
}

json cmd_treeapprox(Ctx& cx) {
  Point x0 = base_or(cx, cx.space->base_point());
  std::vector<Point> targets;
  for (const std::string& s : cx.cfg.targets) targets.push_back(cx.point(s));
  if (targets.empty()) targets = cx.space->all_points();
  ApproximationTree a = approximate_tree(cx.space, x0, targets);
  DistortionReport d = distortion_report(a);
  if (!d.ok && d.delta_rechecked) cx.violation("tree approximation distortion exceeds the bound");
  json c = {{"kind", "tree_approximation"}, {"ok", d.ok}, {"max_shrink", cx.len(d.max_shrink)},
            {"max_expansion", cx.len(d.max_expansion)}, {"bound", d.bound},
            {"delta_rechecked", d.delta_rechecked}, {"delta_used", cx.len(d.delta_used)}, {"pairs", d.pairs}};
  cx.certificate(c);
  return {{"base_point", cx.pt(x0)}, {"targets", targets.size()}, {"ok", d.ok},
          {"tree", json::parse(a.to_json())}};
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kConfig:
    case ErrorCode::kParse:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kContextMismatch:
    case ErrorCode::kUnsupported:
      return kExitConfig;
    case ErrorCode::kBudgetExceeded:
      return kExitTruncated;
    default:
      return kExitFailure;
  }
}

RunResult error_result(const json& echo, const Error& e) {
  RunResult out;
  out.exit_code = exit_for(e);
  out.report = {{"config_echo", echo},
                {"error", {{"code", static_cast<int>(e.code())}, {"message", e.what()}}},
                {"violations", json::array()}};
  return out;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.command == "verify-all") {
    AcceptanceOptions ao{cfg.seed, cfg.budget, cfg.threads};
    AcceptanceReport a = run_acceptance(ao);
    RunResult out;
    out.report = {{"config_echo", cfg.echo}, {"command", cfg.command}, {"acceptance", a.to_json()}};
    out.exit_code = a.ok() ? kExitOk : kExitViolation;
    return out;
  }
  RunResult out;
  try {
    SpacePtr space = build_space(cfg.space);
    Ctx cx{cfg, space};
    std::optional<ElementSet> u;
    if (cfg.set) u = build_set(*space, *cfg.set);
    json report = {{"config_echo", cfg.echo},
                   {"command", cfg.command},
                   {"mode", cfg.paper ? "paper" : "practical"},
                   {"space", space_json(*space)},
                   {"profile", nullptr},
                   {"case_trace", json::array()},
                   {"sizes", json::array()},
                   {"bounds", json::array()}};
    if (u) report["set"] = {{"size", u->size()}, {"elements", to_strings(*u)}};
    json result;
    if (cfg.command == "growth") {
      result = cmd_growth(cx, *u, report, out.sizes_csv);
    } else if (cfg.command == "energy") {
      result = cmd_energy(cx, *u, report);
    } else if (cfg.command == "reduce") {
      result = cmd_reduce(cx, *u, report);
    } else if (cfg.command == "period") {
      result = cmd_period(cx, u);
    } else if (cfg.command == "pingpong") {
      result = cmd_pingpong(cx, *u);
    } else {
      result = cmd_treeapprox(cx);
    }
    report["certificates"] = cx.certificates;
    report["violations"] = cx.violations;
    report["truncated"] = cx.truncated;
    report["result"] = result;
    out.report = std::move(report);
    if (!cx.violations.empty()) {
      out.exit_code = kExitViolation;
    } else if (cx.truncated) {
      out.exit_code = kExitTruncated;
    }
  } catch (const Error& e) {
    return error_result(cfg.echo, e);
  }
  return out;
}

RunResult run_config_text(std::string_view text) {
  ExperimentConfig cfg;
  try {
    cfg = parse_config_text(text);
  } catch (const Error& e) {
    json echo;
    try {
      echo = json::parse(text);
    } catch (const json::exception&) {
      echo = nullptr;
    }
    return error_result(echo, e);
  }
  return run_experiment(cfg);
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

void write_report_files(const std::string& dir, const std::string& report_text, const std::string& sizes_csv) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kConfig, "cannot create output directory " + dir + ": " + ec.message());
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream f(fs::path(dir) / name, std::ios::binary);
    f << text;
    if (!f) fail(ErrorCode::kConfig, "cannot write " + name + " in " + dir);
  };
  write("report.json", report_text);
  if (!sizes_csv.empty()) write("sizes.csv", sizes_csv);
}

void write_outputs(const RunResult& result, const std::string& dir) {
  write_report_files(dir, dump_report(result.report), result.sizes_csv);
}

}  // namespace psg
