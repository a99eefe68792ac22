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

#include "psg/growth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "psg/hypgeom.hpp"

namespace psg {

namespace {

double log_of(const Rational& q) {
  if (q <= 0) return -INFINITY;
  return std::log(static_cast<double>(numerator(q))) - std::log(static_cast<double>(denominator(q)));
}

Rational abs_disp(const ActionSpace& space, const Element& g, const Point& x0) {
  return space.constants().abs(space.dist(x0, space.act(g, x0)));
}

// floor(log2(x)) for x >= 1.
uint64_t floor_log2(uint64_t x) { return static_cast<uint64_t>(std::bit_width(x)) - 1; }

std::optional<uint64_t> try_size(const ElementSet& u, unsigned n, const ProductOptions& opts) {
  try {
    return product_set(u, n, opts).size();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBudgetExceeded) throw;
    return std::nullopt;
  }
}

}  // namespace

unsigned half_exponent(unsigned n) { return (n + 1) / 2; }

Rational rational_pow(const Rational& base, unsigned k) {
  Rational out = 1;
  for (unsigned i = 0; i < k; ++i) out *= base;
  return out;
}

AlphaConstants alpha_constants(const ActionSpace& space, const Point& x0) {
  const SpaceConstants& sc = space.constants();
  Rational n0 = static_cast<int64_t>(sc.n0);
  Rational delta = sc.delta_abs();
  AlphaConstants a;
  a.alpha_tree = sc.rho0 * sc.rho0 / (pow10(15) * sc.kappa0 * sc.kappa0);
  a.alpha_acyl = delta * delta / (pow10(50) * rational_pow(n0, 6) * sc.kappa0 * sc.kappa0);
  a.c_concentrated = sc.rho0 / (pow10(6) * sc.kappa0);
  a.gamma = pow10(14) * rational_pow(n0, 3) * sc.kappa0 / sc.rho0;
  a.c_counting = pow10(12) * rational_pow(n0, 4) * sc.kappa0 * sc.kappa0 / (sc.rho0 * sc.rho0);
  if (!space.is_tree()) {
    std::optional<uint64_t> ball = space.ball_size(x0, sc.delta * 1000);
    a.b = 10 * ball.value_or(1);
  }
  return a;
}

CyclicCheck virtually_cyclic_precheck(const ActionSpace& space, const ElementSet& u, const Point& x0) {
  CyclicCheck out;
  std::optional<Element> root;
  bool shared = true;
  for (const Element& g : u) {
    if (g.is_identity()) continue;
    if (!root) {
      root = primitive_root(g).root;
    } else if (!same_root(g, *root)) {
      shared = false;
      break;
    }
  }
  if (!root) {
    out.virtually_cyclic = true;
    out.reason = "trivial";
    return out;
  }
  bool fixes = space.is_tree();
  for (const Element& g : u) {
    if (!fixes) break;
    fixes = space.dist(x0, space.act(g, x0)) == Length();
  }
  // A torsion generator is its own root, so a shared root only means a cyclic
  // group for hyperbolic roots or finite factors.
  if (shared) {
    out.virtually_cyclic = true;
    out.reason = "cyclic: " + to_string(normalized_root(*root));
  } else if (fixes) {
    out.virtually_cyclic = true;
    out.reason = "elliptic";
  }
  return out;
}

ConcentratedResult concentrated_pipeline(const ActionSpace& space, const ElementSet& u, const Point& x0,
                                         const ConcentratedOptions& opts) {
  if (u.empty()) fail(ErrorCode::kInvalidArgument, "concentrated pipeline of an empty set");
  if (opts.n == 0) fail(ErrorCode::kInvalidArgument, "n must be positive");
  space.validate(x0);
  const SpaceConstants& sc = space.constants();
  AlphaConstants ac = alpha_constants(space, x0);
  Rational d = d_factor(space, u.size());
  ConcentratedResult out;
  out.n = opts.n;
  unsigned l = half_exponent(opts.n);
  out.paper_bound = rational_pow(ac.c_concentrated / 4 * static_cast<int64_t>(u.size()), l);

  if (opts.paper) {
    out.threshold = pow10(10) * d * sc.kappa0;
  } else {
    out.threshold = opts.threshold.value_or(sc.rho0);
  }
  Rational witness_min = opts.paper ? pow10(4) * out.threshold : opts.witness_min.value_or(2 * out.threshold);
  out.offset = opts.paper ? floor_length(500 * out.threshold, sc.edge_length)
                          : opts.offset.value_or(floor_length(out.threshold, sc.edge_length));
  out.spacing = opts.paper ? 42 * out.threshold : opts.spacing.value_or(Rational(0));

  std::vector<Element> small;
  std::optional<Element> witness;
  Rational best = -1;
  for (const Element& g : u) {
    Rational dg = abs_disp(space, g, x0);
    if (dg <= out.threshold) small.push_back(g);
    if (dg > best) {
      best = dg;
      witness = g;
    }
  }
  out.u1 = ElementSet(u.context(), small);
  out.u2 = ElementSet(u.context(), {});
  if (!witness || best <= 0 || best < witness_min) {
    out.refusal = "no_hyperbolic_witness";
    return out;
  }
  out.witness = *witness;
  out.witness_displacement = best;
  const Element& v = out.witness;
  Point vx = space.act(v, x0);
  if (out.offset > space.dist(x0, vx)) out.offset = space.dist(x0, vx);
  out.m = space.step_toward(x0, vx, out.offset.whole_edges());
  if (out.offset.half_units() % 2 != 0 && space.is_tree()) {
    // Half-edge offsets are rounded down to a vertex.
    out.offset = Length::edges(out.offset.whole_edges());
  }
  if (out.u1.empty()) {
    out.refusal = "U1 is empty";
    return out;
  }

  std::vector<Element> kept;
  std::vector<Point> kept_m;
  for (const Element& g : out.u1) {
    Point gm = space.act(g, out.m);
    bool far = true;
    for (const Point& q : kept_m) far = far && sc.abs(space.dist(gm, q)) > out.spacing;
    if (!far) continue;
    kept.push_back(g);
    kept_m.push_back(gm);
  }
  out.u2 = ElementSet(u.context(), kept);
  uint64_t k = out.u2.size();
  out.expected = 1;
  for (unsigned i = 0; i < opts.n; ++i) out.expected = out.expected > UINT64_MAX / k ? UINT64_MAX : out.expected * k;
  out.achieved_bound = rational_pow(static_cast<int64_t>(k), l);

  // Consecutive factors of (v^-1 a_m^-1)...(v^-1 a_1^-1)(b_1 v)...(b_m v).
  Element vi = inverse(v);
  std::vector<Point> back_fwd, fwd_back, back_back, fwd_fwd;
  std::vector<Length> step_back, step_fwd;
  for (const Element& a : out.u2) {
    Element s = multiply(vi, inverse(a));  // v^-1 a^-1
    Element t = multiply(a, v);            // a v
    back_fwd.push_back(space.act(s, x0));
    fwd_back.push_back(space.act(inverse(t), x0));
    back_back.push_back(space.act(t, x0));  // (v^-1 a^-1)^-1 x0
    fwd_fwd.push_back(space.act(t, x0));
    step_back.push_back(space.dist(x0, space.act(s, x0)));
    step_fwd.push_back(space.dist(x0, space.act(t, x0)));
  }
  bool have = false;
  auto consider = [&](const Point& p, const Point& q, Length s1, Length s2) {
    Rational gp = sc.abs(space.gromov_product(p, q, x0));
    Rational slack = sc.abs(std::min(s1, s2)) / 2 - 2 * sc.delta_abs() - gp;
    if (!have || slack < out.min_slack) out.min_slack = slack;
    have = true;
    ++out.triples;
  };
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      consider(back_back[i], back_fwd[j], step_back[i], step_back[j]);   // v^-1 a^-1, v^-1 a'^-1
      if (i != j) consider(back_back[i], fwd_fwd[j], step_back[i], step_fwd[j]);  // v^-1 a^-1, b v
      consider(fwd_back[i], fwd_fwd[j], step_fwd[i], step_fwd[j]);       // b v, b' v
    }
  }
  bool local_ok = k == 1 || (sc.delta_abs() > 0 ? out.min_slack >= 0 : out.min_slack > 0);

  if (out.expected <= opts.products.budget) {
    std::vector<Element> uv;
    for (const Element& a : out.u2) uv.push_back(multiply(a, v));
    out.chain_count = try_size(ElementSet(u.context(), uv), opts.n, opts.products);
  }
  out.measured = try_size(u, opts.n, opts.products);
  bool count_ok = !out.chain_count || *out.chain_count == out.expected;
  bool measured_ok = !out.measured || Rational(static_cast<int64_t>(*out.measured)) >= out.achieved_bound;
  out.certified = local_ok && count_ok && measured_ok;
  if (!local_ok) out.refusal = "local chain slack";
  else if (!count_ok) out.refusal = "|(U2 v)^n| != |U2|^n";
  else if (!measured_ok) out.refusal = "measured |U^n| below the achieved bound";
  return out;
}

std::string to_string(DiffuseBranch b) {
  switch (b) {
    case DiffuseBranch::kNonPeriodic:
      return "non_periodic";
    case DiffuseBranch::kBiPeriodic:
      return "bi_periodic";
    case DiffuseBranch::kNotApplicable:
      return "not_applicable";
    case DiffuseBranch::kRerouted:
      return "rerouted";
  }
  return "unknown";
}

namespace {

ReductionResult run_reduction(const ActionSpace& space, const ElementSet& u, const Point& x0,
                              const ReductionOptions& opts) {
  if (space.is_tree()) return reduce_tree(space, u, x0, opts);
  return reduce_graph(space, u, x0, opts);
}

// Ping-pong route for a bi-periodic U2 inside E t.
void bi_periodic_route(const ActionSpace& space, const ElementSet& u, const Point& x0, const DiffuseOptions& opts,
                       DiffuseResult& out) {
  const BiPeriodicWitness& w = *out.biperiodic->witness;
  Element root = primitive_root(w.coset_root).root;
  Element t = w.coset_rep;
  std::vector<Element> base;
  unsigned exponent = out.n;
  out.t_in_e = power_of(t, root).has_value();
  if (!out.t_in_e) {
    for (const Element& v : out.u2) base.push_back(multiply(v, inverse(t)));
  } else {
    std::optional<Element> s;
    for (const Element& g : u) {
      if (!power_of(g, root)) {
        s = g;
        break;
      }
    }
    if (!s) return;
    t = *s;
    base.assign(out.u2.begin(), out.u2.end());
    exponent = half_exponent(out.n);
  }
  out.ping_t = t;
  out.ereduction = e_reduce(space, t, root, x0);
  if (!out.ereduction->ok) return;
  const EReduction& er = *out.ereduction;
  std::vector<Element> shifted;
  for (const Element& g : base) shifted.push_back(multiply(multiply(er.f, g), er.e));
  ElementSet v(u.context(), shifted);

  const SpaceConstants& sc = space.constants();
  Rational te = sc.abs(translation_length(space, root).translation);
  Constants c = constants_of(space);
  Rational a = opts.period.paper ? 3 * c.nu * te + c.A * c.delta + pow10(5) * c.delta
                                 : opts.period.pingpong_a.value_or(2 * te + 4512 * c.delta);
  Rational ratio = 10 * a / te;
  unsigned r = static_cast<unsigned>(std::max<int64_t>(
      1, static_cast<int64_t>((numerator(ratio) + denominator(ratio) - 1) / denominator(ratio))));
  out.separation = separate(space, v, root, r, x0, opts.period);
  if (out.separation->v0.empty()) return;
  PeriodMode pm = opts.period;
  pm.pingpong_a = a;
  out.pingpong = pingpong_certify(space, out.separation->v0, root, er.t_prime, out.n, x0, pm, opts.products.budget);
  if (out.pingpong->certified) {
    out.pingpong_bound = rational_pow(static_cast<int64_t>(out.separation->v0.size()), exponent);
  }
}

}  // namespace

DiffuseResult diffuse_pipeline(const ActionSpace& space, const ElementSet& u, const DiffuseOptions& opts) {
  if (u.empty()) fail(ErrorCode::kInvalidArgument, "diffuse pipeline of an empty set");
  if (opts.n < 3) fail(ErrorCode::kInvalidArgument, "diffuse pipeline needs n >= 3");
  DiffuseResult out;
  out.n = opts.n;
  out.l = half_exponent(opts.n);
  EnergyProfile profile = minimize_energy(space, u);
  Point x0 = profile.base_point;
  out.base_point = x0;
  AlphaConstants ac = alpha_constants(space, x0);
  if (space.is_tree()) {
    out.paper_bound = rational_pow(static_cast<int64_t>(u.size()) / (8 * ac.c_counting * 200), out.l);
  } else {
    Rational d = profile.d_factor;
    Rational b2 = static_cast<int64_t>(ac.b * ac.b);
    out.paper_bound = rational_pow(
        static_cast<int64_t>(u.size()) / (8 * pow10(36) * rational_pow(d, 6) * ac.c_counting * 2 * b2), out.l);
  }
  out.measured = try_size(u, opts.n, opts.products);

  CyclicCheck cyc = virtually_cyclic_precheck(space, u, x0);
  if (cyc.virtually_cyclic) {
    out.reason = "virtually cyclic (" + cyc.reason + ")";
    return out;
  }
  CaseSplit split = classify(space, u, profile, opts.case_mode);
  if (split.kind == EnergyCase::kConcentrated) {
    out.branch = DiffuseBranch::kRerouted;
    out.reason = "concentrated energy";
    ConcentratedOptions co = opts.concentrated;
    co.n = opts.n;
    co.products = opts.products;
    out.rerouted = concentrated_pipeline(space, u, x0, co);
    if (out.rerouted->certified) {
      out.achieved_bound = out.rerouted->achieved_bound;
      out.bound_source = "concentrated";
    }
    return out;
  }
  if (split.kind == EnergyCase::kBelowThreshold) {
    out.reason = "displacement below the floor";
    return out;
  }

  out.reduction = run_reduction(space, u, x0, opts.reduction);
  if (!out.reduction.certified) {
    out.reason = "reduction failed: " + to_string(out.reduction.failure);
    return out;
  }
  std::tie(out.u1, out.u2) = median_split(space, out.reduction.u1, out.reduction.u2, x0);
  if (out.u1.empty() || out.u2.empty()) {
    out.reason = "median split left an empty set";
    return out;
  }
  out.w = out.u1;
  for (unsigned i = 0; i + 2 < out.l; ++i) {
    out.w = multiply_sets(multiply_sets(out.u1, out.u2, opts.products), out.w, opts.products);
  }

  for (const Element& v : out.u2) {
    ElementCount ec;
    ec.v = v;
    std::map<Element, std::vector<std::pair<Element, Element>>> fibers;
    uint64_t pairs = 0;
    for (const Element& a : out.u1) {
      Element av = multiply(a, v);
      for (const Element& b : out.w) {
        fibers[multiply(av, b)].emplace_back(a, b);
        if (++pairs > opts.products.budget) fail(ErrorCode::kBudgetExceeded, "U1 v W exceeds the budget");
      }
    }
    ec.count = fibers.size();
    const std::vector<std::pair<Element, Element>>* big = nullptr;
    for (const auto& [g, f] : fibers) {
      if (!big || f.size() > big->size()) big = &f;
    }
    ec.fiber = big->size();
    if (ec.fiber >= 2) {
      std::vector<Equation> eqs;
      for (const auto& [a, b] : *big) eqs.push_back({a, v, b});
      PeriodOutcome p = extract_period_from_equations(space, eqs, x0, opts.period);
      ec.extraction = p.certified ? "certified" : p.refusal;
      if (p.certified) ec.period_root = p.certificate->period_root;
    }
    out.best_count = std::max(out.best_count, ec.count);
    out.counts.push_back(std::move(ec));
  }
  out.counting_bound = static_cast<int64_t>(out.best_count);

  if (out.u2.size() >= 2) {
    out.biperiodic = is_biperiodic(space, out.u2, x0, opts.period);
  }
  if (out.biperiodic && out.biperiodic->certified) {
    out.branch = DiffuseBranch::kBiPeriodic;
    bi_periodic_route(space, u, x0, opts, out);
  } else {
    out.branch = DiffuseBranch::kNonPeriodic;
  }
  if (out.pingpong_bound > out.counting_bound) {
    out.achieved_bound = out.pingpong_bound;
    out.bound_source = "ping-pong";
  } else {
    out.achieved_bound = out.counting_bound;
    out.bound_source = "counting";
  }
  return out;
}

GrowthReport growth_report(const ActionSpace& space, const ElementSet& u, const GrowthOptions& opts) {
  if (u.empty()) fail(ErrorCode::kInvalidArgument, "growth report of an empty set");
  if (opts.n_max == 0) fail(ErrorCode::kInvalidArgument, "n_max must be at least 1");
  GrowthReport r;
  r.set_size = u.size();
  r.profile = minimize_energy(space, u);
  const Point& x0 = r.profile.base_point;
  AlphaConstants ac = alpha_constants(space, x0);
  const SpaceConstants& sc = space.constants();
  if (space.is_tree()) {
    r.alpha = ac.alpha_tree;
    r.alpha_source = "tree";
  } else {
    uint64_t lg = floor_log2(2 * r.set_size);
    r.alpha = ac.alpha_acyl / rational_pow(static_cast<int64_t>(lg), 6);
    r.alpha_source = "acylindrical";
  }
  r.displacement_floor = pow10(14) * r.profile.d_factor * sc.kappa0;
  r.cyclic = virtually_cyclic_precheck(space, u, x0);
  r.hypotheses_certified = !r.cyclic.virtually_cyclic && r.profile.displacement >= r.displacement_floor;

  ProductSizes ps = product_sizes(u, opts.n_max, opts.products);
  r.sizes = ps.sizes;
  r.truncated = ps.truncated;
  Rational base = r.alpha * static_cast<int64_t>(r.set_size);
  for (unsigned k = 1; k <= opts.n_max; ++k) {
    Rational b = rational_pow(base, half_exponent(k));
    r.bounds.push_back(b);
    if (k > r.sizes.size()) continue;
    bool holds = Rational(static_cast<int64_t>(r.sizes[k - 1])) >= b;
    r.bound_holds.push_back(holds);
    if (!holds && r.hypotheses_certified) {
      r.violations.push_back("n=" + std::to_string(k) + ": |U^n| below the growth bound");
    }
  }
  r.entropy_lb = 0.5 * log_of(base);
  size_t last = r.sizes.size();
  r.entropy_measured = std::log(static_cast<double>(r.sizes.back())) / static_cast<double>(last);
  if (r.hypotheses_certified && r.entropy_lb > r.entropy_measured) {
    r.violations.push_back("entropy below 1/2 log(alpha |U|)");
  }

  if (r.cyclic.virtually_cyclic) {
    r.case_trace.push_back("not_applicable: virtually cyclic (" + r.cyclic.reason + ")");
    return r;
  }
  CaseMode cm = opts.pipeline.case_mode;
  cm.paper = opts.paper;
  r.split = classify(space, u, r.profile, cm);
  r.case_trace.push_back(to_string(r.split.kind));
  if (opts.run_pipeline && opts.n_max >= 3 && !r.truncated) {
    DiffuseOptions po = opts.pipeline;
    po.paper = opts.paper;
    po.case_mode = cm;
    po.n = std::min(po.n < 3 ? 3u : po.n, opts.n_max);
    po.products = opts.products;
    try {
      r.pipeline = diffuse_pipeline(space, u, po);
      r.case_trace.push_back(to_string(r.pipeline->branch));
      if (!r.pipeline->reason.empty()) r.case_trace.push_back(r.pipeline->reason);
      if (r.pipeline->measured && Rational(static_cast<int64_t>(*r.pipeline->measured)) < r.pipeline->achieved_bound) {
        r.violations.push_back("pipeline bound exceeds the measured size");
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBudgetExceeded) throw;
      r.case_trace.push_back("pipeline truncated: budget");
      r.truncated = true;
    }
  }
  return r;
}

ExponentFit exponent_fit(const std::function<ElementSet(unsigned)>& family, unsigned n,
                         const std::vector<unsigned>& range, const ProductOptions& opts) {
  if (range.size() < 2) fail(ErrorCode::kInvalidArgument, "exponent fit needs at least two family sizes");
  if (n == 0) fail(ErrorCode::kInvalidArgument, "n must be positive");
  ExponentFit fit;
  std::vector<double> xs, ys;
  for (unsigned big_n : range) {
    if (big_n == 0) fail(ErrorCode::kInvalidArgument, "family sizes must be positive");
    ProductSizes ps = product_sizes(family(big_n), n, opts);
    if (ps.truncated || ps.sizes.size() < n) {
      fit.truncated = true;
      break;
    }
    fit.family_sizes.push_back(big_n);
    fit.counts.push_back(ps.sizes.back());
    xs.push_back(std::log(static_cast<double>(big_n)));
    ys.push_back(std::log(static_cast<double>(ps.sizes.back())));
  }
  if (xs.size() < 2) return fit;
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double num = 0, den = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  fit.slope = num / den;
  return fit;
}

}  // namespace psg
