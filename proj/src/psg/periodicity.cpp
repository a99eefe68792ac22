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

#include "psg/periodicity.hpp"

#include <algorithm>
#include <set>

#include "psg/hypgeom.hpp"

namespace psg {

namespace {

Check make_check(std::string name, Rational lhs, std::string rel, Rational rhs) {
  bool holds = false;
  if (rel == "<=") holds = lhs <= rhs;
  else if (rel == "<") holds = lhs < rhs;
  else if (rel == ">") holds = lhs > rhs;
  else if (rel == ">=") holds = lhs >= rhs;
  else if (rel == "==") holds = lhs == rhs;
  return {std::move(name), std::move(lhs), std::move(rel), std::move(rhs), holds};
}

// First failing check, or empty.
std::string first_failure(const std::vector<Check>& checks) {
  for (const Check& c : checks) {
    if (!c.holds) return c.name;
  }
  return {};
}

Rational translation_abs(const ActionSpace& space, const Element& root) {
  AxisData ad = translation_length(space, root);
  if (!ad.hyperbolic) fail(ErrorCode::kInvalidArgument, "period of an elliptic element");
  return space.constants().abs(ad.translation);
}

// Allowed distance to the axis (trees) or to L_g (graphs) for C_E^{+margin}.
Rational cylinder_allowance(const ActionSpace& space, Length margin) {
  Length m = margin;
  if (!space.is_tree()) m += space.constants().delta * 100;
  return space.constants().abs(m);
}

Check cylinder_check(const ActionSpace& space, const std::string& name, const Point& x, const Element& root,
                     Length margin) {
  return make_check(name, space.constants().abs(cylinder_distance(space, x, root)), "<=",
                    cylinder_allowance(space, margin));
}

// Elements g with g x0 = p on tree backends.
std::vector<Element> movers(const ActionSpace& space, const Point& x0, const Point& p) {
  std::vector<Element> out;
  Element back = inverse(x0.word);
  if (space.backend() == Backend::kFreeGroupTree) {
    out.push_back(multiply(p.word, back));
    return out;
  }
  if (p.tag != x0.tag) return out;
  const Presentation& g = space.group();
  uint32_t order = g.order(x0.tag);
  uint32_t count = order == kInfiniteOrder ? 1 : order;
  for (uint32_t k = 0; k < count; ++k) {
    out.push_back(multiply(multiply(p.word, generator(g, x0.tag, k)), back));
  }
  return out;
}

}  // namespace

Element normalized_root(const Element& g) {
  Element r = primitive_root(g).root;
  if (!r.syllables().empty() && r.syllables().front().exp < 0) return inverse(r);
  return r;
}

Rational periodic_threshold(const ActionSpace& space, const Element& e_root, const PeriodMode& mode) {
  Constants c = constants_of(space);
  Rational te = translation_abs(space, e_root);
  if (mode.paper) return 3 * c.nu * te + c.A * c.delta + pow10(7) * c.delta;
  if (mode.threshold) return *mode.threshold;
  return 3 * c.nu * te;
}

PeriodOutcome is_periodic(const ActionSpace& space, const Element& v, const Element& e_root, const Point& x0,
                          const PeriodMode& mode) {
  space.validate(x0);
  Rational thr = periodic_threshold(space, e_root, mode);
  Length margin = space.constants().delta * 190;
  Point vx = space.act(v, x0);
  PeriodOutcome out;
  out.checks.push_back(cylinder_check(space, "x0 in C_E+190delta", x0, e_root, margin));
  out.checks.push_back(cylinder_check(space, "v x0 in C_E+190delta", vx, e_root, margin));
  Rational disp = space.constants().abs(space.dist(x0, vx));
  out.checks.push_back(make_check("|v x0 - x0| > periodic length", disp, ">", thr));
  out.refusal = first_failure(out.checks);
  if (out.refusal.empty()) {
    out.certified = true;
    out.certificate = PeriodCertificate{v, normalized_root(e_root), x0, disp - thr};
  }
  return out;
}

PeriodOutcome find_period(const ActionSpace& space, const Element& v, const Point& x0, const PeriodMode& mode) {
  if (!space.is_tree()) fail(ErrorCode::kUnsupported, "period search needs a tree backend");
  space.validate(x0);
  Point vx = space.act(v, x0);
  int64_t disp = space.dist(x0, vx).whole_edges();
  std::set<Element> seen;
  for (int64_t k = 1; k <= disp; ++k) {
    Point p = space.step_toward(x0, vx, k);
    for (const Element& g : movers(space, x0, p)) {
      if (g.is_identity() || !translation_length(space, g).hyperbolic) continue;
      Element root = normalized_root(g);
      if (!seen.insert(root).second) continue;
      PeriodOutcome o = is_periodic(space, v, root, x0, mode);
      if (o.certified) return o;
    }
  }
  PeriodOutcome out;
  out.refusal = "no period found for " + to_string(v);
  return out;
}

PeriodOutcome extract_period_from_equations(const ActionSpace& space, const std::vector<Equation>& equations,
                                            const Point& x0, const PeriodMode& mode) {
  space.validate(x0);
  PeriodOutcome out;
  auto refuse = [&](const std::string& why) {
    out.refusal = why;
    return out;
  };
  if (equations.size() < 2) return refuse("at least two equations are needed");
  const SpaceConstants& sc = space.constants();
  Constants c = constants_of(space);
  const Element& v = equations.front().v;
  Element g = multiply(multiply(equations.front().u, v), equations.front().w);
  for (const Equation& e : equations) {
    if (e.v != v) return refuse("equations do not share v");
    if (multiply(multiply(e.u, v), e.w) != g) return refuse("products u_i v w_i differ");
  }
  std::vector<Equation> eq = equations;
  auto disp = [&](const Element& u) { return space.dist(x0, space.act(u, x0)); };
  std::stable_sort(eq.begin(), eq.end(), [&](const Equation& a, const Equation& b) { return disp(a.u) < disp(b.u); });
  Point vx = space.act(v, x0);
  Rational vlen = sc.abs(space.dist(x0, vx));
  out.checks.push_back(make_check("|v x0 - x0| > 26 delta", vlen, ">", 26 * c.delta));
  Rational widest = 0;
  for (size_t i = 0; i < eq.size(); ++i) {
    for (size_t j = i + 1; j < eq.size(); ++j) {
      widest = std::max(widest, sc.abs(space.dist(space.act(eq[i].u, x0), space.act(eq[j].u, x0))));
    }
  }
  out.checks.push_back(make_check("symmetry: max |u_i x0 - u_j x0| <= |v x0 - x0|", widest, "<=", vlen));
  Length tol = sc.delta;
  for (size_t i = 0; i < equations.size(); ++i) {
    const Equation& e = equations[i];
    std::string tag = " (equation " + std::to_string(i) + ")";
    out.checks.push_back(make_check("u_i v reduced" + tag,
                                    sc.abs(space.gromov_product(space.act(inverse(e.u), x0), space.act(v, x0), x0)),
                                    "<=", sc.abs(tol)));
    out.checks.push_back(make_check("v w_i reduced" + tag,
                                    sc.abs(space.gromov_product(space.act(inverse(v), x0), space.act(e.w, x0), x0)),
                                    "<=", sc.abs(tol)));
  }
  Rational spacing_min = mode.paper ? c.A * c.delta + pow10(8) * c.delta : Rational(0);
  Rational narrowest = -1;
  size_t j_min = 0;
  for (size_t i = 0; i + 1 < eq.size(); ++i) {
    Rational s = sc.abs(space.dist(space.act(eq[i].u, x0), space.act(eq[i + 1].u, x0)));
    if (narrowest < 0 || s < narrowest) {
      narrowest = s;
      j_min = i;
    }
  }
  out.checks.push_back(make_check("spacing |u_i x0 - u_i+1 x0|", narrowest, ">", spacing_min));
  if (mode.paper) {
    out.checks.push_back(make_check("number of equations - 1 >= 5 nu", static_cast<int64_t>(eq.size() - 1), ">=",
                                    5 * c.nu));
  }
  if (auto f = first_failure(out.checks); !f.empty()) return refuse(f);
  bool hypotheses = true;

  // Consequences, checked on every consecutive pair.
  Element e_root;
  for (size_t i = 0; i + 1 < eq.size(); ++i) {
    const Element& u1 = eq[i].u;
    const Element& u2 = eq[i + 1].u;
    Element h = multiply(inverse(u1), u2);
    std::string tag = " (pair " + std::to_string(i) + ")";
    bool hyp = !h.is_identity() && translation_length(space, h).hyperbolic;
    out.checks.push_back(make_check("u_i^-1 u_i+1 hyperbolic" + tag, hyp ? 1 : 0, "==", 1));
    if (!hyp) continue;
    Length margin = sc.delta * 190;
    out.checks.push_back(cylinder_check(space, "x0 in C_{u1^-1 u2}+190delta" + tag, x0, h, margin));
    out.checks.push_back(cylinder_check(space, "v x0 in C_{u1^-1 u2}+190delta" + tag, vx, h, margin));
    Point a = space.act(u1, x0), b = space.act(u2, x0);
    Point av = space.act(multiply(u1, v), x0), bv = space.act(multiply(u2, v), x0);
    out.checks.push_back(make_check("(x0, u2 x0)_{u1 x0} <= 24 delta" + tag, sc.abs(space.gromov_product(x0, b, a)),
                                    "<=", 24 * c.delta));
    out.checks.push_back(make_check("(u1 x0, u1 v x0)_{u2 x0} <= 66 delta" + tag,
                                    sc.abs(space.gromov_product(a, av, b)), "<=", 66 * c.delta));
    out.checks.push_back(make_check("(u2 x0, u2 v x0)_{u1 v x0} <= 138 delta" + tag,
                                    sc.abs(space.gromov_product(b, bv, av)), "<=", 138 * c.delta));
    if (i == j_min) e_root = normalized_root(h);
  }
  if (auto f = first_failure(out.checks); !f.empty()) {
    out.bound_violation = hypotheses && mode.paper;
    return refuse(f);
  }
  for (size_t i = 0; i + 1 < eq.size(); ++i) {
    Element h = multiply(inverse(eq[i].u), eq[i + 1].u);
    out.checks.push_back(make_check("same period as the narrowest pair (pair " + std::to_string(i) + ")",
                                    same_root(h, e_root) ? 1 : 0, "==", 1));
  }
  PeriodOutcome p = is_periodic(space, v, e_root, x0, mode);
  out.checks.insert(out.checks.end(), p.checks.begin(), p.checks.end());
  if (auto f = first_failure(out.checks); !f.empty()) {
    out.bound_violation = mode.paper;
    return refuse(f);
  }
  out.certified = true;
  out.certificate = p.certificate;
  return out;
}

RightPeriod right_period(const ActionSpace& space, const Element& u, const Element& e_root, const Point& x0,
                         const PeriodMode& mode) {
  space.validate(x0);
  Rational thr = periodic_threshold(space, e_root, mode);
  Rational allowed = cylinder_allowance(space, space.constants().delta * 190);
  RightPeriod out;
  for (const Point& p : space.geodesic(x0, space.act(inverse(u), x0))) {
    if (space.constants().abs(cylinder_distance(space, p, e_root)) <= allowed) out.points.push_back(p);
  }
  for (size_t i = 0; i < out.points.size(); ++i) {
    for (size_t j = i + 1; j < out.points.size(); ++j) {
      out.diameter = std::max(out.diameter, space.dist(out.points[i], out.points[j]));
    }
  }
  bool base_in = !out.points.empty() && out.points.front() == x0;
  out.periodic = base_in && space.constants().abs(out.diameter) > thr;
  return out;
}

Length hausdorff_distance(const ActionSpace& space, const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.empty() || b.empty()) fail(ErrorCode::kInvalidArgument, "Hausdorff distance of an empty set");
  Length worst;
  for (const Point& p : a) worst = std::max(worst, dist_to_set(space, p, b));
  for (const Point& q : b) worst = std::max(worst, dist_to_set(space, q, a));
  return worst;
}

BiPeriodicOutcome is_biperiodic(const ActionSpace& space, const ElementSet& v, const Point& x0,
                                const PeriodMode& mode) {
  space.validate(x0);
  BiPeriodicOutcome out;
  if (v.size() < 2) {
    out.refusal = "too_small";
    return out;
  }
  auto period_of = [&](const Element& g, const std::optional<Element>& guess) {
    if (space.is_tree()) return find_period(space, g, x0, mode);
    return is_periodic(space, g, *guess, x0, mode);
  };
  std::optional<Element> guess1, guess2;
  if (!space.is_tree()) {
    Element d = multiply(v[0], inverse(v[1]));
    if (!translation_length(space, d).hyperbolic) {
      out.refusal = "v0 v1^-1 is not hyperbolic";
      return out;
    }
    guess1 = normalized_root(d);
    guess2 = normalized_root(multiply(multiply(inverse(v[0]), *guess1), v[0]));
  }
  std::optional<Element> e1, e2;
  for (const Element& g : v) {
    for (int side = 0; side < 2; ++side) {
      Element h = side == 0 ? g : inverse(g);
      PeriodOutcome p = period_of(h, side == 0 ? guess1 : guess2);
      std::string who = side == 0 ? to_string(g) : to_string(g) + "^-1";
      if (!p.certified) {
        out.refusal = "not periodic: " + who;
        return out;
      }
      std::optional<Element>& e = side == 0 ? e1 : e2;
      if (!e) e = p.certificate->period_root;
      bool same = same_root(*e, p.certificate->period_root);
      out.checks.push_back(make_check("period of " + who + " matches", same ? 1 : 0, "==", 1));
      if (!same) {
        out.refusal = "period mismatch: " + who;
        return out;
      }
    }
  }
  // E2 must be the conjugate v^-1 E1 v.
  bool conj = same_root(*e2, multiply(multiply(inverse(v[0]), *e1), v[0]));
  out.checks.push_back(make_check("E2 = v0^-1 E1 v0", conj ? 1 : 0, "==", 1));
  for (size_t i = 0; i < v.size() && conj; ++i) {
    for (size_t j = i + 1; j < v.size(); ++j) {
      bool in = power_of(multiply(v[i], inverse(v[j])), *e1).has_value();
      if (!in) {
        out.checks.push_back(make_check("v v'^-1 in E1 for " + to_string(v[i]) + ", " + to_string(v[j]), 0, "==", 1));
        out.refusal = out.checks.back().name;
        return out;
      }
    }
  }
  if (!conj) {
    out.refusal = "E2 = v0^-1 E1 v0";
    return out;
  }
  out.checks.push_back(make_check("v v'^-1 in E1 for all pairs", 1, "==", 1));
  out.certified = true;
  out.witness = BiPeriodicWitness{v, *e1, *e2, *e1, v[0]};
  return out;
}

EReduction e_reduce(const ActionSpace& space, const Element& t, const Element& e_root, const Point& x0) {
  space.validate(x0);
  Element root = primitive_root(e_root).root;
  AxisData ad = translation_length(space, root);
  if (!ad.hyperbolic) fail(ErrorCode::kInvalidArgument, "E-reduction needs a hyperbolic E");
  EReduction out;
  if (!cylinder_membership(space, x0, root, Length())) {
    out.refusal = "x0 is not in C_E";
    return out;
  }
  if (power_of(t, root)) {
    out.refusal = "in_E";
    return out;
  }
  Length te = ad.translation;
  int64_t disp = space.dist(x0, space.act(t, x0)).half_units();
  int64_t w = (disp + te.half_units() - 1) / te.half_units() + 2;
  auto value = [&](int64_t i, int64_t j) {
    Element tp = multiply(multiply(power(root, -i), t), power(root, -j));
    return space.dist(x0, space.act(tp, x0));
  };
  for (int attempt = 0; attempt < 4; ++attempt, w *= 2) {
    Length best = Length::infinity();
    int64_t bi = 0, bj = 0;
    auto better = [&](int64_t i, int64_t j, Length d) {
      if (d != best) return d < best;
      auto key = [](int64_t a, int64_t b) { return std::make_tuple(std::abs(a) + std::abs(b), a, b); };
      return key(i, j) < key(bi, bj);
    };
    Length boundary = Length::infinity();
    for (int64_t i = -w; i <= w; ++i) {
      for (int64_t j = -w; j <= w; ++j) {
        Length d = value(i, j);
        if (std::abs(i) == w || std::abs(j) == w) boundary = std::min(boundary, d);
        if (better(i, j, d)) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    out.window = w;
    out.window_certified = boundary > best;
    out.e_power = bi;
    out.f_power = bj;
    out.displacement = best;
    if (out.window_certified) break;
  }
  out.e = power(root, out.e_power);
  out.f = power(root, out.f_power);
  out.t_prime = multiply(multiply(inverse(out.e), t), inverse(out.f));
  out.ok = true;
  return out;
}

PingPongResult pingpong_certify(const ActionSpace& space, const ElementSet& v, const Element& e_root,
                                const Element& t, unsigned n, const Point& x0, const PeriodMode& mode,
                                uint64_t budget) {
  space.validate(x0);
  if (v.empty()) fail(ErrorCode::kInvalidArgument, "ping-pong of an empty set");
  if (n == 0) fail(ErrorCode::kInvalidArgument, "n must be positive");
  const SpaceConstants& sc = space.constants();
  Constants c = constants_of(space);
  Element root = primitive_root(e_root).root;
  Rational te = translation_abs(space, root);
  PingPongResult out;
  out.a = mode.paper ? 3 * c.nu * te + c.A * c.delta + pow10(5) * c.delta
                     : mode.pingpong_a.value_or(2 * te + 4512 * c.delta);
  uint64_t k = v.size();
  out.expected = 1;
  for (unsigned i = 0; i < n; ++i) {
    out.expected = out.expected > UINT64_MAX / k ? UINT64_MAX : out.expected * k;
  }

  bool in_e = true;
  for (const Element& g : v) in_e = in_e && power_of(g, root).has_value();
  out.checks.push_back(make_check("V inside E", in_e ? 1 : 0, "==", 1));
  bool t_out = !power_of(t, root).has_value();
  out.checks.push_back(make_check("t not in E", t_out ? 1 : 0, "==", 1));
  Rational tdisp = sc.abs(space.dist(x0, space.act(t, x0)));
  if (t_out) {
    EReduction er = e_reduce(space, t, root, x0);
    Rational best = er.ok ? sc.abs(er.displacement) : Rational(-1);
    out.checks.push_back(make_check("t E-reduced: |t x0 - x0| == min over E t E", tdisp, "==", best));
  }
  Rational min_disp = -1, min_gap = -1;
  for (size_t i = 0; i < k; ++i) {
    Rational d = sc.abs(space.dist(x0, space.act(v[i], x0)));
    if (min_disp < 0 || d < min_disp) min_disp = d;
    for (size_t j = i + 1; j < k; ++j) {
      Rational g = sc.abs(space.dist(space.act(v[i], x0), space.act(v[j], x0)));
      if (min_gap < 0 || g < min_gap) min_gap = g;
    }
  }
  out.checks.push_back(make_check("min |v x0 - x0| >= 10 a", min_disp, ">=", 10 * out.a));
  if (k > 1) out.checks.push_back(make_check("min |v x0 - v' x0| >= 10 a", min_gap, ">=", 10 * out.a));
  out.refusal = first_failure(out.checks);
  out.hypotheses_ok = out.refusal.empty();

  if (k == 1) {
    out.product_count = 1;
    out.certified = out.hypotheses_ok || (in_e && t_out);
    if (out.certified) out.refusal.clear();
    return out;
  }
  if (k * k * k > budget) fail(ErrorCode::kBudgetExceeded, "ping-pong local check exceeds the budget");

  // Local triples (x_i, x_{i+1}, x_{i+2}) reduce to consecutive factors s, s'
  // of v1 (t v2) ... (t v_n w_n^-1) (t^-1 w_{n-1}^-1) ... (t^-1 w_1^-1).
  Element ti = inverse(t);
  std::vector<Element> f1, f2, f4;
  std::vector<Element> f3;
  for (const Element& g : v) {
    f1.push_back(g);
    f2.push_back(multiply(t, g));
    f4.push_back(multiply(ti, inverse(g)));
  }
  for (const Element& g : v) {
    for (const Element& h : v) {
      if (g != h) f3.push_back(multiply(t, multiply(g, inverse(h))));
    }
  }
  struct Factor {
    Point fwd, back;
    Length step;
  };
  auto prep = [&](const std::vector<Element>& fs) {
    std::vector<Factor> out_f;
    for (const Element& s : fs) {
      Point f = space.act(s, x0);
      out_f.push_back({f, space.act(inverse(s), x0), space.dist(x0, f)});
    }
    return out_f;
  };
  std::vector<Factor> p1 = prep(f1), p2 = prep(f2), p3 = prep(f3), p4 = prep(f4);
  bool have = false;
  auto pairs = [&](const std::vector<Factor>& a, const std::vector<Factor>& b) {
    for (const Factor& s : a) {
      for (const Factor& s2 : b) {
        Rational gp = sc.abs(space.gromov_product(s.back, s2.fwd, x0));
        Rational slack = sc.abs(std::min(s.step, s2.step)) / 2 - c.delta - gp;
        if (!have || slack < out.min_slack) out.min_slack = slack;
        have = true;
        ++out.triples;
      }
    }
  };
  pairs(p1, p2);
  pairs(p2, p2);
  pairs(p1, p3);
  pairs(p2, p3);
  pairs(p3, p4);
  pairs(p4, p4);
  bool local_ok = space.is_tree() ? out.min_slack > 0 : out.min_slack >= 9 * c.delta;
  out.checks.push_back(make_check("local chain slack", out.min_slack, space.is_tree() ? ">" : ">=",
                                  space.is_tree() ? Rational(0) : 9 * c.delta));

  if (out.expected <= budget) {
    std::vector<Element> vt;
    for (const Element& g : v) vt.push_back(multiply(g, t));
    ElementSet base(v.context(), vt);
    ProductOptions po;
    po.budget = budget;
    out.product_count = product_set(base, n, po).size();
    out.checks.push_back(make_check("|(Vt)^n| == |V|^n", static_cast<int64_t>(*out.product_count), "==",
                                    static_cast<int64_t>(out.expected)));
  }
  if (out.refusal.empty()) out.refusal = first_failure(out.checks);
  out.certified = out.hypotheses_ok && local_ok && out.refusal.empty();
  return out;
}

SeparationResult separate(const ActionSpace& space, const ElementSet& v, const Element& e_root, unsigned r,
                          const Point& x0, const PeriodMode& mode) {
  space.validate(x0);
  if (v.empty()) fail(ErrorCode::kInvalidArgument, "separation of an empty set");
  if (r == 0) fail(ErrorCode::kInvalidArgument, "r must be positive");
  Element root = primitive_root(e_root).root;
  Rational te = translation_abs(space, root);
  const SpaceConstants& sc = space.constants();
  SeparationResult out;
  out.spacing = te * r;
  out.v0 = ElementSet(v.context(), {});
  if (!cylinder_membership(space, x0, root, Length())) {
    out.refusal = "x0 is not in C_E";
    return out;
  }
  for (const Element& g : v) {
    if (!power_of(g, root)) {
      out.refusal = "not in E: " + to_string(g);
      return out;
    }
  }
  std::vector<std::pair<Length, Element>> order;
  for (const Element& g : v) order.emplace_back(space.dist(x0, space.act(g, x0)), g);
  std::sort(order.begin(), order.end());
  std::vector<Element> kept;
  std::vector<Point> kept_pts;
  for (const auto& [d, g] : order) {
    if (sc.abs(d) < out.spacing) continue;
    Point gx = space.act(g, x0);
    bool far = true;
    for (const Point& q : kept_pts) far = far && sc.abs(space.dist(gx, q)) >= out.spacing;
    if (!far) continue;
    kept.push_back(g);
    kept_pts.push_back(gx);
  }
  out.v0 = ElementSet(v.context(), kept);
  if (kept.empty()) out.refusal = "every element moves x0 by less than r [E]";
  uint64_t size = v.size();
  if (mode.paper) {
    uint64_t den = 600000ull * r * constants_of(space).n0;
    out.guarantee_applies = size > 2 * den;
    out.guarantee_met = den * kept.size() >= size;
  } else {
    out.guarantee_applies = size >= 2ull * r * r;
    out.guarantee_met = (2ull * r + 1) * kept.size() >= size;
  }
  return out;
}

}  // namespace psg
