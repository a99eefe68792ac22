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

#include "psg/reduction.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "psg/treeapprox.hpp"

namespace psg {

std::string to_string(ReductionBranch b) {
  switch (b) {
    case ReductionBranch::kTreeRecursion:
      return "tree_recursion";
    case ReductionBranch::kSphereGraph:
      return "sphere_graph";
    case ReductionBranch::kViaTreeApprox:
      return "via_tree_approx";
    case ReductionBranch::kFailed:
      return "failed";
  }
  return "unknown";
}

std::string to_string(ReductionFailure f) {
  switch (f) {
    case ReductionFailure::kNone:
      return "none";
    case ReductionFailure::kTooSmall:
      return "too_small";
    case ReductionFailure::kConcentratedOrBelow:
      return "concentrated_or_below";
    case ReductionFailure::kNotMinimal:
      return "not_minimal";
    case ReductionFailure::kNoSeparatedPair:
      return "no_separated_pair";
    case ReductionFailure::kCardinality:
      return "cardinality";
    case ReductionFailure::kCertificate:
      return "certificate";
  }
  return "unknown";
}

bool reduced_at(const ActionSpace& space, const Element& u, const Element& v, const Point& x0, Length tol) {
  return space.gromov_product(space.act(inverse(u), x0), space.act(v, x0), x0) <= tol;
}

CrossCertificate certify_cross(const ActionSpace& space, const ElementSet& u1, const ElementSet& u2,
                               const Point& x0, Length tol) {
  auto images = [&](const ElementSet& s, std::vector<Point>& fwd, std::vector<Point>& bwd) {
    for (const Element& g : s) {
      fwd.push_back(space.act(g, x0));
      bwd.push_back(space.act(inverse(g), x0));
    }
  };
  std::vector<Point> f1, b1, f2, b2;
  images(u1, f1, b1);
  images(u2, f2, b2);
  CrossCertificate c;
  for (size_t i = 0; i < f1.size(); ++i) {
    for (size_t j = 0; j < f2.size(); ++j) {
      c.max_12 = std::max(c.max_12, space.gromov_product(b1[i], f2[j], x0));
      c.max_21 = std::max(c.max_21, space.gromov_product(b2[j], f1[i], x0));
      ++c.pairs;
    }
  }
  c.ok = c.max_12 <= tol && c.max_21 <= tol;
  return c;
}

Length default_tree_radius(const ActionSpace& space) {
  const SpaceConstants& c = space.constants();
  Length r = floor_length(c.kappa0 / 4, c.edge_length);
  r = Length::edges(r.whole_edges());
  return std::max(r, Length::edges(1));
}

namespace {

// Displacements and orbit points of every element, in set order.
struct Orbits {
  std::vector<Point> fwd, bwd;
  std::vector<Length> disp;
};

Orbits orbits_of(const ActionSpace& space, const ElementSet& u, const Point& x0) {
  Orbits o;
  for (const Element& g : u) {
    o.fwd.push_back(space.act(g, x0));
    o.bwd.push_back(space.act(inverse(g), x0));
    o.disp.push_back(space.dist(x0, o.fwd.back()));
  }
  return o;
}

Length check_radius(const std::optional<Length>& r, Length fallback) {
  Length v = r.value_or(fallback);
  if (v <= Length() || !v.whole()) fail(ErrorCode::kInvalidArgument, "reduction radius must be a positive number of edges");
  return v;
}

ElementSet subset(const ElementSet& u, const std::vector<size_t>& idx) {
  std::vector<Element> m;
  for (size_t i : idx) m.push_back(u[i]);
  return ElementSet(u.context(), std::move(m));
}

// Applies the small-displacement hypothesis; returns false when it fails.
bool check_small(const ActionSpace& space, const ElementSet& u, const Orbits& o, ReductionResult& r) {
  for (Length d : o.disp) {
    if (space.constants().abs(d) <= r.threshold) ++r.small;
  }
  if (4 * r.small > u.size()) {
    r.failure = ReductionFailure::kConcentratedOrBelow;
    std::ostringstream s;
    s << r.small << " of " << u.size() << " elements displace x0 by at most " << to_string(r.threshold)
      << ", more than 1/4";
    r.diagnostic = s.str();
    return false;
  }
  return true;
}

// Sphere class of each element on each side, -1 for discarded elements.
struct Classes {
  std::vector<int> a, b;
  std::vector<std::string> names;  // sorted: class ids follow encoding order
};

struct PeelOutcome {
  bool stopped = false;
  std::vector<size_t> first, second;
  uint64_t rounds = 0;
  uint64_t ab = 0, ba = 0, aa = 0, bb = 0;
};

// Moves the smallest remaining point of A to B each round and stops at the
// first round where U_{A,B}, U_{B,A} or U_{B,B} exceeds |U|/100.
PeelOutcome peel(const Classes& c, size_t total) {
  std::vector<char> in_b(c.names.size(), 0);
  PeelOutcome out;
  for (size_t n = 0; n <= c.names.size(); ++n) {
    if (n > 0) in_b[n - 1] = 1;
    out.rounds = n;
    std::vector<size_t> ab, ba, aa, bb;
    for (size_t i = 0; i < c.a.size(); ++i) {
      if (c.a[i] < 0) continue;
      bool sa = in_b[c.a[i]], sb = in_b[c.b[i]];
      (sa ? (sb ? bb : ba) : (sb ? ab : aa)).push_back(i);
    }
    out.ab = ab.size();
    out.ba = ba.size();
    out.aa = aa.size();
    out.bb = bb.size();
    if (100 * ab.size() > total) {
      out.first = out.second = ab;
    } else if (100 * ba.size() > total) {
      out.first = out.second = ba;
    } else if (100 * bb.size() > total) {
      out.first = aa;
      out.second = bb;
    } else {
      continue;
    }
    out.stopped = true;
    return out;
  }
  return out;
}

void record_max_class(const Classes& c, ReductionResult& r) {
  std::vector<uint64_t> count(c.names.size(), 0);
  for (size_t i = 0; i < c.a.size(); ++i) {
    if (c.a[i] >= 0 && c.a[i] == c.b[i]) ++count[c.a[i]];
  }
  for (size_t k = 0; k < count.size(); ++k) {
    if (count[k] > r.max_class) {
      r.max_class = count[k];
      r.max_class_point = c.names[k];
    }
  }
}

// Shared tail: certificate, size guarantee, failure classification.
void finish(const ActionSpace& space, const ElementSet& u, const Point& x0, uint64_t size_den,
            ReductionBranch branch, ReductionResult& r) {
  r.certificate = certify_cross(space, r.u1, r.u2, x0, r.tolerance);
  bool sizes_ok = size_den * r.u1.size() >= u.size() && size_den * r.u2.size() >= u.size();
  std::ostringstream s;
  if (!r.certificate.ok) {
    r.failure = ReductionFailure::kCertificate;
    s << "cross Gromov products " << r.certificate.max_12.str() << ", " << r.certificate.max_21.str()
      << " (edges) exceed the tolerance " << r.tolerance.str();
  } else if (!sizes_ok) {
    s << "|U1| = " << r.u1.size() << ", |U2| = " << r.u2.size() << " below |U|/" << size_den << " for |U| = "
      << u.size();
    if (3 * r.max_class > 2 * u.size()) {
      r.failure = ReductionFailure::kNotMinimal;
      s << "; the class of " << r.max_class_point << " holds " << r.max_class
        << " elements, more than 2/3 of U, so x0 is not an energy minimiser";
    } else {
      r.failure = ReductionFailure::kCardinality;
    }
  }
  if (r.failure == ReductionFailure::kNone) {
    r.branch = branch;
    r.certified = true;
  } else {
    r.branch = ReductionBranch::kFailed;
    r.diagnostic = s.str();
  }
}

bool too_small(const ElementSet& u, ReductionResult& r) {
  if (u.empty()) fail(ErrorCode::kInvalidArgument, "reduction of an empty set");
  if (u.size() > 1) return false;
  r.failure = ReductionFailure::kTooSmall;
  r.diagnostic = "a single element cannot be split";
  return true;
}

}  // namespace

ReductionResult reduce_tree(const ActionSpace& space, const ElementSet& u, const Point& x0,
                            const ReductionOptions& opts) {
  if (!space.is_tree()) fail(ErrorCode::kUnsupported, "reduce_tree needs a tree backend");
  space.validate(x0);
  ReductionResult r;
  r.radius = r.tolerance = check_radius(opts.radius, default_tree_radius(space));
  r.threshold = opts.threshold.value_or(space.constants().kappa0);
  if (too_small(u, r)) return r;
  Orbits o = orbits_of(space, u, x0);
  if (!check_small(space, u, o, r)) return r;

  int64_t k = r.radius.whole_edges();
  std::map<std::string, Point> hit;
  for (size_t i = 0; i < u.size(); ++i) {
    if (o.disp[i] < r.radius) continue;
    for (const Point& y : {o.fwd[i], o.bwd[i]}) {
      Point s = space.step_toward(x0, y, k);
      hit.emplace(space.format_point(s), s);
    }
  }
  Classes c;
  std::map<Point, int> id;
  for (const auto& [name, p] : hit) {
    id.emplace(p, static_cast<int>(c.names.size()));
    c.names.push_back(name);
  }
  c.a.assign(u.size(), -1);
  c.b.assign(u.size(), -1);
  for (size_t i = 0; i < u.size(); ++i) {
    if (o.disp[i] < r.radius * 4) {
      ++r.discarded;
      continue;
    }
    c.a[i] = id.at(space.step_toward(x0, o.fwd[i], k));
    c.b[i] = id.at(space.step_toward(x0, o.bwd[i], k));
  }
  r.sphere_points = c.names.size();
  record_max_class(c, r);

  PeelOutcome p = peel(c, u.size());
  r.rounds = p.rounds;
  r.count_ab = p.ab;
  r.count_ba = p.ba;
  r.count_aa = p.aa;
  r.count_bb = p.bb;
  r.u1 = subset(u, p.first);
  r.u2 = subset(u, p.second);
  finish(space, u, x0, 100, ReductionBranch::kTreeRecursion, r);
  return r;
}

ReductionResult reduce_graph(const ActionSpace& space, const ElementSet& u, const Point& x0,
                             const ReductionOptions& opts) {
  space.validate(x0);
  const SpaceConstants& sc = space.constants();
  ReductionResult r;
  Length delta = sc.delta;
  Length fallback;
  if (opts.paper) {
    fallback = floor_length(sc.delta_abs() * 1000, sc.edge_length);
    fallback = std::max(Length::edges(fallback.whole_edges()), Length::edges(1));
  } else if (space.is_tree()) {
    fallback = default_tree_radius(space);
  } else {
    fallback = Length::edges(std::max<int64_t>(1, (delta.half_units() + 1) / 2));
  }
  r.radius = r.tolerance = check_radius(opts.radius, fallback);
  r.threshold = opts.threshold.value_or(opts.paper ? pow10(10) * sc.kappa0 : sc.kappa0);
  Length slack = opts.slack.value_or(opts.paper ? delta : Length());
  Length near = opts.near.value_or(opts.paper ? delta * 6 : Length());
  Length far = opts.far.value_or(opts.paper ? delta * 100 : Length());
  std::optional<uint64_t> ball = space.ball_size(x0, r.radius);
  if (!ball) fail(ErrorCode::kUnsupported, "sphere-pair reduction needs balls of bounded size");
  r.ball_bound = *ball;
  if (too_small(u, r)) return r;
  Orbits o = orbits_of(space, u, x0);
  if (!check_small(space, u, o, r)) return r;

  std::vector<Point> scope;
  if (space.is_tree()) {
    for (size_t i = 0; i < u.size(); ++i) {
      scope.push_back(o.fwd[i]);
      scope.push_back(o.bwd[i]);
    }
  }
  std::vector<Point> sphere = space.sphere(x0, r.radius, scope);
  std::sort(sphere.begin(), sphere.end(), [&](const Point& p, const Point& q) {
    return space.format_point(p) < space.format_point(q);
  });
  r.sphere_points = sphere.size();
  size_t m = sphere.size();
  std::vector<Length> sd(m * m);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) sd[i * m + j] = space.dist(sphere[i], sphere[j]);
  }

  // U_{y,z}: y near [x0, u x0], z near [x0, u^-1 x0].
  std::map<std::pair<size_t, size_t>, std::vector<size_t>> cls;
  for (size_t i = 0; i < u.size(); ++i) {
    if (o.disp[i] < r.radius * 4) {
      ++r.discarded;
      continue;
    }
    std::vector<size_t> ys, zs;
    for (size_t s = 0; s < m; ++s) {
      if (space.gromov_product(x0, o.fwd[i], sphere[s]) <= slack) ys.push_back(s);
      if (space.gromov_product(x0, o.bwd[i], sphere[s]) <= slack) zs.push_back(s);
    }
    for (size_t y : ys) {
      for (size_t z : zs) cls[{y, z}].push_back(i);
    }
  }
  r.rounds = cls.size();
  for (const auto& [yz, members] : cls) {
    if (yz.first == yz.second && members.size() > r.max_class) {
      r.max_class = members.size();
      r.max_class_point = space.format_point(sphere[yz.first]);
    }
  }

  uint64_t b2 = 100 * r.ball_bound * r.ball_bound;
  auto dist = [&](size_t i, size_t j) { return sd[i * m + j]; };
  // Largest class among admissible pairs; ties keep the first pair in
  // encoding order.
  auto best = [&](auto admissible) {
    const std::pair<const std::pair<size_t, size_t>, std::vector<size_t>>* pick = nullptr;
    for (const auto& e : cls) {
      if (!admissible(e.first, e.second.size())) continue;
      if (!pick || e.second.size() > pick->second.size()) pick = &e;
    }
    return pick;
  };

  auto sep = best([&](const auto& yz, size_t n) { return dist(yz.first, yz.second) > near && b2 * n > u.size(); });
  if (sep) {
    r.count_ab = sep->second.size();
    r.u1 = r.u2 = subset(u, sep->second);
  } else {
    auto p0 = best([&](const auto& yz, size_t) { return dist(yz.first, yz.second) <= near; });
    const decltype(p0) p1 = p0 ? best([&](const auto& yz, size_t n) {
      return dist(yz.first, yz.second) <= near && dist(yz.second, p0->first.second) > far &&
             dist(yz.first, p0->first.first) > far && b2 * n >= u.size();
    }) : nullptr;
    if (!p0 || !p1) {
      // Mass near y0 that minimal energy bounds by 2/3.
      uint64_t mass = 0;
      std::string y0 = "none";
      if (p0) {
        size_t c0 = p0->first.first;
        y0 = space.format_point(sphere[c0]);
        std::vector<char> seen(u.size(), 0);
        for (const auto& [yz, members] : cls) {
          if (dist(yz.first, c0) > far || dist(yz.second, c0) > far) continue;
          for (size_t i : members) seen[i] = 1;
        }
        mass = static_cast<uint64_t>(std::count(seen.begin(), seen.end(), 1));
      }
      std::ostringstream s;
      s << "no second close pair far from y0 = " << y0 << "; classes near y0 hold " << mass << " of " << u.size();
      if (3 * mass > 2 * u.size()) {
        r.failure = ReductionFailure::kNotMinimal;
        s << ", more than 2/3, so x0 is not an energy minimiser";
      } else {
        r.failure = ReductionFailure::kNoSeparatedPair;
      }
      r.diagnostic = s.str();
      return r;
    }
    r.count_aa = p0->second.size();
    r.count_bb = p1->second.size();
    r.u1 = subset(u, p0->second);
    r.u2 = subset(u, p1->second);
  }
  finish(space, u, x0, b2, ReductionBranch::kSphereGraph, r);
  return r;
}

ReductionResult reduce_via_tree_approx(SpacePtr space_ptr, const ElementSet& u, const Point& x0,
                                       const ReductionOptions& opts) {
  const ActionSpace& space = *space_ptr;
  space.validate(x0);
  const SpaceConstants& sc = space.constants();
  ReductionResult r;
  if (u.empty()) fail(ErrorCode::kInvalidArgument, "reduction of an empty set");
  Rational log_factor = log2_upper(2 * static_cast<uint64_t>(u.size()));
  Length fallback;
  if (opts.paper) {
    fallback = floor_length(sc.delta_abs() * log_factor * 1000, sc.edge_length);
    fallback = std::max(Length::edges(fallback.whole_edges()), Length::edges(1));
  } else if (space.is_tree()) {
    fallback = default_tree_radius(space);
  } else {
    fallback = Length::edges(std::max<int64_t>(1, (sc.delta.half_units() + 1) / 2));
  }
  r.radius = r.tolerance = check_radius(opts.radius, fallback);
  r.threshold = opts.threshold.value_or(opts.paper ? pow10(10) * sc.kappa0 * log_factor : sc.kappa0);
  if (too_small(u, r)) return r;
  Orbits o = orbits_of(space, u, x0);
  if (!check_small(space, u, o, r)) return r;

  std::map<Point, uint32_t> leg_of;
  std::vector<Point> targets;
  for (size_t i = 0; i < u.size(); ++i) {
    if (o.disp[i] < r.radius) continue;
    for (const Point& y : {o.fwd[i], o.bwd[i]}) {
      if (leg_of.emplace(y, static_cast<uint32_t>(targets.size())).second) targets.push_back(y);
    }
  }
  Classes c;
  c.a.assign(u.size(), -1);
  c.b.assign(u.size(), -1);
  if (!targets.empty()) {
    ApproximationTree t = approximate_tree(space_ptr, x0, targets);
    int64_t k = r.radius.whole_edges();
    // Image sphere node of each leg, named by its smallest preimage.
    std::map<uint32_t, std::string> node_name;
    std::vector<uint32_t> leg_node(targets.size());
    for (uint32_t leg = 0; leg < targets.size(); ++leg) {
      uint32_t s = t.sample_on_leg(leg, k);
      leg_node[leg] = t.ancestor_at(s, r.radius);
      std::string name = space.format_point(t.samples()[s].point);
      auto [it, fresh] = node_name.emplace(leg_node[leg], name);
      if (!fresh) it->second = std::min(it->second, name);
    }
    std::vector<std::pair<std::string, uint32_t>> order;
    for (const auto& [node, name] : node_name) order.emplace_back(name, node);
    std::sort(order.begin(), order.end());
    std::map<uint32_t, int> id;
    for (const auto& [name, node] : order) {
      id.emplace(node, static_cast<int>(c.names.size()));
      c.names.push_back(name);
    }
    for (size_t i = 0; i < u.size(); ++i) {
      if (o.disp[i] < r.radius * 4) continue;
      c.a[i] = id.at(leg_node[leg_of.at(o.fwd[i])]);
      c.b[i] = id.at(leg_node[leg_of.at(o.bwd[i])]);
    }
  }
  for (size_t i = 0; i < u.size(); ++i) {
    if (o.disp[i] < r.radius * 4) ++r.discarded;
  }
  r.sphere_points = c.names.size();
  record_max_class(c, r);

  PeelOutcome p = peel(c, u.size());
  r.rounds = p.rounds;
  r.count_ab = p.ab;
  r.count_ba = p.ba;
  r.count_aa = p.aa;
  r.count_bb = p.bb;
  r.u1 = subset(u, p.first);
  r.u2 = subset(u, p.second);
  finish(space, u, x0, 100, ReductionBranch::kViaTreeApprox, r);
  return r;
}

SphereClass max_sphere_class(const ActionSpace& space, const ElementSet& u, const Point& x0, Length r) {
  if (!space.is_tree()) fail(ErrorCode::kUnsupported, "sphere classes are defined on trees");
  if (r <= Length() || !r.whole()) fail(ErrorCode::kInvalidArgument, "radius must be a positive number of edges");
  std::map<std::string, uint64_t> count;
  SphereClass best;
  for (const Element& g : u) {
    Point f = space.act(g, x0), b = space.act(inverse(g), x0);
    if (space.dist(x0, f) < r * 4) continue;
    ++best.filtered;
    Point sa = space.step_toward(x0, f, r.whole_edges());
    if (sa == space.step_toward(x0, b, r.whole_edges())) ++count[space.format_point(sa)];
  }
  for (const auto& [name, n] : count) {
    if (n > best.count) {
      best.count = n;
      best.point = name;
    }
  }
  return best;
}

std::pair<ElementSet, ElementSet> median_split(const ActionSpace& space, const ElementSet& u1,
                                               const ElementSet& u2, const Point& x0) {
  if (u1.empty() || u2.empty()) fail(ErrorCode::kInvalidArgument, "median split of an empty set");
  auto disp = [&](const Element& g) { return space.dist(x0, space.act(g, x0)); };
  auto median = [&](const ElementSet& s) {
    std::vector<Length> d;
    for (const Element& g : s) d.push_back(disp(g));
    std::sort(d.begin(), d.end());
    return d[(d.size() - 1) / 2];
  };
  auto keep = [&](const ElementSet& s, auto pred) {
    std::vector<Element> out;
    for (const Element& g : s) {
      if (pred(disp(g))) out.push_back(g);
    }
    return ElementSet(s.context(), std::move(out));
  };
  Length m1 = median(u1), m2 = median(u2);
  if (m1 <= m2) {
    return {keep(u1, [&](Length d) { return d <= m1; }), keep(u2, [&](Length d) { return d >= m2; })};
  }
  // Cross products are symmetric in the two sets, so the roles swap.
  return {keep(u2, [&](Length d) { return d <= m2; }), keep(u1, [&](Length d) { return d >= m1; })};
}

}  // namespace psg
