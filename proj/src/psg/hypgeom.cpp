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


#include "psg/hypgeom.hpp"

#include <algorithm>
#include <set>

namespace psg {

Constants constants_of(const ActionSpace& space) {
  const SpaceConstants& sc = space.constants();
  Constants c;
  c.delta = sc.delta_abs();
  c.rho0 = sc.rho0;
  c.kappa0 = sc.kappa0;
  c.n0 = sc.n0;
  c.nu = Rational(4 * sc.n0) * sc.kappa0 / sc.rho0;
  c.A = pow10(7) * Rational(sc.n0 * sc.n0) * sc.kappa0 / sc.rho0;
  return c;
}

Length dist_to_set(const ActionSpace& space, const Point& x, const std::vector<Point>& path) {
  if (path.empty()) fail(ErrorCode::kInvalidArgument, "distance to an empty set");
  Length best = Length::infinity();
  for (const Point& p : path) best = std::min(best, space.dist(x, p));
  return best;
}

ChainCertificate chain_certificate(const ActionSpace& space, const std::vector<Point>& points,
                                   const Rational& alpha, const Rational& beta, bool check_hausdorff) {
  if (points.size() < 3) fail(ErrorCode::kInvalidArgument, "chain certificate needs at least 3 points");
  if (alpha < 0 || beta < 0) fail(ErrorCode::kInvalidArgument, "alpha and beta must be non-negative");
  const SpaceConstants& sc = space.constants();
  const Rational delta = sc.delta_abs();
  ChainCertificate out;
  bool have_tightest = false;
  Rational tightest;
  Rational max_product = 0;
  for (size_t i = 1; i + 1 < points.size(); ++i) {
    Rational gp = sc.abs(space.gromov_product(points[i - 1], points[i + 1], points[i]));
    Rational back = sc.abs(space.dist(points[i], points[i - 1]));
    Rational fwd = sc.abs(space.dist(points[i], points[i + 1]));
    Rational rhs = std::min(back, fwd) / 2 - alpha - delta;
    max_product = std::max(max_product, gp);
    if (gp > rhs) {
      if (!out.violation) {
        out.violation = i;
        out.lhs = gp;
        out.rhs = rhs;
      }
    } else if (!out.violation && (!have_tightest || rhs - gp < tightest)) {
      have_tightest = true;
      tightest = rhs - gp;
      out.lhs = gp;
      out.rhs = rhs;
    }
  }
  out.certified = !out.violation.has_value();
  out.conclusion_holds = true;
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i + 1; j < points.size(); ++j) {
      if (sc.abs(space.dist(points[i], points[j])) < alpha * static_cast<int64_t>(j - i)) {
        out.conclusion_holds = false;
      }
    }
  }
  if (check_hausdorff && out.certified && alpha > 0 && alpha >= 9 * delta && max_product <= beta) {
    Length worst;
    for (size_t n = 0; n < points.size(); ++n) {
      std::vector<Point> pieces;
      for (size_t m = n + 1; m < points.size(); ++m) {
        std::vector<Point> seg = space.geodesic(points[m - 1], points[m]);
        pieces.insert(pieces.end(), seg.begin(), seg.end());
        if (m < n + 2) continue;
        std::vector<Point> geo = space.geodesic(points[n], points[m]);
        for (const Point& p : pieces) worst = std::max(worst, dist_to_set(space, p, geo));
        for (const Point& q : geo) worst = std::max(worst, dist_to_set(space, q, pieces));
      }
    }
    out.hausdorff_max = sc.abs(worst);
    out.hausdorff_holds = out.hausdorff_max <= 10 * delta + beta;
  }
  return out;
}

namespace {

AxisData tree_axis(const ActionSpace& space, const Element& g, const Point& x) {
  AxisData a;
  a.element = g;
  Point gx = space.act(g, x);
  Length d1 = space.dist(x, gx);
  Length d2 = space.dist(x, space.act(g, gx));
  a.translation = std::max(Length(), d2 - d1);
  a.hyperbolic = a.translation > Length();
  Length twice = d1 - a.translation;
  if (!twice.whole() || twice.whole_edges() % 2 != 0) {
    fail(ErrorCode::kInternal, "axis projection is not a vertex");
  }
  a.query_to_axis = Length::edges(twice.whole_edges() / 2);
  a.axis_point = space.step_toward(x, gx, a.query_to_axis.whole_edges());
  Point gp = space.act(g, a.axis_point);
  if (space.dist(a.axis_point, gp) != a.translation) {
    fail(ErrorCode::kInternal, "tree translation length identity failed");
  }
  a.fundamental = space.geodesic(a.axis_point, gp);
  return a;
}

AxisData graph_axis(const ActionSpace& space, const Element& g, const Point& x) {
  AxisData a;
  a.element = g;
  std::vector<Point> all = space.all_points();
  std::vector<Length> disp;
  disp.reserve(all.size());
  Length best = Length::infinity();
  size_t arg = 0;
  for (size_t i = 0; i < all.size(); ++i) {
    disp.push_back(space.dist(all[i], space.act(g, all[i])));
    if (disp.back() < best) {
      best = disp.back();
      arg = i;
    }
  }
  a.translation = best;
  a.hyperbolic = best > Length();
  a.axis_point = all[arg];
  Length cap = best + space.constants().delta * 8;
  for (size_t i = 0; i < all.size(); ++i) {
    if (disp[i] <= cap) a.min_set.push_back(all[i]);
  }
  a.query_to_axis = dist_to_set(space, x, a.min_set);
  a.fundamental = space.geodesic(a.axis_point, space.act(g, a.axis_point));
  return a;
}

}  // namespace

AxisData translation_length(const ActionSpace& space, const Element& g) {
  return translation_length(space, g, space.base_point());
}

AxisData translation_length(const ActionSpace& space, const Element& g, const Point& query) {
  space.validate(query);
  return space.is_tree() ? tree_axis(space, g, query) : graph_axis(space, g, query);
}

Length axis_distance(const ActionSpace& space, const Element& g, const Point& x) {
  if (!space.is_tree()) fail(ErrorCode::kUnsupported, "axis_distance needs a tree");
  AxisData a = tree_axis(space, g, x);
  if (!a.hyperbolic) fail(ErrorCode::kInvalidArgument, "element is elliptic");
  return a.query_to_axis;
}

std::vector<Point> axis_window(const ActionSpace& space, const Element& g, const Point& centre, int64_t reps) {
  if (reps < 1) fail(ErrorCode::kInvalidArgument, "axis window needs reps >= 1");
  Point p = translation_length(space, g, centre).axis_point;
  Element ginv = inverse(g);
  Point start = p;
  for (int64_t k = 0; k < reps; ++k) start = space.act(ginv, start);
  std::vector<Point> out{start};
  Point cur = start;
  for (int64_t k = 0; k < 2 * reps; ++k) {
    Point next = space.act(g, cur);
    std::vector<Point> seg = space.geodesic(cur, next);
    out.insert(out.end(), seg.begin() + 1, seg.end());
    cur = next;
  }
  return out;
}

Length cylinder_distance(const ActionSpace& space, const Point& x, const Element& e_root) {
  AxisData a = translation_length(space, e_root, x);
  if (!a.hyperbolic) fail(ErrorCode::kInvalidArgument, "cylinder of an elliptic element");
  if (space.is_tree()) return a.query_to_axis;
  std::vector<Point> line;
  Point cur = a.axis_point;
  do {
    Point next = space.act(e_root, cur);
    std::vector<Point> seg = space.geodesic(cur, next);
    line.insert(line.end(), seg.begin(), seg.end());
    cur = next;
  } while (cur != a.axis_point);
  return dist_to_set(space, x, line);
}

bool cylinder_membership(const ActionSpace& space, const Point& x, const Element& e_root, Length margin) {
  Length d = cylinder_distance(space, x, e_root);
  if (space.is_tree()) return d <= margin;
  return d <= margin + space.constants().delta * 100;
}

OverlapReport small_cancellation_diameter(const ActionSpace& space, const Element& e_root,
                                          const Element& f_root, Length margin) {
  if (!space.is_tree()) fail(ErrorCode::kUnsupported, "small_cancellation_diameter needs a tree");
  if (margin < Length()) fail(ErrorCode::kInvalidArgument, "negative margin");
  AxisData e = tree_axis(space, e_root, space.base_point());
  if (!e.hyperbolic) fail(ErrorCode::kInvalidArgument, "E is elliptic");
  AxisData f0 = tree_axis(space, f_root, e.axis_point);
  if (!f0.hyperbolic) fail(ErrorCode::kInvalidArgument, "F is elliptic");
  if (same_root(e_root, f_root)) fail(ErrorCode::kInvalidArgument, "E and F generate the same subgroup");

  const SpaceConstants& sc = space.constants();
  Constants c = constants_of(space);
  OverlapReport out;
  Rational longer = sc.abs(std::max(e.translation, f0.translation));
  out.paper_bound = 3 * c.nu * longer + c.A * c.delta + 1684 * c.delta;

  // Bridge between the axes: q_f on axis F nearest axis E, q_e its projection.
  Point q_f = f0.axis_point;
  Point q_e = tree_axis(space, e_root, q_f).axis_point;
  Length gap = space.dist(q_e, q_f);
  if (gap > Length()) {
    Length twice = margin * 2;
    out.diameter = twice > gap ? twice - gap : Length();
  } else {
    uint64_t longest = std::max(e_root.word_length(), f_root.word_length());
    BigInt reach = ceil(out.paper_bound / sc.edge_length) + 4 * longest;
    auto reps = [&](Length t) {
      BigInt r = reach / t.whole_edges() + 2;
      if (r > 100000) fail(ErrorCode::kBudgetExceeded, "axis window too long");
      return static_cast<int64_t>(r);
    };
    std::vector<Point> pe = axis_window(space, e_root, q_e, reps(e.translation));
    std::vector<Point> pf = axis_window(space, f_root, q_e, reps(f0.translation));
    std::set<Point> in_f(pf.begin(), pf.end());
    int64_t shared = 0;
    for (const Point& p : pe) shared += in_f.count(p);
    std::set<Point> ends{pe.front(), pe.back(), pf.front(), pf.back()};
    for (const Point& p : ends) {
      if (in_f.count(p) && std::find(pe.begin(), pe.end(), p) != pe.end()) out.window_exhausted = true;
    }
    out.diameter = Length::edges(shared - 1) + margin * 2;
  }
  out.within_bound = sc.abs(out.diameter) <= out.paper_bound;
  return out;
}

}  // namespace psg
