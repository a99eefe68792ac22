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


// Gromov-product geometry, translation lengths, axes and the acylindricity
// constants built on top of an ActionSpace.

#ifndef PSG_HYPGEOM_HPP_
#define PSG_HYPGEOM_HPP_

#include <optional>
#include <vector>

#include "psg/numeric.hpp"
#include "psg/spaces.hpp"
#include "psg/words.hpp"

namespace psg {

struct Constants {
  Rational delta;  // absolute
  Rational rho0;
  Rational kappa0;
  uint64_t n0 = 1;
  Rational nu;  // 4 N0 kappa0 / rho0
  Rational A;   // 10^7 N0^2 kappa0 / rho0

  Rational kappa_of_d(const Rational& d) const { return kappa0 + 400 * d * delta + 100 * delta; }
  Rational n_of_d(const Rational& d) const { return 23 * d * n0; }
};

Constants constants_of(const ActionSpace& space);

// Distance from x to the vertex set `path`.
Length dist_to_set(const ActionSpace& space, const Point& x, const std::vector<Point>& path);

struct ChainCertificate {
  bool certified = false;
  std::optional<size_t> violation;  // first interior index failing the hypothesis
  Rational lhs;                     // Gromov product at the violation (or the tightest index)
  Rational rhs;                     // 1/2 min(neighbour distances) - alpha - delta there
  bool conclusion_holds = false;    // |x_i - x_j| >= alpha |i - j| on the given points
  // Part (2): only evaluated when requested, alpha > 0, alpha >= 9 delta and all
  // products are <= beta.
  std::optional<bool> hausdorff_holds;
  Rational hausdorff_max;
};

ChainCertificate chain_certificate(const ActionSpace& space, const std::vector<Point>& points,
                                   const Rational& alpha, const Rational& beta,
                                   bool check_hausdorff = false);

struct AxisData {
  Element element;
  Length translation;
  bool hyperbolic = false;
  // Trees: the projection of the query point onto the axis (or onto the
  // fixed set); graphs: the smallest vertex of minimal displacement.
  Point axis_point;
  Length query_to_axis;
  std::vector<Point> fundamental;  // geodesic [p, gp]
  std::vector<Point> min_set;      // graphs: C_g
};

// Trees: exact, using d(x, g^2 x) - d(x, gx); the projection identity
// d(x, gx) = [g] + 2 d(x, axis) is checked and a failure throws kInternal.
// Graphs: exhaustive over vertices.
AxisData translation_length(const ActionSpace& space, const Element& g);
AxisData translation_length(const ActionSpace& space, const Element& g, const Point& query);

// Trees: distance to the axis of a hyperbolic g.
Length axis_distance(const ActionSpace& space, const Element& g, const Point& x);

// Axis points g^k p for k in [-reps, reps] joined by geodesics (trees and
// graphs); p is the axis point of translation_length(space, g, centre).
std::vector<Point> axis_window(const ActionSpace& space, const Element& g, const Point& centre, int64_t reps);

// Distance from x to the axis (trees) or to the orbit line L_g (graphs).
Length cylinder_distance(const ActionSpace& space, const Point& x, const Element& e_root);
// Trees: on the axis up to margin. Graphs: within margin + 100 delta of L_g.
bool cylinder_membership(const ActionSpace& space, const Point& x, const Element& e_root, Length margin);

struct OverlapReport {
  Length diameter;
  Rational paper_bound;  // 3 nu max([E],[F]) + A delta + 1684 delta
  bool within_bound = false;
  bool window_exhausted = false;  // overlap reached the end of a window
};

// Trees only.
OverlapReport small_cancellation_diameter(const ActionSpace& space, const Element& e_root,
                                          const Element& f_root, Length margin);

}  // namespace psg

#endif  // PSG_HYPGEOM_HPP_
