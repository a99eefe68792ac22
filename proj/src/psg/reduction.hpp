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


// Large subsets U1, U2 of U whose cross products are reduced at x0.

#ifndef PSG_REDUCTION_HPP_
#define PSG_REDUCTION_HPP_

#include <optional>
#include <string>
#include <utility>

#include "psg/spaces.hpp"
#include "psg/words.hpp"

namespace psg {

enum class ReductionBranch { kTreeRecursion, kSphereGraph, kViaTreeApprox, kFailed };
std::string to_string(ReductionBranch b);

enum class ReductionFailure {
  kNone,
  kTooSmall,
  kConcentratedOrBelow,  // more than 1/4 of U displaces x0 by at most the threshold
  kNotMinimal,           // one sphere class holds more than 2/3 of U
  kNoSeparatedPair,      // graph version: no admissible second pair
  kCardinality,          // sets found but one is below the guaranteed size
  kCertificate,          // a cross Gromov product exceeds the tolerance
};
std::string to_string(ReductionFailure f);

bool reduced_at(const ActionSpace& space, const Element& u, const Element& v, const Point& x0, Length tol);

struct CrossCertificate {
  Length max_12;  // max (u1^-1 x0, u2 x0)_{x0}
  Length max_21;  // max (u2^-1 x0, u1 x0)_{x0}
  uint64_t pairs = 0;
  bool ok = false;
};

// Exhaustive over U1 x U2. Empty sets give ok = true and zero maxima.
CrossCertificate certify_cross(const ActionSpace& space, const ElementSet& u1, const ElementSet& u2,
                               const Point& x0, Length tol);

struct ReductionResult {
  ElementSet u1, u2;
  Length tolerance;
  bool certified = false;
  ReductionBranch branch = ReductionBranch::kFailed;
  ReductionFailure failure = ReductionFailure::kNone;
  std::string diagnostic;
  CrossCertificate certificate;

  Length radius;
  Rational threshold;        // absolute; elements at or below it count as small
  uint64_t small = 0;
  uint64_t discarded = 0;    // displacement below 4 radius
  uint64_t sphere_points = 0;
  uint64_t rounds = 0;       // peeling rounds, or candidate pairs scanned
  uint64_t ball_bound = 1;   // b; 1 for the peeling versions
  // Class counts when the search stopped (peeling: A,B / B,A / A,A / B,B).
  uint64_t count_ab = 0, count_ba = 0, count_aa = 0, count_bb = 0;
  // Largest single-point class and its sphere point.
  uint64_t max_class = 0;
  std::string max_class_point;
};

struct ReductionOptions {
  bool paper = false;
  std::optional<Length> radius;
  std::optional<Rational> threshold;
  // Sphere-pair version only.
  std::optional<Length> slack;  // y counts when (x0, u x0)_y <= slack
  std::optional<Length> near;   // pair (y, z) is close when |y - z| <= near
  std::optional<Length> far;    // second pair must be > far from the first
};

// Largest multiple of rho0 that is at most kappa0/4, and at least one edge.
Length default_tree_radius(const ActionSpace& space);

ReductionResult reduce_tree(const ActionSpace& space, const ElementSet& u, const Point& x0,
                            const ReductionOptions& opts = {});
ReductionResult reduce_graph(const ActionSpace& space, const ElementSet& u, const Point& x0,
                             const ReductionOptions& opts = {});
ReductionResult reduce_via_tree_approx(SpacePtr space, const ElementSet& u, const Point& x0,
                                       const ReductionOptions& opts = {});

struct SphereClass {
  std::string point;
  uint64_t count = 0;
  uint64_t filtered = 0;  // elements with displacement >= 4r
};

// Trees: the sphere point a of radius r maximising |U_{a,a}|.
SphereClass max_sphere_class(const ActionSpace& space, const ElementSet& u, const Point& x0, Length r);

// Trims by displacement medians so that every u1 in the first output moves
// x0 at most as far as every u2 in the second.
std::pair<ElementSet, ElementSet> median_split(const ActionSpace& space, const ElementSet& u1,
                                               const ElementSet& u2, const Point& x0);

}  // namespace psg

#endif  // PSG_REDUCTION_HPP_
