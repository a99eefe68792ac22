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


// Periodic elements, equations of reduced products, bi-periodic sets,
// E-reduction, ping-pong and separation inside a loxodromic subgroup.

#ifndef PSG_PERIODICITY_HPP_
#define PSG_PERIODICITY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "psg/spaces.hpp"
#include "psg/words.hpp"

namespace psg {

// One checked inequality, kept for reports.
struct Check {
  std::string name;
  Rational lhs;
  std::string relation;  // "<=", "<", ">", ">=", "=="
  Rational rhs;
  bool holds = false;
};

// Paper mode uses 3 nu [E] + A delta + 10^7 delta as the periodicity length
// and a = 3 nu [E] + A delta + 10^5 delta for ping-pong. Practical mode takes
// user values, defaulting to 3 nu [E] and 2 [E] + 4512 delta.
struct PeriodMode {
  bool paper = false;
  std::optional<Rational> threshold;
  std::optional<Rational> pingpong_a;
};

// r or r^-1, whichever starts with a positive exponent.
Element normalized_root(const Element& g);

struct PeriodCertificate {
  Element element;
  Element period_root;
  Point base_point;
  Rational slack;  // |v x0 - x0| minus the periodicity length
};

struct PeriodOutcome {
  bool certified = false;
  bool bound_violation = false;  // paper-mode hypotheses held but a conclusion failed
  std::optional<PeriodCertificate> certificate;
  std::string refusal;
  std::vector<Check> checks;
};

Rational periodic_threshold(const ActionSpace& space, const Element& e_root, const PeriodMode& mode);

PeriodOutcome is_periodic(const ActionSpace& space, const Element& v, const Element& e_root, const Point& x0,
                          const PeriodMode& mode = {});

// Trees: searches the candidate periods given by [x0, v x0] and returns the
// first certified one.
PeriodOutcome find_period(const ActionSpace& space, const Element& v, const Point& x0, const PeriodMode& mode = {});

struct Equation {
  Element u, v, w;
};

PeriodOutcome extract_period_from_equations(const ActionSpace& space, const std::vector<Equation>& equations,
                                            const Point& x0, const PeriodMode& mode = {});

// [u^-1 x0, x0] intersected with the 190 delta neighbourhood of C_E, and
// whether its diameter exceeds the periodicity length.
struct RightPeriod {
  std::vector<Point> points;
  Length diameter;
  bool periodic = false;
};
RightPeriod right_period(const ActionSpace& space, const Element& u, const Element& e_root, const Point& x0,
                         const PeriodMode& mode = {});
Length hausdorff_distance(const ActionSpace& space, const std::vector<Point>& a, const std::vector<Point>& b);

struct BiPeriodicWitness {
  ElementSet set;
  Element e1_root, e2_root;
  Element coset_root;
  Element coset_rep;
};

struct BiPeriodicOutcome {
  bool certified = false;
  std::optional<BiPeriodicWitness> witness;
  std::string refusal;
  std::vector<Check> checks;
};

BiPeriodicOutcome is_biperiodic(const ActionSpace& space, const ElementSet& v, const Point& x0,
                                const PeriodMode& mode = {});

struct EReduction {
  bool ok = false;
  std::string refusal;
  Element e, t_prime, f;  // t = e t_prime f
  int64_t e_power = 0, f_power = 0;
  Length displacement;
  int64_t window = 0;
  bool window_certified = false;
};

EReduction e_reduce(const ActionSpace& space, const Element& t, const Element& e_root, const Point& x0);

struct PingPongResult {
  bool certified = false;
  bool hypotheses_ok = false;
  std::string refusal;
  std::vector<Check> checks;
  Rational a;
  Rational min_slack;   // min over local triples of 1/2 min(steps) - delta - product
  uint64_t triples = 0;
  std::optional<uint64_t> product_count;  // |(Vt)^n| when within budget
  uint64_t expected = 0;                  // |V|^n, saturating
};

PingPongResult pingpong_certify(const ActionSpace& space, const ElementSet& v, const Element& e_root,
                                const Element& t, unsigned n, const Point& x0, const PeriodMode& mode = {},
                                uint64_t budget = 1'000'000);

struct SeparationResult {
  ElementSet v0;
  Rational spacing;          // r [E]
  bool guarantee_applies = false;
  bool guarantee_met = false;
  std::string refusal;
};

SeparationResult separate(const ActionSpace& space, const ElementSet& v, const Element& e_root, unsigned r,
                          const Point& x0, const PeriodMode& mode = {});

}  // namespace psg

#endif  // PSG_PERIODICITY_HPP_
