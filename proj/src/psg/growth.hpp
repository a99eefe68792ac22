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

#ifndef PSG_GROWTH_HPP_
#define PSG_GROWTH_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "psg/energy.hpp"
#include "psg/periodicity.hpp"
#include "psg/reduction.hpp"
#include "psg/spaces.hpp"

namespace psg {

struct AlphaConstants {
  Rational alpha_tree;      // rho0^2 / (10^15 kappa0^2)
  Rational alpha_acyl;      // delta^2 / (10^50 N0^6 kappa0^2)
  Rational c_concentrated;  // rho0 / (10^6 kappa0)
  Rational gamma;           // 10^14 N0^3 kappa0 / rho0
  Rational c_counting;      // 10^12 N0^4 kappa0^2 / rho0^2
  uint64_t b = 10;          // 10 on trees, 10 |B(x0, 1000 delta)| on graphs
};

AlphaConstants alpha_constants(const ActionSpace& space, const Point& x0);

// floor((n + 1) / 2)
unsigned half_exponent(unsigned n);

// Exact (base)^k.
Rational rational_pow(const Rational& base, unsigned k);

struct CyclicCheck {
  bool virtually_cyclic = false;
  std::string reason;  // "cyclic: <root>" or "elliptic"
};

// Sufficient tests only: every nontrivial element shares one primitive root,
// or (trees) U fixes the given point.
CyclicCheck virtually_cyclic_precheck(const ActionSpace& space, const ElementSet& u, const Point& x0);

struct ConcentratedOptions {
  bool paper = false;
  std::optional<Rational> threshold;    // K: U1 = {u : |u x0 - x0| <= K}
  std::optional<Rational> witness_min;  // lower bound on |v x0 - x0|
  std::optional<Length> offset;         // |m - x0|
  std::optional<Rational> spacing;      // U2 keeps |u m - u' m| > spacing
  unsigned n = 3;
  ProductOptions products;
};

struct ConcentratedResult {
  bool certified = false;
  std::string refusal;
  Element witness;
  Rational witness_displacement;
  Rational threshold;
  Length offset;
  Rational spacing;
  Point m;
  ElementSet u1, u2;
  Rational min_slack;
  uint64_t triples = 0;
  unsigned n = 0;
  uint64_t expected = 0;                // |U2|^n
  std::optional<uint64_t> chain_count;  // |(U2 v)^n| when within budget
  std::optional<uint64_t> measured;     // |U^n| when within budget
  Rational achieved_bound;              // |U2|^[(n+1)/2]
  Rational paper_bound;                 // (c/4 |U|)^[(n+1)/2]
};

ConcentratedResult concentrated_pipeline(const ActionSpace& space, const ElementSet& u, const Point& x0,
                                         const ConcentratedOptions& opts = {});

enum class DiffuseBranch { kNonPeriodic, kBiPeriodic, kNotApplicable, kRerouted };
std::string to_string(DiffuseBranch b);

struct DiffuseOptions {
  bool paper = false;
  unsigned n = 3;
  CaseMode case_mode;
  ReductionOptions reduction;
  PeriodMode period;
  ConcentratedOptions concentrated;
  ProductOptions products;
};

struct ElementCount {
  Element v;
  uint64_t count = 0;  // |U1 v W|
  uint64_t fiber = 0;  // largest number of (u, w) with the same u v w
  std::string extraction;  // empty when no equations were extracted
  std::optional<Element> period_root;
};

struct DiffuseResult {
  DiffuseBranch branch = DiffuseBranch::kNotApplicable;
  std::string reason;
  Point base_point;
  ReductionResult reduction;
  ElementSet u1, u2, w;
  unsigned n = 0, l = 0;
  std::vector<ElementCount> counts;
  uint64_t best_count = 0;
  std::optional<BiPeriodicOutcome> biperiodic;
  std::optional<Element> ping_t;   // t (or the outside element s) before E-reduction
  bool t_in_e = false;
  std::optional<EReduction> ereduction;
  std::optional<SeparationResult> separation;
  std::optional<PingPongResult> pingpong;
  Rational counting_bound;  // max_v |U1 v W|
  Rational pingpong_bound;  // |V0|^k when ping-pong certified, else 0
  Rational achieved_bound;
  std::string bound_source;
  Rational paper_bound;
  std::optional<uint64_t> measured;
  std::optional<ConcentratedResult> rerouted;
};

DiffuseResult diffuse_pipeline(const ActionSpace& space, const ElementSet& u, const DiffuseOptions& opts = {});

struct GrowthOptions {
  bool paper = false;
  unsigned n_max = 3;
  bool run_pipeline = true;
  ProductOptions products;
  DiffuseOptions pipeline;
};

struct GrowthReport {
  uint64_t set_size = 0;
  std::vector<uint64_t> sizes;  // sizes[k-1] = |U^k|
  bool truncated = false;
  Rational alpha;
  std::string alpha_source;
  std::vector<Rational> bounds;     // (alpha |U|)^[(k+1)/2]
  std::vector<bool> bound_holds;
  CyclicCheck cyclic;
  Rational displacement_floor;      // 10^14 d kappa0
  bool hypotheses_certified = false;
  EnergyProfile profile;
  CaseSplit split;
  std::vector<std::string> case_trace;
  double entropy_lb = 0;            // 1/2 log(alpha |U|)
  double entropy_measured = 0;      // (1/n) log |U^n| at the largest computed n
  std::vector<std::string> violations;
  std::optional<DiffuseResult> pipeline;
};

GrowthReport growth_report(const ActionSpace& space, const ElementSet& u, const GrowthOptions& opts = {});

struct ExponentFit {
  double slope = 0;
  std::vector<unsigned> family_sizes;  // N values
  std::vector<uint64_t> counts;        // |U_N^n|
  bool truncated = false;
};

// Least-squares slope of log |U_N^n| against log N.
ExponentFit exponent_fit(const std::function<ElementSet(unsigned)>& family, unsigned n,
                         const std::vector<unsigned>& range, const ProductOptions& opts = {});

}  // namespace psg

#endif  // PSG_GROWTH_HPP_
