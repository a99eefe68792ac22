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


// l1-energy, displacement and the concentrated/diffuse case split.

#ifndef PSG_ENERGY_HPP_
#define PSG_ENERGY_HPP_

#include <optional>
#include <string>

#include "psg/spaces.hpp"
#include "psg/words.hpp"

namespace psg {

enum class EnergyCase { kConcentrated, kDiffuse, kBelowThreshold };
std::string to_string(EnergyCase c);

struct EnergyProfile {
  Point base_point;
  Rational energy;        // average displacement at base_point (absolute)
  Rational displacement;  // max displacement at base_point (absolute)
  Rational d_factor = 1;
  uint64_t steps = 0;     // descent steps (trees) or vertices scanned (graphs)
};

// Either the conservative thresholds (10^10 d kappa0 and 10^14 d kappa0) or
// user-chosen ones. In practical mode the threshold defaults to rho0 and the
// floor to rho0.
struct CaseMode {
  bool paper = false;
  std::optional<Rational> threshold;
  std::optional<Rational> floor;
};

Rational energy_at(const ActionSpace& space, const ElementSet& u, const Point& x);
Rational displacement_at(const ActionSpace& space, const ElementSet& u, const Point& x);

// 1 on trees, log2(2|U|) rounded up otherwise.
Rational d_factor(const ActionSpace& space, size_t set_size);

EnergyProfile minimize_energy(const ActionSpace& space, const ElementSet& u);

struct CaseSplit {
  EnergyCase kind = EnergyCase::kBelowThreshold;
  Rational threshold;
  Rational floor;
  uint64_t small = 0;  // elements with displacement <= threshold
};

CaseSplit classify(const ActionSpace& space, const ElementSet& u, const EnergyProfile& profile, const CaseMode& mode);

}  // namespace psg

#endif  // PSG_ENERGY_HPP_
