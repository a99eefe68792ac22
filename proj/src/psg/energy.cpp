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


#include "psg/energy.hpp"

#include <algorithm>
#include <set>

namespace psg {

std::string to_string(EnergyCase c) {
  switch (c) {
    case EnergyCase::kConcentrated:
      return "concentrated";
    case EnergyCase::kDiffuse:
      return "diffuse";
    case EnergyCase::kBelowThreshold:
      return "below_threshold";
  }
  return "unknown";
}

namespace {

void check_nonempty(const ElementSet& u) {
  if (u.empty()) fail(ErrorCode::kInvalidArgument, "energy of an empty set");
}

// Sum of displacements in half edges.
int64_t total_halves(const ActionSpace& space, const ElementSet& u, const Point& x) {
  int64_t sum = 0;
  for (const Element& g : u) sum += space.dist(x, space.act(g, x)).half_units();
  return sum;
}

}  // namespace

Rational energy_at(const ActionSpace& space, const ElementSet& u, const Point& x) {
  check_nonempty(u);
  space.validate(x);
  Length total = Length::halves(total_halves(space, u, x));
  return space.constants().abs(total) / static_cast<int64_t>(u.size());
}

Rational displacement_at(const ActionSpace& space, const ElementSet& u, const Point& x) {
  check_nonempty(u);
  Length best;
  for (const Element& g : u) best = std::max(best, space.dist(x, space.act(g, x)));
  return space.constants().abs(best);
}

Rational d_factor(const ActionSpace& space, size_t set_size) {
  if (space.is_tree()) return 1;
  return log2_upper(2 * static_cast<uint64_t>(set_size));
}

EnergyProfile minimize_energy(const ActionSpace& space, const ElementSet& u) {
  check_nonempty(u);
  EnergyProfile p;
  p.d_factor = d_factor(space, u.size());
  if (space.is_tree()) {
    // Only the first steps toward u x and u^-1 x can lower the energy, so
    // descending over those candidates is steepest descent over all
    // neighbours.
    Point x = space.base_point();
    int64_t cur = total_halves(space, u, x);
    while (true) {
      std::set<Point> cand;
      for (const Element& g : u) {
        for (const Point& y : {space.act(g, x), space.act(inverse(g), x)}) {
          if (y != x) cand.insert(space.step_toward(x, y, 1));
        }
      }
      std::optional<Point> best;
      int64_t best_val = cur;
      for (const Point& y : cand) {
        int64_t v = total_halves(space, u, y);
        if (v < best_val) {
          best_val = v;
          best = y;
        }
      }
      if (!best) break;
      x = *best;
      cur = best_val;
      ++p.steps;
    }
    p.base_point = x;
  } else {
    std::vector<Point> all = space.all_points();
    int64_t best_val = -1;
    for (const Point& y : all) {
      int64_t v = total_halves(space, u, y);
      if (best_val < 0 || v < best_val) {
        best_val = v;
        p.base_point = y;
      }
    }
    p.steps = all.size();
  }
  p.energy = energy_at(space, u, p.base_point);
  p.displacement = displacement_at(space, u, p.base_point);
  return p;
}

CaseSplit classify(const ActionSpace& space, const ElementSet& u, const EnergyProfile& profile, const CaseMode& mode) {
  check_nonempty(u);
  const SpaceConstants& c = space.constants();
  CaseSplit out;
  if (mode.paper) {
    out.threshold = pow10(10) * profile.d_factor * c.kappa0;
    out.floor = pow10(14) * profile.d_factor * c.kappa0;
  } else {
    out.threshold = mode.threshold.value_or(c.rho0);
    out.floor = mode.floor.value_or(c.rho0);
  }
  for (const Element& g : u) {
    if (c.abs(space.dist(profile.base_point, space.act(g, profile.base_point))) <= out.threshold) ++out.small;
  }
  if (profile.displacement < out.floor) {
    out.kind = EnergyCase::kBelowThreshold;
  } else if (4 * out.small > u.size()) {
    out.kind = EnergyCase::kConcentrated;
  } else {
    out.kind = EnergyCase::kDiffuse;
  }
  return out;
}

}  // namespace psg
