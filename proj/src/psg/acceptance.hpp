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

// The acceptance suite: one deterministic check per criterion.
#ifndef PSG_ACCEPTANCE_HPP_
#define PSG_ACCEPTANCE_HPP_

#include <string>
#include <vector>

#include <json.hpp>

namespace psg {

struct AcceptanceOptions {
  uint64_t seed = 1;
  uint64_t budget = 10'000'000;
  unsigned threads = 0;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // one line
  nlohmann::json data;
};

inline constexpr int kCriteria = 9;

// Criteria that fail by analysis rather than by a defect; see the README.
bool known_red(int id);

CriterionResult run_criterion(int id, const AcceptanceOptions& opts);

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  // Every criterion passes or is known red.
  bool ok() const;
  nlohmann::json to_json() const;
};

AcceptanceReport run_acceptance(const AcceptanceOptions& opts);

std::string format_line(const CriterionResult& r);

}  // namespace psg

#endif  // PSG_ACCEPTANCE_HPP_
