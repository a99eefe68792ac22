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

// Command dispatch and report assembly for experiment configs.
#ifndef PSG_RUN_HPP_
#define PSG_RUN_HPP_

#include <string>

#include <json.hpp>

#include "psg/config.hpp"

namespace psg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // internal error
inline constexpr int kExitViolation = 2;
inline constexpr int kExitTruncated = 3;
inline constexpr int kExitConfig = 4;

struct RunResult {
  nlohmann::json report;
  std::string sizes_csv;  // empty when the command produced no size table
  int exit_code = kExitOk;
};

// Never throws for config or budget problems; those become exit codes with
// a report carrying {"error": {"code", "message"}}.
RunResult run_experiment(const ExperimentConfig& config);
RunResult run_config_text(std::string_view text);

// Two-space indented JSON with a trailing newline.
std::string dump_report(const nlohmann::json& report);

// report.json and, when present, sizes.csv.
void write_outputs(const RunResult& result, const std::string& dir);
void write_report_files(const std::string& dir, const std::string& report_text, const std::string& sizes_csv);

}  // namespace psg

#endif  // PSG_RUN_HPP_
