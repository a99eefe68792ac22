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

// psgrowth: run an experiment config and write its report.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "psgrowth/psgrowth.h"

namespace {

int config_error(const std::string& msg) {
  nlohmann::json e = {{"error", {{"code", PSG_CONFIG}, {"message", msg}}}};
  std::cerr << e.dump() << "\n";
  return PSG_EXIT_CONFIG;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Product set growth experiments on group actions"};
  std::string config_path, mode, out_dir;
  uint64_t budget = 0, seed = 0;
  app.add_option("--config", config_path, "experiment config (JSON)")->required();
  app.add_option("--mode", mode, "paper or practical; overrides the config")
      ->check(CLI::IsMember({"paper", "practical"}));
  app.add_option("--budget", budget, "cap on distinct canonical forms held");
  app.add_option("--out", out_dir, "directory for report.json and sizes.csv");
  app.add_option("--seed", seed, "seed for random sets and suites");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : PSG_EXIT_CONFIG;
  }

  std::ifstream in(config_path);
  if (!in) return config_error("cannot read " + config_path);
  std::stringstream text;
  text << in.rdbuf();
  nlohmann::json doc = nlohmann::json::parse(text.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return config_error(config_path + " is not a JSON object");

  if (!mode.empty()) doc["mode"] = mode;
  if (app.count("--budget")) doc["budget"] = budget;
  if (app.count("--seed")) {
    doc["seed"] = seed;
    if (doc.contains("set") && doc["set"].is_object() && doc["set"].contains("random") &&
        doc["set"]["random"].is_object()) {
      doc["set"]["random"]["seed"] = seed;
    }
  }
  if (out_dir.empty() && doc.contains("output") && doc["output"].is_object() && doc["output"].contains("dir") &&
      doc["output"]["dir"].is_string()) {
    out_dir = doc["output"]["dir"].get<std::string>();
  }
  bool csv = !(doc.contains("output") && doc["output"].is_object() && doc["output"].value("csv", true) == false);

  char* report = nullptr;
  char* sizes = nullptr;
  int exit_code = PSG_EXIT_FAILURE;
  if (psg_run_config(doc.dump().c_str(), &report, &sizes, &exit_code) != PSG_OK) {
    std::cerr << psg_last_error() << "\n";
    return PSG_EXIT_FAILURE;
  }
  if (exit_code == PSG_EXIT_CONFIG) {
    std::cerr << report;
  } else if (out_dir.empty()) {
    std::fputs(report, stdout);
  } else if (psg_write_outputs(out_dir.c_str(), report, csv ? sizes : nullptr) != PSG_OK) {
    std::cerr << psg_last_error() << "\n";
    exit_code = PSG_EXIT_CONFIG;
  } else {
    std::cout << "exit " << exit_code << ": wrote " << out_dir << "/report.json\n";
  }
  psg_free_string(report);
  psg_free_string(sizes);
  return exit_code;
}
