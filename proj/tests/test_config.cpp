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

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "psg/config.hpp"
#include "psg/run.hpp"

namespace psg {
namespace {

using nlohmann::json;

RunResult run(const json& doc) { return run_config_text(doc.dump()); }

json f2_growth() {
  return {{"command", "growth"}, {"space", {{"backend", "free_group"}, {"rank", 2}}}, {"set", {{"safin", 4}}},
          {"n", 3}};
}

TEST(ConfigTest, RejectsUnknownKeys) {
  json doc = f2_growth();
  doc["colour"] = "red";
  EXPECT_THROW(parse_config(doc), Error);
  doc = f2_growth();
  doc["space"]["radius"] = 3;
  try {
    parse_config(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
    EXPECT_NE(std::string(e.what()).find("space.radius"), std::string::npos);
  }
  doc = f2_growth();
  doc["set"] = {{"safin", 4}, {"elements", {"a"}}};
  EXPECT_THROW(parse_config(doc), Error);
}

TEST(ConfigTest, UnknownBackendExitsFour) {
  json doc = f2_growth();
  doc["space"]["backend"] = "hyperbolic_plane";
  RunResult r = run(doc);
  EXPECT_EQ(r.exit_code, kExitConfig);
  EXPECT_EQ(r.report["error"]["code"], static_cast<int>(ErrorCode::kConfig));
  EXPECT_EQ(run_config_text("{not json").exit_code, kExitConfig);
  json bad = f2_growth();
  bad["set"] = {{"elements", {"ab", "a?"}}};
  EXPECT_EQ(run(bad).exit_code, kExitConfig);
  json missing = f2_growth();
  missing.erase("set");
  EXPECT_EQ(run(missing).exit_code, kExitConfig);
}

TEST(ConfigTest, RationalsAndDefaults) {
  json doc = f2_growth();
  doc["space"]["rho0"] = "1/2";
  doc["space"]["kappa0"] = 3;
  doc["thresholds"] = {{"case", "5/2"}};
  ExperimentConfig c = parse_config(doc);
  EXPECT_EQ(*c.space.rho0, Rational(1, 2));
  EXPECT_EQ(*c.space.kappa0, 3);
  EXPECT_EQ(*c.thresholds.case_threshold, Rational(5, 2));
  EXPECT_FALSE(c.paper);
  EXPECT_EQ(c.budget, 10'000'000u);
  doc["thresholds"]["case"] = 1.5;  // floats are refused
  EXPECT_THROW(parse_config(doc), Error);
}

TEST(RunTest, SafinGrowthReport) {
  RunResult r = run(f2_growth());
  ASSERT_EQ(r.exit_code, kExitOk) << r.report.dump();
  std::vector<std::string> words = {"AAAA", "AAA", "AA", "A", "", "a", "aa", "aaa", "aaaa", "b"};
  std::vector<uint64_t> sizes;
  for (int n = 1; n <= 3; ++n) sizes.push_back(oracle::naive_product_count(words, n));
  EXPECT_EQ(r.report["sizes"].get<std::vector<uint64_t>>(), sizes);
  ASSERT_EQ(r.report["bounds"].size(), 3u);
  EXPECT_EQ(r.report["bounds"][0]["bound"], "1/100000000000000");  // alpha |U| = 10^-15 * 10
  EXPECT_TRUE(r.report["bounds"][2]["holds"].get<bool>());
  EXPECT_EQ(r.report["config_echo"], f2_growth());
  EXPECT_EQ(r.report["mode"], "practical");
  EXPECT_TRUE(r.report["violations"].empty());
  EXPECT_FALSE(r.report["case_trace"].empty());
  // header plus one row per n
  EXPECT_EQ(std::count(r.sizes_csv.begin(), r.sizes_csv.end(), '\n'), 4);
  EXPECT_EQ(r.sizes_csv.substr(0, 20), "n,size,bound,holds\n1");
}

TEST(RunTest, BudgetTruncationExitsThree) {
  json doc = f2_growth();
  doc["budget"] = 20;
  RunResult r = run(doc);
  EXPECT_EQ(r.exit_code, kExitTruncated);
  EXPECT_TRUE(r.report["truncated"].get<bool>());
}

TEST(RunTest, ReportsAreDeterministic) {
  json doc = {{"command", "reduce"}, {"space", {{"backend", "free_group"}, {"rank", 2}}},
              {"set", {{"random", {{"count", 150}, {"max_length", 8}}}}}, {"seed", 9}};
  RunResult a = run(doc), b = run(doc);
  EXPECT_EQ(dump_report(a.report), dump_report(b.report));
  doc["seed"] = 10;
  EXPECT_NE(dump_report(a.report), dump_report(run(doc).report));
}

TEST(RunTest, PeriodPingPongTreeApprox) {
  json period = {{"command", "period"}, {"space", {{"backend", "free_group"}, {"rank", 2}}},
                 {"period", {{"element", "abababababababababababababa"}}}};
  RunResult p = run(period);
  ASSERT_EQ(p.exit_code, kExitOk) << p.report.dump();
  EXPECT_TRUE(p.report["result"]["certified"].get<bool>());
  EXPECT_EQ(p.report["result"]["period_root"], "ab");

  std::string v1, v2;
  for (int i = 0; i < 20; ++i) v1 += "ab";
  v2 = v1 + v1;
  json pp = {{"command", "pingpong"}, {"space", {{"backend", "free_group"}, {"rank", 2}}},
             {"set", {{"elements", {v1, v2}}}}, {"pingpong", {{"t", "b"}, {"root", "ab"}}}, {"n", 3}};
  RunResult q = run(pp);
  ASSERT_EQ(q.exit_code, kExitOk) << q.report.dump();
  EXPECT_TRUE(q.report["result"]["certified"].get<bool>());
  EXPECT_EQ(q.report["result"]["product_count"], 8);

  json ta = {{"command", "treeapprox"},
             {"space", {{"backend", "graph"},
                        {"graph", {{"vertices", 4}, {"edges", {{0, 1}, {1, 2}, {2, 3}, {3, 0}}}}}}}};
  RunResult t = run(ta);
  ASSERT_EQ(t.exit_code, kExitOk) << t.report.dump();
  EXPECT_TRUE(t.report["result"]["ok"].get<bool>());
  EXPECT_EQ(t.report["certificates"][0]["kind"], "tree_approximation");

  json wrong = ta;
  wrong["space"] = {{"backend", "free_group"}};
  EXPECT_EQ(run(wrong).exit_code, kExitConfig);
}

TEST(RunTest, EnergyOfEllipticSetIsZero) {
  json doc = {{"command", "energy"}, {"space", {{"backend", "free_product"}, {"orders", {5, 7}}}},
              {"set", {{"elements", {"baB", "baaB", "baaaB"}}}}};
  RunResult r = run(doc);
  ASSERT_EQ(r.exit_code, kExitOk) << r.report.dump();
  EXPECT_EQ(r.report["profile"]["energy"], "0");
  EXPECT_EQ(r.report["result"]["split"]["kind"], "below_threshold");
}

// Nonidentity reduced words of length <= 2 in F2 are hit evenly.
TEST(RandomSetTest, UniformOverReducedWords) {
  SpacePtr f2 = make_free_group_tree(2);
  std::map<std::string, int> tally;
  const int draws = 16000;
  for (int s = 0; s < draws; ++s) {
    ElementSet u = random_element_set(f2->group(), static_cast<uint64_t>(s), 1, 2);
    ++tally[to_string(u[0])];
  }
  ASSERT_EQ(tally.size(), 16u);
  for (const auto& [w, k] : tally) {
    EXPECT_NEAR(k, draws / 16, 150) << w;  // about 5 standard deviations
  }
}

// In Z/4*Z/3, a^2 is one element of length 2 while a^1 and a^3 both have
// length 1; each of the 13 elements of length 1..2 appears evenly.
TEST(RandomSetTest, UniformInFreeProduct) {
  SpacePtr z43 = make_free_product_tree({4, 3});
  const Presentation& g = z43->group();
  std::set<std::string> expected;
  std::vector<Element> letters = {generator(g, 0, 1), generator(g, 0, -1), generator(g, 1, 1), generator(g, 1, -1)};
  for (const Element& x : letters) {
    expected.insert(to_string(x));
    for (const Element& y : letters) {
      Element p = multiply(x, y);
      if (!p.is_identity()) expected.insert(to_string(p));
    }
  }
  ASSERT_EQ(expected.size(), 13u);
  std::map<std::string, int> tally;
  const int draws = 13000;
  for (int s = 0; s < draws; ++s) ++tally[to_string(random_element_set(g, static_cast<uint64_t>(s), 1, 2)[0])];
  ASSERT_EQ(tally.size(), expected.size());
  for (const auto& [w, k] : tally) {
    EXPECT_TRUE(expected.count(w)) << w;
    EXPECT_NEAR(k, draws / 13, 150) << w;
  }
}

TEST(RandomSetTest, DistinctBoundedAndSeeded) {
  SpacePtr z57 = make_free_product_tree({5, 7});
  ElementSet a = random_element_set(z57->group(), 4, 60, 5);
  EXPECT_EQ(a.size(), 60u);
  for (const Element& e : a) {
    EXPECT_GE(e.word_length(), 1u);
    EXPECT_LE(e.word_length(), 5u);
  }
  EXPECT_EQ(to_strings(a), to_strings(random_element_set(z57->group(), 4, 60, 5)));
  EXPECT_NE(to_strings(a), to_strings(random_element_set(z57->group(), 5, 60, 5)));
  SpacePtr f2 = make_free_group_tree(2);
  EXPECT_THROW(random_element_set(f2->group(), 1, 5, 1), Error);  // only 4 words of length 1
}

}  // namespace
}  // namespace psg
