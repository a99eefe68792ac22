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


#include <cmath>
#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "oracles.hpp"
#include "psg/treeapprox.hpp"

namespace psg {
namespace {

GraphSpec to_spec(const oracle::PlainGraph& g) {
  GraphSpec s;
  s.vertices = g.n;
  s.edges = g.edges;
  return s;
}

SpacePtr cycle6() {
  GraphSpec g;
  g.vertices = 6;
  for (uint32_t i = 0; i < 6; ++i) g.edges.emplace_back(i, (i + 1) % 6);
  return make_hyp_graph(g);
}

void check_leg_isometry(const ApproximationTree& t) {
  const auto& s = t.samples();
  for (uint32_t i = 0; i < s.size(); ++i) {
    uint32_t root = t.sample_on_leg(s[i].leg, 0);
    EXPECT_EQ(t.tree_dist(root, i), s[i].depth);
    EXPECT_EQ(t.tree_dist(root, i), t.space()->dist(t.x0(), s[i].point));
  }
}

TEST(TreeApprox, TreeInputIsExact) {
  SpacePtr f2 = make_free_group_tree(2);
  std::vector<Point> targets;
  for (const char* w : {"abab", "abB", "aaB", "BA", "bbb"}) targets.push_back(f2->parse_point(w));
  ApproximationTree t = approximate_tree(f2, f2->parse_point("1"), targets);
  DistortionReport r = distortion_report(t);
  EXPECT_EQ(r.max_shrink, Length());
  EXPECT_EQ(r.max_expansion, Length());
  EXPECT_TRUE(r.ok);
  const auto& s = t.samples();
  for (uint32_t a = 0; a < s.size(); ++a) {
    for (uint32_t b = 0; b < s.size(); ++b) EXPECT_EQ(t.tree_dist(a, b), f2->dist(s[a].point, s[b].point));
  }
  check_leg_isometry(t);
}

TEST(TreeApprox, CycleExample) {
  SpacePtr c6 = cycle6();
  ApproximationTree t = approximate_tree(c6, c6->parse_point("v0"), {c6->parse_point("v2"), c6->parse_point("v4")});
  uint32_t end2 = t.sample_on_leg(0, 2);
  uint32_t end4 = t.sample_on_leg(1, 2);
  // Glued at (v2, v4)_{v0} = 1.
  EXPECT_EQ(t.tree_dist(end2, end4), Length::edges(2));
  EXPECT_EQ(t.samples()[end4].glue, Length::edges(1));
  DistortionReport r = distortion_report(t);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.max_expansion, Length());
  EXPECT_LE(r.max_shrink, Length::edges(4));
  EXPECT_DOUBLE_EQ(r.bound, 4.0);
  check_leg_isometry(t);
}

TEST(TreeApprox, SingleTargetIsSegment) {
  SpacePtr c6 = cycle6();
  ApproximationTree t = approximate_tree(c6, c6->parse_point("v1"), {c6->parse_point("v4")});
  EXPECT_EQ(t.samples().size(), 4u);
  DistortionReport r = distortion_report(t);
  EXPECT_EQ(r.max_shrink, Length());
  EXPECT_TRUE(r.ok);
  EXPECT_THROW(approximate_tree(c6, c6->parse_point("v1"), {}), Error);
}

TEST(TreeApprox, HalfIntegerBranchPoints) {
  // Odd cycle: (v2, v3)_{v0} = 3/2, so the legs split at a midpoint.
  GraphSpec g;
  g.vertices = 5;
  for (uint32_t i = 0; i < 5; ++i) g.edges.emplace_back(i, (i + 1) % 5);
  SpacePtr c5 = make_hyp_graph(g);
  ApproximationTree t = approximate_tree(c5, c5->parse_point("v0"), {c5->parse_point("v2"), c5->parse_point("v3")});
  uint32_t a = t.sample_on_leg(0, 2);
  uint32_t b = t.sample_on_leg(1, 2);
  EXPECT_EQ(t.tree_dist(a, b), Length::edges(1));
  EXPECT_EQ(t.samples()[b].glue, Length::halves(3));
  EXPECT_TRUE(distortion_report(t).ok);
}

TEST(TreeApprox, RandomGraphsAgainstOracle) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 25; ++i) {
    oracle::PlainGraph pg = oracle::random_connected_graph(rng, 4, 24);
    auto d = oracle::bfs_distances(pg);
    int64_t delta_halves = oracle::four_point_delta_halves(d);
    SpaceOptions opts;
    opts.rho0 = Rational(1);
    SpacePtr s = make_hyp_graph(to_spec(pg), opts);
    ASSERT_EQ(s->constants().delta, Length::halves(delta_halves));
    uint32_t x0 = static_cast<uint32_t>(rng() % pg.n);
    size_t k = 1 + rng() % 6;
    std::vector<Point> targets;
    for (size_t j = 0; j < k; ++j) targets.push_back(s->parse_point("v" + std::to_string(rng() % pg.n)));
    ApproximationTree t = approximate_tree(s, s->parse_point("v" + std::to_string(x0)), targets);
    check_leg_isometry(t);
    double bound_halves = 2.0 * static_cast<double>(delta_halves) * (std::log2(static_cast<double>(k)) + 1);
    const auto& smp = t.samples();
    for (uint32_t a = 0; a < smp.size(); ++a) {
      for (uint32_t b = 0; b < smp.size(); ++b) {
        int64_t truth = 2 * d[smp[a].point.tag][smp[b].point.tag];
        int64_t tree = t.tree_dist(a, b).half_units();
        EXPECT_LE(tree, truth);
        EXPECT_LE(static_cast<double>(truth - tree), bound_halves + 1e-9);
      }
    }
    EXPECT_TRUE(distortion_report(t).ok);
  }
}

TEST(TreeApprox, SampledDeltaUnderestimateIsRechecked) {
  std::mt19937_64 rng(5);
  GraphSpec g;
  g.vertices = 12;
  for (uint32_t i = 0; i < 12; ++i) g.edges.emplace_back(i, (i + 1) % 12);
  SpaceOptions opts;
  opts.rho0 = Rational(1);
  DeltaOptions one{true, 1, 3};
  SpacePtr s = make_hyp_graph(g, opts, one);
  ASSERT_EQ(s->constants().delta, Length());
  ApproximationTree t = approximate_tree(s, s->parse_point("v0"), {s->parse_point("v5"), s->parse_point("v7")});
  DistortionReport r = distortion_report(t);
  EXPECT_GT(r.max_shrink, Length());
  EXPECT_TRUE(r.delta_rechecked);
  EXPECT_EQ(r.delta_used, Length::edges(3));
  EXPECT_TRUE(r.ok);
}

TEST(TreeApprox, JsonExport) {
  SpacePtr c6 = cycle6();
  ApproximationTree t = approximate_tree(c6, c6->parse_point("v0"), {c6->parse_point("v2"), c6->parse_point("v4")});
  auto j = nlohmann::json::parse(t.to_json());
  EXPECT_EQ(j["f_images"].size(), t.samples().size());
  EXPECT_EQ(j["vertices"].size(), j["parent"].size());
  EXPECT_TRUE(j["parent"][0].is_null());
  // Root, branch point v1, v2 and v4's two images: v0, v1, {v2,v3} chain plus v4 leg.
  Rational total = 0;
  for (const auto& e : j["edge_length"]) total += parse_rational(e.get<std::string>());
  EXPECT_EQ(total, 3);
}

}  // namespace
}  // namespace psg
