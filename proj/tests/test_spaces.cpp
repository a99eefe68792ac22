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


#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "psg/spaces.hpp"

namespace psg {
namespace {

GraphSpec cycle(uint32_t n, bool rotation = true) {
  GraphSpec g;
  g.vertices = n;
  for (uint32_t i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  if (rotation) {
    std::vector<uint32_t> r(n);
    for (uint32_t i = 0; i < n; ++i) r[i] = (i + 1) % n;
    g.generators.push_back(r);
  }
  return g;
}

// Independent all-pairs BFS and four-point scan, in half edges.
int64_t oracle_delta_halves(const GraphSpec& g) {
  uint32_t n = g.vertices;
  std::vector<std::vector<uint32_t>> adj(n);
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::vector<int64_t>> d(n, std::vector<int64_t>(n, -1));
  for (uint32_t s = 0; s < n; ++s) {
    std::deque<uint32_t> q{s};
    d[s][s] = 0;
    while (!q.empty()) {
      uint32_t v = q.front();
      q.pop_front();
      for (uint32_t w : adj[v]) {
        if (d[s][w] < 0) {
          d[s][w] = d[s][v] + 1;
          q.push_back(w);
        }
      }
    }
  }
  auto gp2 = [&](uint32_t p, uint32_t q, uint32_t x) { return d[p][x] + d[q][x] - d[p][q]; };
  int64_t worst = 0;
  for (uint32_t p = 0; p < n; ++p)
    for (uint32_t q = 0; q < n; ++q)
      for (uint32_t r = 0; r < n; ++r)
        for (uint32_t x = 0; x < n; ++x) worst = std::max(worst, std::min(gp2(p, q, x), gp2(q, r, x)) - gp2(p, r, x));
  return worst;
}

class SpacesTest : public ::testing::Test {
 protected:
  SpacePtr f2 = make_free_group_tree(2);
  SpacePtr z23 = make_free_product_tree({2, 3});
  SpacePtr c6 = make_hyp_graph(cycle(6));

  Point fp(const std::string& s) const { return f2->parse_point(s); }
  Element fe(const std::string& s) const { return parse_element(f2->group(), s); }
};

TEST_F(SpacesTest, DistExamples) {
  EXPECT_EQ(f2->dist(fp("1"), fp("abA")), Length::edges(3));
  EXPECT_EQ(f2->dist(fp("ab"), fp("ab")), Length());
  EXPECT_EQ(c6->dist(c6->parse_point("v0"), c6->parse_point("v3")), Length::edges(3));
}

TEST_F(SpacesTest, ActExamples) {
  EXPECT_EQ(f2->act(identity(f2->group()), fp("ab")), fp("ab"));
  EXPECT_EQ(f2->format_point(f2->act(fe("ab"), fp("A"))), "abA");
  Element s = parse_element(z23->group(), "a");
  Element t = parse_element(z23->group(), "b");
  Point base = z23->base_point();
  EXPECT_EQ(z23->format_point(base), "1<a>");
  EXPECT_EQ(z23->act(s, base), base);
  EXPECT_EQ(z23->format_point(z23->act(t, base)), "b<a>");
  EXPECT_EQ(z23->format_point(z23->act(s, z23->parse_point("1<b>"))), "a<b>");
}

TEST_F(SpacesTest, GeodesicExamples) {
  auto g = f2->geodesic(fp("1"), fp("ab"));
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(f2->format_point(g[1]), "a");
  EXPECT_EQ(f2->geodesic(fp("ab"), fp("ab")).size(), 1u);
  auto h = c6->geodesic(c6->parse_point("v0"), c6->parse_point("v2"));
  std::vector<std::string> names;
  for (const Point& p : h) names.push_back(c6->format_point(p));
  EXPECT_EQ(names, (std::vector<std::string>{"v0", "v1", "v2"}));
}

TEST_F(SpacesTest, SphereExamples) {
  std::vector<std::string> names;
  for (const Point& p : f2->sphere(fp("1"), Length::edges(1), {})) names.push_back(f2->format_point(p));
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"A", "B", "a", "b"}));
  EXPECT_EQ(f2->sphere(fp("ab"), Length(), {}).size(), 1u);
  auto s3 = c6->sphere(c6->parse_point("v0"), Length::edges(3), {});
  ASSERT_EQ(s3.size(), 1u);
  EXPECT_EQ(c6->format_point(s3[0]), "v3");
  std::vector<Point> scope{fp("abab"), fp("aB"), fp("B")};
  auto scoped = f2->sphere(fp("1"), Length::edges(2), scope);
  ASSERT_EQ(scoped.size(), 2u);
  EXPECT_THROW(f2->sphere(fp("1"), Length::halves(1), {}), Error);
}

TEST_F(SpacesTest, BallSizeMatchesSphereCounts) {
  uint64_t total = 0;
  for (int r = 0; r <= 4; ++r) total += f2->sphere(fp("1"), Length::edges(r), {}).size();
  EXPECT_EQ(f2->ball_size(fp("1"), Length::edges(4)), total);
  total = 0;
  Point b = z23->base_point();
  for (int r = 0; r <= 5; ++r) total += z23->sphere(b, Length::edges(r), {}).size();
  EXPECT_EQ(z23->ball_size(b, Length::edges(5)), total);
}

TEST_F(SpacesTest, DeltaExamples) {
  EXPECT_EQ(f2->constants().delta, Length());
  EXPECT_EQ(z23->constants().delta, Length());
  GraphSpec edge{2, {{0, 1}}, {}};
  SpaceOptions rho;
  rho.rho0 = Rational(1);
  EXPECT_EQ(make_hyp_graph(edge, rho)->constants().delta, Length());
  GraphSpec star{4, {{0, 1}, {0, 2}, {0, 3}}, {}};
  EXPECT_EQ(make_hyp_graph(star, rho)->constants().delta, Length());
  EXPECT_EQ(c6->constants().delta, Length::halves(oracle_delta_halves(cycle(6))));
  EXPECT_EQ(c6->constants().delta, Length::edges(1));
  auto c5 = make_hyp_graph(cycle(5));
  EXPECT_EQ(c5->constants().delta, Length::halves(oracle_delta_halves(cycle(5))));
}

TEST_F(SpacesTest, SampledDeltaIsLowerBound) {
  GraphSpec c9 = cycle(9);
  DeltaOptions d{true, 2000, 1};
  auto s = make_hyp_graph(c9, {}, d);
  EXPECT_TRUE(s->constants().delta_sampled);
  EXPECT_LE(s->constants().delta, Length::halves(oracle_delta_halves(c9)));
}

TEST_F(SpacesTest, GraphValidation) {
  GraphSpec bad = cycle(6);
  bad.generators = {{1, 0, 2, 3, 4, 5}};
  EXPECT_THROW(make_hyp_graph(bad), Error);
  GraphSpec disc{4, {{0, 1}, {2, 3}}, {}};
  SpaceOptions rho;
  rho.rho0 = Rational(1);
  EXPECT_THROW(make_hyp_graph(disc, rho), Error);
  GraphSpec tree{3, {{0, 1}, {1, 2}}, {}};
  try {
    make_hyp_graph(tree);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
  EXPECT_THROW(parse_graph_spec(R"({"vertices": 2, "edges": [[0,1]], "colour": 1})"), Error);
  GraphSpec rt = parse_graph_spec(graph_spec_to_json(cycle(6)));
  EXPECT_EQ(rt.edges, cycle(6).edges);
  EXPECT_EQ(rt.generators, cycle(6).generators);
}

TEST_F(SpacesTest, TreeConstants) {
  SpaceOptions o;
  o.rho0 = Rational(1, 2);
  auto t = make_free_group_tree(2, o);
  EXPECT_EQ(t->constants().kappa0, Rational(1, 2));
  EXPECT_EQ(t->constants().abs(t->dist(t->parse_point("1"), t->parse_point("ab"))), Rational(1));
  o.kappa0 = Rational(1, 4);
  EXPECT_THROW(make_free_group_tree(2, o), Error);
}

TEST_F(SpacesTest, FreeGroupDistMatchesLetterOracle) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 500; ++i) {
    std::string x = oracle::random_letters(rng, 2, 10);
    std::string y = oracle::random_letters(rng, 2, 10);
    EXPECT_EQ(f2->dist(fp(x), fp(y)),
              Length::edges(static_cast<int64_t>(oracle::reduced_length(oracle::invert_letters(x) + y))));
  }
}

// BFS over neighbors gives graph distances that dist must reproduce.
TEST_F(SpacesTest, FreeProductDistMatchesBfs) {
  for (auto orders : {std::vector<uint32_t>{2, 3}, std::vector<uint32_t>{3, 4}}) {
    SpacePtr t = make_free_product_tree(orders);
    for (Point src : {t->base_point(), t->parse_point("ab<b>"), t->parse_point("b<a>")}) {
      std::map<Point, int64_t> seen{{src, 0}};
      std::deque<Point> q{src};
      while (!q.empty()) {
        Point v = q.front();
        q.pop_front();
        if (seen[v] == 6) continue;
        for (const Point& w : t->neighbors(v)) {
          if (seen.emplace(w, seen[v] + 1).second) q.push_back(w);
        }
      }
      for (const auto& [p, k] : seen) {
        EXPECT_EQ(t->dist(src, p), Length::edges(k)) << t->format_point(p);
        EXPECT_EQ(t->geodesic(src, p).size(), static_cast<size_t>(k + 1));
      }
    }
  }
}

void check_metric_and_action(const ActionSpace& s, const std::vector<Point>& pts, const std::vector<Element>& gs) {
  for (const Point& x : pts) {
    for (const Point& y : pts) {
      EXPECT_EQ(s.dist(x, y), s.dist(y, x));
      EXPECT_EQ(s.dist(x, y) == Length(), x == y);
      for (const Point& z : pts) EXPECT_LE(s.dist(x, z), s.dist(x, y) + s.dist(y, z));
      for (const Element& g : gs) EXPECT_EQ(s.dist(s.act(g, x), s.act(g, y)), s.dist(x, y));
    }
    for (const Element& g : gs) {
      for (const Element& h : gs) EXPECT_EQ(s.act(multiply(g, h), x), s.act(g, s.act(h, x)));
    }
  }
}

TEST_F(SpacesTest, MetricAndActionProperties) {
  std::mt19937_64 rng(4);
  for (SpacePtr s : {f2, z23, c6}) {
    std::vector<Point> pts;
    std::vector<Element> gs;
    for (int i = 0; i < 8; ++i) {
      Element g = parse_element(s->group(), oracle::random_letters(rng, static_cast<int>(s->group().rank()), 6));
      gs.push_back(g);
      pts.push_back(s->act(parse_element(s->group(), oracle::random_letters(rng, static_cast<int>(s->group().rank()), 6)),
                           s->base_point()));
    }
    if (s == c6) pts = s->all_points();
    check_metric_and_action(*s, pts, gs);
  }
}

TEST_F(SpacesTest, TreesAreZeroHyperbolic) {
  std::mt19937_64 rng(8);
  for (SpacePtr s : {f2, z23}) {
    for (int i = 0; i < 400; ++i) {
      Point p[4];
      for (auto& x : p) x = s->act(parse_element(s->group(), oracle::random_letters(rng, 2, 7)), s->base_point());
      EXPECT_GE(s->gromov_product(p[0], p[2], p[3]),
                std::min(s->gromov_product(p[0], p[1], p[3]), s->gromov_product(p[1], p[2], p[3])));
    }
  }
}

TEST_F(SpacesTest, GeodesicsTelescope) {
  std::mt19937_64 rng(12);
  for (SpacePtr s : {f2, z23, c6}) {
    int rank = static_cast<int>(s->group().rank());
    for (int i = 0; i < 100; ++i) {
      Point x = s->act(parse_element(s->group(), oracle::random_letters(rng, rank, 7)), s->base_point());
      Point y = s->act(parse_element(s->group(), oracle::random_letters(rng, rank, 7)), s->base_point());
      auto path = s->geodesic(x, y);
      ASSERT_EQ(path.front(), x);
      ASSERT_EQ(path.back(), y);
      ASSERT_EQ(Length::edges(static_cast<int64_t>(path.size()) - 1), s->dist(x, y));
      for (size_t a = 0; a < path.size(); ++a) {
        s->validate(path[a]);
        EXPECT_EQ(s->step_toward(x, y, static_cast<int64_t>(a)), path[a]);
        for (size_t b = a; b < path.size(); ++b) {
          EXPECT_EQ(s->dist(path[a], path[b]), Length::edges(static_cast<int64_t>(b - a)));
        }
      }
    }
  }
}

TEST_F(SpacesTest, ParseFormatRoundTrip) {
  for (const char* t : {"1<a>", "1<b>", "ab<a>", "ba<b>"}) {
    EXPECT_EQ(z23->format_point(z23->parse_point(t)), t);
  }
  EXPECT_EQ(z23->format_point(z23->parse_point("ba<a>")), "b<a>");
  EXPECT_THROW(z23->parse_point("ab"), Error);
  EXPECT_THROW(c6->parse_point("v6"), Error);
  EXPECT_THROW(c6->parse_point("x1"), Error);
}

}  // namespace
}  // namespace psg
