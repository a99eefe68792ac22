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


#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "psg/energy.hpp"

namespace psg {
namespace {

GraphSpec cycle_with_symmetries(uint32_t n) {
  GraphSpec g;
  g.vertices = n;
  std::vector<uint32_t> rot(n), refl(n);
  for (uint32_t i = 0; i < n; ++i) {
    g.edges.emplace_back(i, (i + 1) % n);
    rot[i] = (i + 1) % n;
    refl[i] = (n - i) % n;
  }
  g.generators = {rot, refl};
  return g;
}

class EnergyTest : public ::testing::Test {
 protected:
  SpacePtr f2 = make_free_group_tree(2);
  SpacePtr z57 = make_free_product_tree({5, 7});

  ElementSet fset(const std::vector<std::string>& w) const { return parse_element_set(f2->group(), w); }
  Point fp(const std::string& s) const { return f2->parse_point(s); }
};

TEST_F(EnergyTest, EnergyAtExamples) {
  EXPECT_EQ(energy_at(*f2, fset({"a", "A"}), fp("1")), 1);
  EXPECT_EQ(energy_at(*f2, fset({"1"}), fp("abba")), 0);
  EXPECT_EQ(energy_at(*f2, fset({"abA", "abbA"}), fp("a")), Rational(3, 2));
  EXPECT_EQ(displacement_at(*f2, fset({"abA", "abbA"}), fp("a")), 2);
  EXPECT_THROW(energy_at(*f2, ElementSet(&f2->group(), {}), fp("1")), Error);
}

TEST_F(EnergyTest, MinimizeExamples) {
  EnergyProfile p = minimize_energy(*f2, fset({"abA", "abbA"}));
  EXPECT_EQ(f2->format_point(p.base_point), "a");
  EXPECT_EQ(p.energy, Rational(3, 2));
  EnergyProfile q = minimize_energy(*f2, fset({"a", "A"}));
  EXPECT_EQ(f2->format_point(q.base_point), "1");
  EXPECT_EQ(q.energy, 1);
  EXPECT_EQ(q.d_factor, 1);
}

TEST_F(EnergyTest, EllipticFreeProductSetHasZeroEnergy) {
  Element g = parse_element(z57->group(), "bab");
  std::vector<Element> members;
  for (int k = 1; k <= 4; ++k) members.push_back(conjugate(g, parse_element(z57->group(), std::string(k, 'a'))));
  ElementSet u(&z57->group(), members);
  EnergyProfile p = minimize_energy(*z57, u);
  EXPECT_EQ(p.energy, 0);
  EXPECT_EQ(p.displacement, 0);
  EXPECT_EQ(p.base_point, z57->act(g, z57->base_point()));
}

TEST_F(EnergyTest, ClassifyExamples) {
  ElementSet conc = parse_element_set(z57->group(), {"a", "aa", "aaa", "aaaa", "ab"});
  EnergyProfile pc = minimize_energy(*z57, conc);
  EXPECT_EQ(pc.base_point, z57->base_point());
  CaseMode practical;
  practical.threshold = z57->constants().rho0;
  CaseSplit c = classify(*z57, conc, pc, practical);
  EXPECT_EQ(c.kind, EnergyCase::kConcentrated);
  EXPECT_EQ(c.small, 4u);

  ElementSet safin = safin_family(f2->group(), 4).set;
  EnergyProfile ps = minimize_energy(*f2, safin);
  CaseMode tight;
  tight.threshold = Rational(1, 2);
  EXPECT_EQ(classify(*f2, safin, ps, tight).kind, EnergyCase::kDiffuse);

  ElementSet one = fset({"1"});
  EXPECT_EQ(classify(*f2, one, minimize_energy(*f2, one), practical).kind, EnergyCase::kBelowThreshold);
  CaseMode paper;
  paper.paper = true;
  CaseSplit pp = classify(*f2, safin, ps, paper);
  EXPECT_EQ(pp.kind, EnergyCase::kBelowThreshold);
  EXPECT_EQ(pp.threshold, pow10(10));
}

TEST_F(EnergyTest, DFactor) {
  EXPECT_EQ(d_factor(*f2, 100), 1);
  SpacePtr c6 = make_hyp_graph(cycle_with_symmetries(6));
  EXPECT_EQ(d_factor(*c6, 4), 3);
  Rational d = d_factor(*c6, 5);
  EXPECT_GE(d, Rational(3321928, 1000000));
  EXPECT_LE(d, Rational(3321929, 1000000));
}

TEST_F(EnergyTest, DescentMatchesBallScan) {
  std::vector<Point> ball;
  for (int r = 0; r <= 4; ++r) {
    auto s = f2->sphere(fp("1"), Length::edges(r), {});
    ball.insert(ball.end(), s.begin(), s.end());
  }
  std::mt19937_64 rng(31);
  for (int i = 0; i < 40; ++i) {
    std::vector<std::string> w;
    for (int j = 0; j < 4; ++j) w.push_back(oracle::random_letters(rng, 2, 4));
    ElementSet u = fset(w);
    Rational best = -1;
    for (const Point& x : ball) {
      Rational e = energy_at(*f2, u, x);
      if (best < 0 || e < best) best = e;
    }
    EXPECT_EQ(minimize_energy(*f2, u).energy, best);
  }
}

TEST_F(EnergyTest, MinimizerBeatsProbes) {
  std::mt19937_64 rng(32);
  for (SpacePtr s : {f2, z57}) {
    for (int i = 0; i < 20; ++i) {
      std::vector<std::string> w;
      for (int j = 0; j < 6; ++j) w.push_back(oracle::random_letters(rng, 2, 8));
      ElementSet u = parse_element_set(s->group(), w);
      EnergyProfile p = minimize_energy(*s, u);
      for (int k = 0; k < 50; ++k) {
        Point probe = s->act(parse_element(s->group(), oracle::random_letters(rng, 2, 8)), s->base_point());
        EXPECT_LE(p.energy, energy_at(*s, u, probe));
      }
    }
  }
}

TEST_F(EnergyTest, ConjugationInvariance) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::string> w;
    for (int j = 0; j < 5; ++j) w.push_back(oracle::random_letters(rng, 2, 6));
    ElementSet u = fset(w);
    Element g = parse_element(f2->group(), oracle::random_letters(rng, 2, 6));
    std::vector<Element> conj;
    for (const Element& x : u) conj.push_back(conjugate(g, x));
    ElementSet v(&f2->group(), conj);
    Point x = f2->act(parse_element(f2->group(), oracle::random_letters(rng, 2, 6)), fp("1"));
    EXPECT_EQ(energy_at(*f2, v, f2->act(g, x)), energy_at(*f2, u, x));
    EXPECT_EQ(minimize_energy(*f2, v).energy, minimize_energy(*f2, u).energy);
  }
}

// On a finite graph every subgroup has bounded orbits.
TEST_F(EnergyTest, EllipticBoundsOnCycles) {
  std::mt19937_64 rng(34);
  for (uint32_t n : {5u, 6u, 9u, 12u}) {
    SpacePtr s = make_hyp_graph(cycle_with_symmetries(n));
    Rational delta = s->constants().delta_abs();
    for (int i = 0; i < 20; ++i) {
      std::vector<std::string> w;
      for (int j = 0; j < 12; ++j) w.push_back(oracle::random_letters(rng, 2, 6));
      ElementSet u = parse_element_set(s->group(), w);
      EnergyProfile p = minimize_energy(*s, u);
      EXPECT_LE(p.energy, 10 * delta);
      if (u.size() >= 11 * s->constants().n0) {
        EXPECT_LE(p.displacement, 2 * s->constants().kappa0 + 15 * delta);
      }
    }
  }
}

}  // namespace
}  // namespace psg
