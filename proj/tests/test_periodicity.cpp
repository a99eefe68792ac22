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
#include "psg/hypgeom.hpp"
#include "psg/periodicity.hpp"

namespace psg {
namespace {

std::string rep(const std::string& s, int k) {
  std::string out;
  for (int i = 0; i < k; ++i) out += s;
  return out;
}

class PeriodicityTest : public ::testing::Test {
 protected:
  SpacePtr f2 = make_free_group_tree(2);
  Point x0 = f2->base_point();

  Element el(const std::string& w) const { return parse_element(f2->group(), w); }
  ElementSet set(const std::vector<std::string>& w) const { return parse_element_set(f2->group(), w); }
};

TEST_F(PeriodicityTest, ThresholdIsThreeNuTimesTranslation) {
  EXPECT_EQ(constants_of(*f2).nu, 4);
  EXPECT_EQ(periodic_threshold(*f2, el("ab"), {}), 24);
  EXPECT_EQ(periodic_threshold(*f2, el("ab"), {.paper = true}), 24);  // delta = 0
  EXPECT_EQ(periodic_threshold(*f2, el("ab"), {.threshold = Rational(5)}), 5);
}

TEST_F(PeriodicityTest, PeriodicExamples) {
  PeriodOutcome yes = is_periodic(*f2, el(rep("ab", 13) + "a"), el("ab"), x0, {});
  ASSERT_TRUE(yes.certified) << yes.refusal;
  EXPECT_EQ(yes.certificate->slack, 3);
  EXPECT_EQ(to_string(yes.certificate->period_root), "ab");

  PeriodOutcome shorter = is_periodic(*f2, el(rep("ab", 11) + "a"), el("ab"), x0, {});
  EXPECT_FALSE(shorter.certified);
  EXPECT_NE(shorter.refusal.find("periodic length"), std::string::npos);

  PeriodOutcome off = is_periodic(*f2, el("b" + rep("ab", 13)), el("ab"), x0, {});
  EXPECT_FALSE(off.certified);
  EXPECT_EQ(off.refusal, "v x0 in C_E+190delta");
  EXPECT_TRUE(off.checks[0].holds);
}

TEST_F(PeriodicityTest, EllipticRootThrows) {
  EXPECT_THROW(is_periodic(*f2, el("a"), Element(), x0, {}), Error);
}

TEST_F(PeriodicityTest, NormalizedRoot) {
  EXPECT_EQ(to_string(normalized_root(el("BA"))), "ab");
  EXPECT_EQ(to_string(normalized_root(el("ababab"))), "ab");
  EXPECT_EQ(to_string(normalized_root(el("AAA"))), "a");
}

TEST_F(PeriodicityTest, FindPeriodRecoversRoot) {
  PeriodOutcome p = find_period(*f2, el(rep("ab", 13) + "a"), x0, {});
  ASSERT_TRUE(p.certified) << p.refusal;
  EXPECT_EQ(to_string(p.certificate->period_root), "ab");
  PeriodOutcome q = find_period(*f2, el("A" + rep("BA", 13)), x0, {});
  ASSERT_TRUE(q.certified);
  EXPECT_EQ(to_string(q.certificate->period_root), "ba");
  EXPECT_FALSE(find_period(*f2, el("ab"), x0, {}).certified);
}

// Period uniqueness: a random long power of a random root is certified only
// for roots that generate the same cyclic subgroup.
TEST_F(PeriodicityTest, PeriodUniquenessProperty) {
  std::mt19937_64 rng(7);
  int certified = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::string r = oracle::random_reduced(rng, 2, 1 + static_cast<int>(rng() % 4));
    if (oracle::cyclic_core_length(r) != r.size()) continue;
    Element root = el(r);
    Element v = power(root, 20);
    PeriodOutcome found = find_period(*f2, v, x0, {});
    if (!found.certified) continue;
    ++certified;
    EXPECT_TRUE(same_root(found.certificate->period_root, root)) << r;
    for (int other = 0; other < 10; ++other) {
      std::string s = oracle::random_reduced(rng, 2, 1 + static_cast<int>(rng() % 4));
      if (oracle::cyclic_core_length(s) != s.size()) continue;
      PeriodOutcome o = is_periodic(*f2, v, el(s), x0, {});
      if (o.certified) EXPECT_TRUE(same_root(el(s), root)) << r << " vs " << s;
    }
  }
  EXPECT_GT(certified, 20);
}

std::vector<Equation> power_equations(const PeriodicityTest& t, const Element& base, const Element& v,
                                      const Element& g, int from, int to) {
  std::vector<Equation> eqs;
  for (int i = from; i <= to; ++i) {
    Element u = power(base, i);
    eqs.push_back({u, v, multiply(inverse(multiply(u, v)), g)});
  }
  (void)t;
  return eqs;
}

TEST_F(PeriodicityTest, ExtractPeriodFromPowerEquations) {
  Element v = power(el("ab"), 200);
  Element g = el(rep("ab", 210) + "bb");
  auto eqs = power_equations(*this, el("ab"), v, g, 1, 6);
  PeriodOutcome p = extract_period_from_equations(*f2, eqs, x0, {});
  ASSERT_TRUE(p.certified) << p.refusal;
  EXPECT_EQ(to_string(p.certificate->period_root), "ab");
  for (const Check& c : p.checks) EXPECT_TRUE(c.holds) << c.name;
}

TEST_F(PeriodicityTest, ExtractRefusesOnReducedness) {
  Element v = el("ab");
  Element g = el("bb");
  std::vector<Equation> eqs = {{el("B"), v, multiply(inverse(multiply(el("B"), v)), g)},
                               {el("a"), v, multiply(inverse(multiply(el("a"), v)), g)}};
  PeriodOutcome p = extract_period_from_equations(*f2, eqs, x0, {});
  EXPECT_FALSE(p.certified);
  EXPECT_NE(p.refusal.find("reduced"), std::string::npos) << p.refusal;
}

TEST_F(PeriodicityTest, ExtractRefusesOnSymmetry) {
  Element v = el("ab");
  Element g = el("aaaaaaab");
  std::vector<Equation> eqs;
  for (const char* u : {"a", "aaaaa"}) {
    eqs.push_back({el(u), v, multiply(inverse(multiply(el(u), v)), g)});
  }
  PeriodOutcome p = extract_period_from_equations(*f2, eqs, x0, {});
  EXPECT_FALSE(p.certified);
  EXPECT_NE(p.refusal.find("symmetry"), std::string::npos) << p.refusal;
}

TEST_F(PeriodicityTest, ExtractRefusesMalformedInput) {
  Element v = el("ab");
  EXPECT_FALSE(extract_period_from_equations(*f2, {{el("a"), v, el("b")}}, x0, {}).certified);
  auto p = extract_period_from_equations(*f2, {{el("a"), v, el("b")}, {el("aa"), v, el("b")}}, x0, {});
  EXPECT_EQ(p.refusal, "products u_i v w_i differ");
}

// Every certified extraction satisfies the reduced-product bounds (all zero
// on a tree), checked again here through plain string reductions.
TEST_F(PeriodicityTest, ReducedProductBoundsProperty) {
  std::mt19937_64 rng(11);
  int certified = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::string r = oracle::random_reduced(rng, 2, 2 + static_cast<int>(rng() % 3));
    if (oracle::cyclic_core_length(r) != r.size()) continue;
    Element root = el(r);
    Element v = power(root, 40 + static_cast<int>(rng() % 10));
    Element g = multiply(power(root, 60), el(oracle::random_reduced(rng, 2, 3)));
    int from = 1 + static_cast<int>(rng() % 3);
    auto eqs = power_equations(*this, root, v, g, from, from + 3);
    PeriodOutcome p = extract_period_from_equations(*f2, eqs, x0, {});
    if (!p.certified) continue;
    ++certified;
    EXPECT_TRUE(same_root(p.certificate->period_root, root));
    for (size_t i = 0; i + 1 < eqs.size(); ++i) {
      std::string u1 = to_string(eqs[i].u), u2 = to_string(eqs[i + 1].u), vs = to_string(v);
      auto len = [](const std::string& s) { return static_cast<int64_t>(oracle::reduced_length(s)); };
      auto gp = [&](const std::string& p1, const std::string& q, const std::string& base) {
        std::string ib = oracle::invert_letters(base);
        return len(ib + p1) + len(ib + q) - len(oracle::invert_letters(p1) + q);
      };
      EXPECT_EQ(gp("", u2, u1), 0);
      EXPECT_EQ(gp(u1, u1 + vs, u2), 0);
      EXPECT_EQ(gp(u2, u2 + vs, u1 + vs), 0);
    }
  }
  EXPECT_GT(certified, 5);
}

TEST_F(PeriodicityTest, RightPeriods) {
  std::string u2 = rep("b" + rep("a", 13), 13);
  std::string u1 = "bba" + u2;
  for (const std::string& u : {u1, u2}) {
    EXPECT_TRUE(right_period(*f2, el(u), el("a"), x0, {}).periodic) << u;
    EXPECT_TRUE(right_period(*f2, el(u), el("b" + rep("a", 13)), x0, {}).periodic) << u;
  }
  RightPeriod r1 = right_period(*f2, el(u1), el("a"), x0, {});
  RightPeriod r2 = right_period(*f2, el(u2), el("a"), x0, {});
  EXPECT_EQ(r1.points.size(), 14u);
  EXPECT_EQ(r1.diameter, Length::edges(13));
  EXPECT_EQ(hausdorff_distance(*f2, r1.points, r2.points), Length());
  EXPECT_FALSE(right_period(*f2, el(rep("a", 20) + "b"), el("a"), x0, {}).periodic);
}

TEST_F(PeriodicityTest, HausdorffDistance) {
  std::vector<Point> a = {x0, f2->act(el("a"), x0)};
  std::vector<Point> b = {f2->act(el("aaa"), x0)};
  EXPECT_EQ(hausdorff_distance(*f2, a, b), Length::edges(3));
  EXPECT_THROW(hausdorff_distance(*f2, a, {}), Error);
}

TEST_F(PeriodicityTest, BiPeriodicExamples) {
  BiPeriodicOutcome w =
      is_biperiodic(*f2, set({rep("ab", 13) + "a", rep("ab", 14) + "a", rep("ab", 15) + "a"}), x0, {});
  ASSERT_TRUE(w.certified) << w.refusal;
  EXPECT_EQ(to_string(w.witness->coset_root), "ab");
  EXPECT_EQ(to_string(w.witness->e1_root), "ab");
  EXPECT_EQ(to_string(w.witness->e2_root), "ba");
  EXPECT_EQ(to_string(w.witness->coset_rep), rep("ab", 13) + "a");

  BiPeriodicOutcome mix = is_biperiodic(*f2, set({rep("b", 13), rep("ab", 13) + "a"}), x0, {});
  EXPECT_FALSE(mix.certified);
  EXPECT_NE(mix.refusal.find("mismatch"), std::string::npos) << mix.refusal;

  EXPECT_EQ(is_biperiodic(*f2, set({rep("ab", 13) + "a"}), x0, {}).refusal, "too_small");
  BiPeriodicOutcome np = is_biperiodic(*f2, set({"ab", rep("ab", 13) + "a"}), x0, {});
  EXPECT_EQ(np.refusal, "not periodic: ab");
}

TEST_F(PeriodicityTest, EReduceExamples) {
  EReduction r = e_reduce(*f2, el("aaabaa"), el("a"), x0);
  ASSERT_TRUE(r.ok);
  EXPECT_EQ(to_string(r.t_prime), "b");
  EXPECT_EQ(to_string(r.e), "aaa");
  EXPECT_EQ(to_string(r.f), "aa");
  EXPECT_TRUE(r.window_certified);

  EReduction id = e_reduce(*f2, el("bab"), el("a"), x0);
  ASSERT_TRUE(id.ok);
  EXPECT_TRUE(id.e.is_identity());
  EXPECT_TRUE(id.f.is_identity());

  EReduction in = e_reduce(*f2, el("aaaaa"), el("a"), x0);
  EXPECT_FALSE(in.ok);
  EXPECT_EQ(in.refusal, "in_E");
  EXPECT_FALSE(e_reduce(*f2, el("b"), el("a"), f2->act(el("b"), x0)).ok);
}

// t = e t' f always, and E-reduced t' satisfies (t'^{+-1} x0, v x0) <= [E]/2.
TEST_F(PeriodicityTest, EReductionBoundProperty) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 80; ++trial) {
    std::string r = oracle::random_reduced(rng, 2, 1 + static_cast<int>(rng() % 3));
    if (oracle::cyclic_core_length(r) != r.size()) continue;
    Element root = el(r);
    Element t = el(oracle::random_reduced(rng, 2, 1 + static_cast<int>(rng() % 8)));
    EReduction er = e_reduce(*f2, t, root, x0);
    if (!er.ok) {
      EXPECT_TRUE(power_of(t, root).has_value());
      continue;
    }
    EXPECT_EQ(multiply(multiply(er.e, er.t_prime), er.f), t);
    ASSERT_TRUE(er.window_certified);
    int64_t te = translation_length(*f2, root).translation.half_units();
    for (int k = -6; k <= 6; ++k) {
      Point vx = f2->act(power(root, k), x0);
      for (const Element& s : {er.t_prime, inverse(er.t_prime)}) {
        int64_t gp = f2->gromov_product(f2->act(s, x0), vx, x0).half_units();
        EXPECT_LE(2 * gp, te) << r << " t'=" << to_string(er.t_prime) << " k=" << k;
      }
    }
  }
}

TEST_F(PeriodicityTest, PingPongExamples) {
  ElementSet v = set({rep("ab", 20), rep("ab", 40), rep("ab", 60)});
  PingPongResult p = pingpong_certify(*f2, v, el("ab"), el("b"), 3, x0, {});
  ASSERT_TRUE(p.certified) << p.refusal;
  EXPECT_EQ(p.a, 4);
  ASSERT_TRUE(p.product_count.has_value());
  EXPECT_EQ(*p.product_count, 27u);
  std::vector<std::string> vt;
  for (const std::string& s : to_strings(v)) vt.push_back(s + "b");
  EXPECT_EQ(oracle::naive_product_count(vt, 3), 27u);

  PingPongResult close = pingpong_certify(*f2, set({rep("ab", 20), rep("ab", 21)}), el("ab"), el("b"), 2, x0, {});
  EXPECT_FALSE(close.hypotheses_ok);
  EXPECT_FALSE(close.certified);
  EXPECT_NE(close.refusal.find("v' x0"), std::string::npos) << close.refusal;

  PingPongResult one = pingpong_certify(*f2, set({rep("ab", 20)}), el("ab"), el("b"), 4, x0, {});
  EXPECT_TRUE(one.certified);
  EXPECT_EQ(*one.product_count, 1u);
}

TEST_F(PeriodicityTest, PingPongRejectsNonReducedT) {
  ElementSet v = set({rep("ab", 20), rep("ab", 40)});
  PingPongResult p = pingpong_certify(*f2, v, el("ab"), el("abb"), 2, x0, {});
  EXPECT_FALSE(p.certified);
  EXPECT_NE(p.refusal.find("E-reduced"), std::string::npos) << p.refusal;
}

// certified implies the brute-force count is exactly |V|^n.
TEST_F(PeriodicityTest, PingPongCountProperty) {
  std::mt19937_64 rng(5);
  int certified = 0;
  for (int trial = 0; trial < 30; ++trial) {
    std::string r = rng() % 2 ? "ab" : "aab";
    Element root = el(r);
    std::vector<std::string> words;
    int k = 2 + static_cast<int>(rng() % 3);
    int step = 5 + static_cast<int>(rng() % 40);
    for (int i = 1; i <= k; ++i) words.push_back(to_string(power(root, i * step)));
    std::string t = oracle::random_reduced(rng, 2, 1 + static_cast<int>(rng() % 4));
    unsigned n = 1 + static_cast<unsigned>(rng() % 3);
    PingPongResult p = pingpong_certify(*f2, set(words), root, el(t), n, x0, {});
    if (!p.certified) continue;
    ++certified;
    ASSERT_TRUE(p.product_count.has_value());
    EXPECT_EQ(*p.product_count, p.expected);
    std::vector<std::string> vt;
    for (const std::string& w : words) vt.push_back(w + t);
    EXPECT_EQ(oracle::naive_product_count(vt, static_cast<int>(n)), p.expected) << r << " t=" << t;
  }
  EXPECT_GT(certified, 3);
}

TEST_F(PeriodicityTest, SeparationExamples) {
  std::vector<std::string> w;
  for (int k = 1; k <= 20; ++k) w.push_back(rep("ab", k));
  SeparationResult s = separate(*f2, set(w), el("ab"), 2, x0, {});
  ASSERT_TRUE(s.refusal.empty()) << s.refusal;
  std::vector<std::string> expect;
  for (int k = 2; k <= 20; k += 2) expect.push_back(rep("ab", k));
  EXPECT_EQ(to_strings(s.v0), to_strings(set(expect)));
  EXPECT_EQ(s.spacing, 4);
  EXPECT_TRUE(s.guarantee_applies);
  EXPECT_TRUE(s.guarantee_met);

  SeparationResult one = separate(*f2, set({rep("ab", 3)}), el("ab"), 2, x0, {});
  EXPECT_EQ(to_strings(one.v0), std::vector<std::string>{rep("ab", 3)});
  SeparationResult none = separate(*f2, set({"ab"}), el("ab"), 2, x0, {});
  EXPECT_TRUE(none.v0.empty());
  EXPECT_FALSE(none.refusal.empty());
  EXPECT_THROW(separate(*f2, ElementSet(&f2->group(), {}), el("ab"), 2, x0, {}), Error);
}

TEST_F(PeriodicityTest, SeparationGuaranteeProperty) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    unsigned r = 1 + static_cast<unsigned>(rng() % 3);
    std::set<int> ks;
    while (ks.size() < 2 * r * r + rng() % 10) ks.insert(1 + static_cast<int>(rng() % 60));
    std::vector<std::string> w;
    for (int k : ks) w.push_back(to_string(power(el("ab"), k)));
    SeparationResult s = separate(*f2, set(w), el("ab"), r, x0, {});
    ASSERT_TRUE(s.guarantee_applies);
    EXPECT_TRUE(s.guarantee_met) << s.v0.size() << " of " << w.size() << " r=" << r;
    std::vector<int> kept;
    for (const Element& g : s.v0) kept.push_back(static_cast<int>(*power_of(g, el("ab"))));
    for (size_t i = 0; i < kept.size(); ++i) {
      EXPECT_GE(std::abs(kept[i]), static_cast<int>(r));
      for (size_t j = i + 1; j < kept.size(); ++j) EXPECT_GE(std::abs(kept[i] - kept[j]), static_cast<int>(r));
    }
  }
}

TEST(PeriodicityProduct, FindPeriodOnFreeProduct) {
  SpacePtr z = make_free_product_tree({2, 3});
  Element v = parse_element(z->group(), rep("ab", 30));
  PeriodOutcome p = find_period(*z, v, z->base_point(), {});
  ASSERT_TRUE(p.certified) << p.refusal;
  EXPECT_TRUE(same_root(p.certificate->period_root, parse_element(z->group(), "ab")));
}

}  // namespace
}  // namespace psg
