#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "adelic/rootsys/rootsys.hpp"

using namespace adelic;

namespace {

QVec qv(std::vector<int> x) {
  QVec v;
  for (int a : x) v.push_back(Rational(a));
  return v;
}

const std::map<std::string, long> kWeylOrder{{"A1", 2},    {"A2", 6},      {"A3", 24},       {"A4", 120},
                                             {"B2", 8},    {"B3", 48},     {"C3", 48},       {"D4", 192},
                                             {"G2", 12},   {"A1xA1", 4},   {"A1xA2", 12},    {"A1xA1xA1", 8}};

}  // namespace

TEST(RootSystem, CatalogShapes) {
  std::map<std::string, std::size_t> roots{{"A1", 2}, {"A2", 6}, {"A3", 12}, {"A4", 20}, {"B2", 8}, {"B3", 18},
                                           {"C3", 18}, {"D4", 24}, {"G2", 12}, {"A1xA1", 4}, {"A1xA2", 8}, {"A1xA1xA1", 6}};
  for (auto& s : root_system_catalog()) {
    EXPECT_EQ(s.roots().size(), roots.at(s.label())) << s.label();
    EXPECT_EQ(s.is_type_A(), s.label().size() == 2 && s.label()[0] == 'A') << s.label();
  }
  EXPECT_EQ(root_system_A(3).rank(), 3);
  EXPECT_EQ(root_system_G2().rank(), 2);
  EXPECT_EQ(root_system_by_label("A1xA2").rank(), 3);
}

TEST(RootSystem, ReflectionsAreOrthogonalInvolutionsPermutingRoots) {
  for (auto& s : root_system_catalog()) {
    std::vector<QVec> sorted = s.roots();
    std::sort(sorted.begin(), sorted.end());
    for (auto& a : s.roots()) {
      std::vector<QVec> img;
      for (auto& b : s.roots()) {
        auto sb = s.reflect(a, b);
        img.push_back(sb);
        EXPECT_EQ(s.reflect(a, sb), b);
        for (auto& c : s.roots()) EXPECT_EQ(s.inner(sb, s.reflect(a, c)), s.inner(b, c));
      }
      std::sort(img.begin(), img.end());
      EXPECT_EQ(img, sorted) << s.label();
    }
  }
}

TEST(WeylOrbit, Examples) {
  auto a2 = root_system_A(2);
  auto o = weyl_orbit(a2, qv({1, 0, 0}));
  std::vector<QVec> expect{qv({-1, -1, 0}), qv({0, 1, 0}), qv({1, 0, 0})};
  EXPECT_EQ(o.elems, expect);
  EXPECT_EQ(weyl_orbit(root_system_A(1), qv({0, 0})).elems.size(), 1u);
  auto b2 = weyl_orbit(root_system_B(2), qv({1, 0}));
  std::vector<QVec> eb{qv({-1, 0}), qv({0, -1}), qv({0, 1}), qv({1, 0})};
  EXPECT_EQ(b2.elems, eb);
}

TEST(WeylOrbit, SizeDividesWeylOrder) {
  for (auto& s : root_system_catalog()) {
    for (int t = 0; t < 5; ++t) {
      QVec lam(s.coords(), Rational(0));
      for (int i = 0; i < s.coords(); ++i) lam[i] = Rational((i * 7 + t * 3) % 5 - 2);
      auto o = weyl_orbit(s, lam);
      EXPECT_EQ(kWeylOrder.at(s.label()) % static_cast<long>(o.elems.size()), 0) << s.label();
    }
  }
}

TEST(Conditions, Examples) {
  auto a2 = root_system_A(2);
  auto c1 = check_conditions(a2, weyl_orbit(a2, qv({1, 0, 0})));
  EXPECT_TRUE(c1.a && c1.b && c1.c);
  auto generic = weyl_orbit(a2, qv({0, 1, 3}));
  EXPECT_EQ(generic.elems.size(), 6u);
  auto c2 = check_conditions(a2, generic);
  EXPECT_TRUE(c2.a);
  EXPECT_FALSE(c2.c);
  auto b2 = root_system_B(2);
  EXPECT_FALSE(check_conditions(b2, weyl_orbit(b2, qv({1, 0}))).b);
}

TEST(Conditions, InvariantUnderScalingAndRelabeling) {
  for (auto& s : root_system_catalog()) {
    if (s.label() == "D4" || s.label() == "A4") continue;  // (c) enumeration is slow on large orbits
    QVec lam(s.coords(), Rational(0));
    for (int i = 0; i < s.coords(); ++i) lam[i] = Rational(i % 3 == 1 ? 1 : 0);
    auto o = weyl_orbit(s, lam);
    auto c0 = check_conditions(s, o);
    QVec scaled = lam;
    for (auto& x : scaled) x *= Rational(-3, 2);
    auto c1 = check_conditions(s, weyl_orbit(s, scaled));
    EXPECT_EQ(c0.a, c1.a);
    EXPECT_EQ(c0.b, c1.b);
    EXPECT_EQ(c0.c, c1.c);
    auto shuffled = o;
    std::reverse(shuffled.elems.begin(), shuffled.elems.end());
    auto c2 = check_conditions(s, shuffled);
    EXPECT_EQ(c0.a, c2.a);
    EXPECT_EQ(c0.b, c2.b);
    EXPECT_EQ(c0.c, c2.c);
  }
}

TEST(MainTheorem, FullBoxRunHasNoCounterexamples) {
  auto rep = verify_main_theorem(root_system_catalog(), 3);
  for (auto& v : rep.systems) {
    for (auto& c : v.counterexamples) ADD_FAILURE() << c.system << " " << qvec_to_string(c.lambda) << ": " << c.reason;
    if (v.system == "G2" || v.system == "D4" || v.system == "B2" || v.system == "B3" || v.system == "C3" ||
        v.system.find('x') != std::string::npos)
      EXPECT_EQ(v.orbits_ab, 0) << v.system;
    if (v.system[0] == 'A' && v.system.size() == 2) {
      EXPECT_GT(v.orbits_ab, 0) << v.system;
      EXPECT_GT(v.lemma_checks, 0) << v.system;
    }
  }
  EXPECT_EQ(rep.counterexample_count(), 0u);
}
