#include <gtest/gtest.h>

#include "adelic/eigenrel/eigenrel.hpp"

using namespace adelic;

namespace {

using Poly = std::vector<ExtField::Elem>;

Poly from_roots(const ExtField& F, const std::vector<ExtField::Elem>& roots) {
  PolyRing<ExtField> P(F);
  Poly f = P.one();
  for (auto& r : roots) f = P.mul(f, Poly{F.neg(r), F.one()});
  return f;
}

Poly from_ints(const ExtField& F, const std::vector<int>& c) {
  Poly f;
  for (int x : c) f.push_back(F.from_int(x));
  return f;
}

// Direct evaluation of the product on explicitly chosen roots.
ExtField::Elem direct_f(const ExtField& F, const std::vector<ExtField::Elem>& a) {
  const int n = static_cast<int>(a.size());
  ExtField::Elem v = F.one();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      v = F.mul(v, F.sub(a[i], a[j]));
      for (int k = 0; k < n; ++k)
        if (k != i && k != j) v = F.mul(v, F.sub(F.mul(a[i], a[j]), F.mul(a[k], a[k])));
    }
  if (n >= 4) throw std::logic_error("direct_f: n <= 3 only");
  return v;
}

Poly random_monic(const ExtField& F, int n, Rng& rng) {
  Poly f;
  for (int i = 0; i < n; ++i) f.push_back(F.random(rng));
  while (F.is_zero(f[0])) f[0] = F.random(rng);
  f.push_back(F.one());
  return f;
}

}  // namespace

TEST(FValue, Examples) {
  auto F7 = ExtField::build(7, 1);
  auto r = f_value(F7, from_ints(F7, {2, -3, 1}));
  ASSERT_TRUE(r.value);
  EXPECT_EQ(*r.value, F7.from_int(6));
  EXPECT_FALSE(r.any_flag());

  auto sq = f_value(F7, from_ints(F7, {1, -2, 1}));
  EXPECT_TRUE(sq.flag_a);
  EXPECT_TRUE(sq.is_zero());

  auto F11 = ExtField::build(11, 1);
  auto c = f_value(F11, from_roots(F11, {F11.from_int(1), F11.from_int(2), F11.from_int(4)}));
  EXPECT_TRUE(c.flag_b);
  EXPECT_FALSE(c.flag_a);
  EXPECT_TRUE(c.is_zero());

  EXPECT_THROW(f_value(F7, from_ints(F7, {0, 1, 1})), std::invalid_argument);
  EXPECT_THROW(f_value(F7, from_ints(F7, {1, 1})), std::invalid_argument);
}

TEST(FValue, IrreducibleFactorsSplitInCompositum) {
  // X^2 + 1 over F_3 splits in F_9 with roots i, -i: f = -(2i)^2 = 4 = 1
  auto F3 = ExtField::build(3, 1);
  auto r = f_value(F3, from_ints(F3, {1, 0, 1}));
  EXPECT_EQ(r.split.degree(), 2u);
  EXPECT_EQ(*r.value, F3.one());
}

TEST(FValue, MatchesDirectEvaluationOnChosenRoots) {
  Rng rng(41);
  for (auto [q, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{13, 1}, {4, 2}, {5, 2}, {2, 3}}) {
    auto F = ExtField::build(q, k);
    for (int n : {2, 3}) {
      for (int t = 0; t < 60; ++t) {
        std::vector<ExtField::Elem> a;
        for (int i = 0; i < n; ++i) {
          auto x = F.random(rng);
          while (F.is_zero(x)) x = F.random(rng);
          a.push_back(x);
        }
        auto rep = f_value(F, from_roots(F, a));
        EXPECT_EQ(*rep.value, direct_f(F, a));
      }
    }
  }
}

TEST(SymbolicF, DegreeTwo) {
  const auto& f = symbolic_f(2);
  std::map<std::vector<int>, Int> expect{{{2, 0}, Int(-1)}, {{0, 1}, Int(4)}};
  EXPECT_EQ(f.terms, expect);
  auto F7 = ExtField::build(7, 1);
  EXPECT_EQ(eval_symbolic(F7, f, from_ints(F7, {2, -3, 1})), F7.from_int(6));
  EXPECT_THROW(symbolic_f(4), std::out_of_range);
}

TEST(SymbolicF, AgreesWithFValue) {
  Rng rng(43);
  for (auto [q, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{13, 1}, {5, 1}, {2, 2}, {3, 2}}) {
    auto F = ExtField::build(q, k);
    for (int n : {2, 3}) {
      int samples = (q == 13 && n == 3) ? 500 : 150;
      for (int t = 0; t < samples; ++t) {
        auto cp = random_monic(F, n, rng);
        EXPECT_EQ(*f_value(F, cp).value, eval_symbolic(F, symbolic_f(n), cp));
      }
    }
  }
}

TEST(FValue, FlagIffZeroExhaustiveOverF5) {
  auto F = ExtField::build(5, 1);
  for (int n : {2, 3}) {
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 5;
    for (int code = 0; code < total; ++code) {
      Poly cp;
      int c = code;
      for (int i = 0; i < n; ++i) {
        cp.push_back(F.from_int(c % 5));
        c /= 5;
      }
      if (F.is_zero(cp[0])) continue;
      cp.push_back(F.one());
      auto rep = f_value(F, cp);
      EXPECT_EQ(rep.any_flag(), rep.is_zero()) << code;
    }
  }
}

TEST(FValue, ConjugationInvariant) {
  auto F = ExtField::build(13, 1);
  Rng rng(47);
  for (int t = 0; t < 30; ++t) {
    auto g = random_matrix(F, 3, rng);
    auto h = random_matrix(F, 3, rng);
    auto hinv = mat_inverse(F, h);
    if (F.is_zero(mat_det(F, g)) || !hinv) continue;
    auto c1 = charpoly_mat(F, g);
    auto c2 = charpoly_mat(F, mat_mul(F, mat_mul(F, h, g), *hinv));
    EXPECT_EQ(*f_value(F, c1).value, *f_value(F, c2).value);
  }
}

TEST(Nonvanishing, Examples) {
  auto F5 = ExtField::build(5, 1);
  Matrix<ExtField::Elem> d(2, 2, F5.zero());
  d(0, 0) = F5.from_int(1);
  d(1, 1) = F5.from_int(2);
  EXPECT_EQ(*f_value(F5, charpoly_mat(F5, d)).value, F5.from_int(-1));
  auto res = nonvanishing_search(F5, 2, 1, 50, 1, [&](Rng&) { return d; });
  EXPECT_TRUE(res.witness);

  auto F9 = ExtField::build(3, 2);
  // torus oracle: some diag(a, b) has a^6 != b^6
  bool torus = false;
  Rng rr(0);
  for (int i = 0; i < 9 && !torus; ++i)
    for (int j = 0; j < 9 && !torus; ++j) {
      ExtField::Elem a(2), b(2);
      a[0] = i % 3, a[1] = i / 3, b[0] = j % 3, b[1] = j / 3;
      if (F9.is_zero(a) || F9.is_zero(b)) continue;
      torus = !F9.equal(F9.pow(a, std::uint64_t(6)), F9.pow(b, std::uint64_t(6)));
    }
  EXPECT_TRUE(torus);
  auto r9 = nonvanishing_search(F9, 2, 6, 200, 7);
  EXPECT_TRUE(r9.witness);
  auto w = charpoly_mat(F9, mat_pow(F9, *r9.witness, 6));
  EXPECT_FALSE(f_value(F9, w).is_zero());

  // scalar matrices always give f = 0, so the search reports exhaustion
  auto F2 = ExtField::build(2, 1);
  auto scal = nonvanishing_search(F2, 2, 1, 20, 0, [&](Rng&) { return mat_identity(F2, 2); });
  EXPECT_FALSE(scal.witness);
  EXPECT_EQ(scal.tried, 20);
}
