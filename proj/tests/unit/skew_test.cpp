#include <gtest/gtest.h>

#include <set>

#include "adelic/skew/skew_poly.hpp"

using namespace adelic;

namespace {

SkewExt::Elem random_skew(const SkewExt& S, int deg, Rng& rng) {
  SkewExt::Elem a;
  for (int i = 0; i < deg; ++i) a.push_back(S.base().random(rng));
  auto top = S.base().random(rng);
  if (S.base().is_zero(top)) top = S.base().one();
  a.push_back(top);
  return a;
}

// Brute-force count of roots of an additive polynomial on a small field.
std::size_t brute_kernel_size(const SkewExt& S, const SkewExt::Elem& a) {
  const ExtField& L = S.base();
  std::size_t n = 0;
  std::uint32_t q = L.base().order();
  std::size_t total = 1;
  for (unsigned i = 0; i < L.degree(); ++i) total *= q;
  for (std::size_t code = 0; code < total; ++code) {
    ExtField::Elem x(L.degree());
    std::size_t c = code;
    for (unsigned i = 0; i < L.degree(); ++i) {
      x[i] = static_cast<std::uint32_t>(c % q);
      c /= q;
    }
    if (L.is_zero(S.eval(a, x))) ++n;
  }
  return n;
}

}  // namespace

TEST(SkewMul, DefiningRelation) {
  auto K = ExtField::build(3, 4);
  SkewExt S(K);
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    auto c = K.random(rng);
    auto lhs = S.mul(S.tau_pow(1), S.constant(c));
    EXPECT_TRUE(S.equal(lhs, S.monomial(K.frob(c), 1)));
  }
}

TEST(SkewMul, TauPlusOneTimesTauMinusOne) {
  auto K = ExtField::build(2, 4);
  SkewExt S(K);
  SkewExt::Elem a{K.one(), K.one()};
  SkewExt::Elem b{K.neg(K.one()), K.one()};
  auto prod = S.mul(a, b);
  SkewExt::Elem expect{K.neg(K.one()), K.zero(), K.one()};
  EXPECT_TRUE(S.equal(prod, expect));
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    auto x = K.random(rng);
    EXPECT_EQ(S.eval(prod, x), S.eval(a, S.eval(b, x)));
  }
}

TEST(SkewMul, AssociativeAndComposition) {
  for (auto [q, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 5}, {3, 3}, {4, 2}, {9, 2}}) {
    auto K = ExtField::build(q, k);
    SkewExt S(K);
    Rng rng(q * 10 + k);
    for (int t = 0; t < 15; ++t) {
      auto a = random_skew(S, 3, rng), b = random_skew(S, 2, rng), c = random_skew(S, 4, rng);
      EXPECT_TRUE(S.equal(S.mul(a, S.mul(b, c)), S.mul(S.mul(a, b), c)));
      EXPECT_EQ(S.degree(S.mul(a, b)), S.degree(a) + S.degree(b));
      auto x = K.random(rng), y = K.random(rng);
      EXPECT_EQ(S.eval(S.mul(a, b), x), S.eval(a, S.eval(b, x)));
      EXPECT_EQ(S.eval(a, K.add(x, y)), K.add(S.eval(a, x), S.eval(a, y)));
      EXPECT_TRUE(K.is_zero(S.eval(a, K.zero())));
    }
  }
}

TEST(RightDivmod, Examples) {
  auto K = ExtField::build(3, 2);
  SkewExt S(K);
  Rng rng(5);
  auto b = random_skew(S, 2, rng);
  auto [q1, r1] = S.right_divmod(b, b);
  EXPECT_TRUE(S.equal(q1, S.one()));
  EXPECT_TRUE(r1.empty());
  auto [q2, r2] = S.right_divmod(S.tau_pow(2), S.tau_pow(1));
  EXPECT_TRUE(S.equal(q2, S.tau_pow(1)));
  EXPECT_TRUE(r2.empty());
  for (int t = 0; t < 50; ++t) {
    auto a = random_skew(S, 5, rng);
    auto d = random_skew(S, 2, rng);
    auto [qq, rr] = S.right_divmod(a, d);
    EXPECT_LT(S.degree(rr), 2);
    EXPECT_TRUE(S.equal(S.add(S.mul(qq, d), rr), a));
  }
  EXPECT_THROW(S.right_divmod(b, S.zero()), std::domain_error);
}

TEST(KernelBasis, Examples) {
  for (auto [q, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 4}, {3, 4}, {4, 2}}) {
    auto L = ExtField::build(q, k);
    SkewExt S(L);
    SkewExt::Elem tm1{L.neg(L.one()), L.one()};
    auto ker = kernel_basis(S, tm1);
    ASSERT_EQ(ker.size(), 1u);
    EXPECT_TRUE(L.in_base(ker[0]));
    SkewExt::Elem t2m1{L.neg(L.one()), L.zero(), L.one()};
    auto ker2 = kernel_basis(S, t2m1);
    EXPECT_EQ(ker2.size(), k % 2 == 0 ? 2u : 1u);
    for (auto& x : ker2) EXPECT_EQ(L.frob_pow(x, 2), x);
    EXPECT_TRUE(kernel_basis(S, S.tau_pow(1)).empty());
  }
  // brute-force oracle on F_16 and F_81
  for (auto [q, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 4}, {3, 4}}) {
    auto L = ExtField::build(q, k);
    SkewExt S(L);
    Rng rng(q);
    for (int t = 0; t < 5; ++t) {
      auto a = random_skew(S, 2, rng);
      auto ker = kernel_basis(S, a);
      std::size_t expect = 1;
      for (std::size_t i = 0; i < ker.size(); ++i) expect *= q;
      EXPECT_EQ(brute_kernel_size(S, a), expect);
    }
  }
}

TEST(Annihilator, RoundTrip) {
  auto L2 = ExtField::build(3, 2);
  SkewExt S2(L2);
  EXPECT_TRUE(S2.equal(annihilator_of_subspace(S2, {}), S2.one()));
  auto f = annihilator_of_subspace(S2, {L2.one()});
  EXPECT_TRUE(S2.equal(f, SkewExt::Elem{L2.neg(L2.one()), L2.one()}));
  auto kf = kernel_basis(S2, f);
  ASSERT_EQ(kf.size(), 1u);
  EXPECT_TRUE(L2.in_base(kf[0]));

  auto L = ExtField::build(3, 4);
  SkewExt S(L);
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    std::vector<ExtField::Elem> W{L.random(rng), L.random(rng)};
    if (fq_rank(L, W) < 2) continue;
    auto g = annihilator_of_subspace(S, W);
    EXPECT_EQ(S.degree(g), 2);
    auto ker = kernel_basis(S, g);
    ASSERT_EQ(ker.size(), 2u);
    auto all = ker;
    all.insert(all.end(), W.begin(), W.end());
    EXPECT_EQ(fq_rank(L, all), 2u);
  }
  std::vector<ExtField::Elem> dep{L.one(), L.from_int(2)};
  EXPECT_THROW(annihilator_of_subspace(S, dep), std::invalid_argument);
}

TEST(SkewPoly, IntegralCoefficientsOverFqS) {
  Fq k(3);
  PolyRing<Fq> Ps(k, "s");
  SkewRing<PolyRing<Fq>> S(Ps);
  // tau * s = s^3 tau
  auto prod = S.mul(S.tau_pow(1), S.constant(Ps.x()));
  EXPECT_TRUE(S.equal(prod, S.monomial(Ps.monomial(1, 3), 1)));
}
