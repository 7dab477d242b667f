#include <gtest/gtest.h>

#include "adelic/eigenrel/eigenrel.hpp"
#include "adelic/surjcert/surjcert.hpp"

using namespace adelic;

namespace {

TraceSample sample(const Fq& k, APoly num, APoly den = {1}) {
  RatFuncField F(k);
  return TraceSample{"", 1, F.make(std::move(num), std::move(den))};
}

PrimeOfA prime(APoly pi) { return PrimeOfA{std::move(pi)}; }

}  // namespace

TEST(Sweep, ReferenceFamilyOrbitCount) {
  auto fam = reference_family();
  auto sw = collect_frobenius(fam, {2, false, {}});
  EXPECT_EQ(sw.data.size(), 6u);  // 3 places of degree 1, 3 of degree 2
  EXPECT_TRUE(sw.bad_places.empty());
  EXPECT_TRUE(sw.anomalies.empty());
  for (auto& fd : sw.data) {
    EXPECT_EQ(fd.n(), 2);
    EXPECT_EQ(fd.p0, prime({0, 1}));
  }
}

TEST(Sweep, BadReductionSkipped) {
  DrinfeldFamily fam{Fq::get(3), {{}, {0, 1}}, "rank1"};
  auto sw = collect_frobenius(fam, {1, false, {}});
  ASSERT_EQ(sw.bad_places.size(), 1u);
  EXPECT_EQ(sw.bad_places[0], "s");
  EXPECT_EQ(sw.data.size(), 2u);
}

TEST(Sweep, CrossCheckedSweepAgrees) {
  auto fam = reference_family();
  auto a = collect_frobenius(fam, {2, false, {}});
  auto b = collect_frobenius(fam, {2, true, {}});
  ASSERT_EQ(a.data.size(), b.data.size());
  EXPECT_TRUE(b.anomalies.empty());
  for (std::size_t i = 0; i < a.data.size(); ++i) EXPECT_EQ(a.data[i].f, b.data[i].f);
}

TEST(TradOf, Examples) {
  auto k = Fq::get(3);
  // rank 1: X - T^m
  FrobeniusData r1{"x", 2, {{0, 0, 2}, {1}}, prime({0, 1})};
  auto s1 = trad_of(k, r1);
  EXPECT_EQ(s1.trad.num, APoly{1});
  EXPECT_EQ(s1.trad.den, APoly{1});
  // rank 2: X^2 - aX + b -> a^2 / b
  PolyRing<Fq> A(k);
  APoly a{1, 1}, b{0, 0, 1};
  FrobeniusData r2{"x", 2, {b, A.neg(a), {1}}, prime({0, 1})};
  auto s2 = trad_of(k, r2);
  RatFuncField F(k);
  EXPECT_TRUE(F.equal(s2.trad, F.make(A.mul(a, a), b)));
  // a denominator outside p0 is an invariant violation
  FrobeniusData bad{"x", 1, {{1, 1}, {1}, {1}}, prime({0, 1})};
  EXPECT_THROW(trad_of(k, bad), InvariantViolation);
}

TEST(TradOf, ReferenceSamplesInA0) {
  auto fam = reference_family();
  auto sw = collect_frobenius(fam, {4, false, {}});
  for (auto& fd : sw.data) {
    auto s = trad_of(fam.k, fd);
    EXPECT_TRUE(in_A0(fam.k, s.trad, prime({0, 1}))) << fd.place;
  }
}

TEST(Residual, Examples) {
  auto k = Fq::get(3);
  auto p2 = prime({1, 0, 1});  // T^2 + 1
  EXPECT_TRUE(residual_trace_surjectivity(k, {sample(k, {0, 1})}, p2));
  EXPECT_FALSE(residual_trace_surjectivity(k, {sample(k, {2}), sample(k, {1})}, p2));
  EXPECT_FALSE(residual_trace_surjectivity(k, {}, p2));
  EXPECT_TRUE(residual_trace_surjectivity(k, {}, prime({0, 1})));  // k_p = F_3
}

TEST(Pairwise, GraphsAndProducts) {
  auto k = Fq::get(3);
  auto p1 = prime({1, 0, 1});  // T^2 + 1
  auto p2 = prime({2, 2, 1});  // (T + 1)^2 + 1
  // T^3 - T is fixed by T -> T + 1, so its images lie on the graph of that isomorphism
  auto g = sample(k, {0, 2, 0, 1});
  EXPECT_TRUE(residual_trace_surjectivity(k, {g}, p1));
  EXPECT_TRUE(residual_trace_surjectivity(k, {g}, p2));
  EXPECT_FALSE(pairwise_trace_surjectivity(k, {g}, p1, p2));
  EXPECT_TRUE(pairwise_trace_surjectivity(k, {g, sample(k, {0, 1})}, p1, p2));
  // residue fields of different size
  auto q1 = prime({0, 1});
  EXPECT_TRUE(pairwise_trace_surjectivity(k, {sample(k, {0, 1})}, q1, p1));
  EXPECT_FALSE(pairwise_trace_surjectivity(k, {sample(k, {1})}, q1, p1));
}

TEST(Pairwise, ImpliesBothSingles) {
  auto fam = reference_family();
  auto sw = collect_frobenius(fam, {3, false, {}});
  std::vector<TraceSample> s;
  for (auto& fd : sw.data) s.push_back(trad_of(fam.k, fd));
  auto primes = enumerate_primes(fam.k, 2);
  for (std::size_t i = 1; i < primes.size(); ++i)
    for (std::size_t j = i + 1; j < primes.size(); ++j)
      if (pairwise_trace_surjectivity(fam.k, s, primes[i], primes[j])) {
        EXPECT_TRUE(residual_trace_surjectivity(fam.k, s, primes[i]));
        EXPECT_TRUE(residual_trace_surjectivity(fam.k, s, primes[j]));
      }
}

TEST(Residual, StableUnderPermutation) {
  auto fam = reference_family();
  auto sw = collect_frobenius(fam, {3, false, {}});
  std::vector<TraceSample> s;
  for (auto& fd : sw.data) s.push_back(trad_of(fam.k, fd));
  auto p = prime({1, 0, 1});
  bool v = residual_trace_surjectivity(fam.k, s, p);
  std::reverse(s.begin(), s.end());
  EXPECT_EQ(residual_trace_surjectivity(fam.k, s, p), v);
  std::rotate(s.begin(), s.begin() + 5, s.end());
  EXPECT_EQ(residual_trace_surjectivity(fam.k, s, p), v);
}

TEST(PiAdic, ExpansionIsARingMap) {
  Rng rng(3);
  for (auto [q, pi] : std::vector<std::pair<std::uint32_t, APoly>>{{3, {1, 0, 1}}, {4, {1, 1, 1}}, {2, {1, 1}}, {5, {2, 1}}}) {
    auto k = Fq::get(q);
    PolyRing<Fq> A(k);
    PiAdicExpansion E(k, prime(pi), 3);
    const auto& R = E.ring();
    for (int t = 0; t < 40; ++t) {
      APoly a, b;
      for (int i = 0; i < 7; ++i) a.push_back(k.random(rng)), b.push_back(k.random(rng));
      A.normalize(a);
      A.normalize(b);
      EXPECT_TRUE(R.equal(E.expand(A.mul(a, b)), R.mul(E.expand(a), E.expand(b))));
      EXPECT_TRUE(R.equal(E.expand(A.add(a, b)), R.add(E.expand(a), E.expand(b))));
    }
    // pi itself is the uniformizer
    EXPECT_TRUE(R.equal(E.expand(pi), R.uniformizer()));
  }
  // T at p = (T - 1) expands to 1 + u
  auto k3 = Fq::get(3);
  PiAdicExpansion E(k3, prime({2, 1}), 2);
  EXPECT_EQ(E.expand(APoly{0, 1}), (TRing::Elem{1, 1}));
}

TEST(Depth2, Examples) {
  auto k = Fq::get(3);
  auto p = prime({2, 1});
  EXPECT_FALSE(depth2_generation(k, {sample(k, {2})}, p, DepthMode::Full));
  EXPECT_TRUE(depth2_generation(k, {sample(k, {0, 1})}, p, DepthMode::Full));
  auto k2 = Fq::get(2);
  auto q = prime({1, 1});
  EXPECT_FALSE(depth2_generation(k2, {sample(k2, {0, 1})}, q, DepthMode::Squares));
  EXPECT_TRUE(depth2_generation(k2, {sample(k2, {0, 0, 1})}, q, DepthMode::Squares));
  EXPECT_THROW(depth2_generation(k, {sample(k, {0, 1})}, p, DepthMode::Squares), std::invalid_argument);
}

TEST(FValue, IndependentOfThePrime) {
  auto fam = reference_family();
  auto sw = collect_frobenius(fam, {3, false, {}});
  auto primes = enumerate_primes(fam.k, 2);
  for (unsigned c : {1u, 2u})
    for (auto& fd : sw.data) {
      auto a = f_value_in_A(fam.k, fd, c);
      ASSERT_TRUE(a);
      for (auto& p : primes) {
        if (p == fd.p0) continue;
        auto kp = residue_field(fam.k, p);
        EXPECT_EQ(kp.from_poly(*a), f_value_mod_prime(fam.k, fd, c, p)) << fd.place;
      }
    }
}

TEST(FValue, ScanExamples) {
  auto k = Fq::get(3);
  auto p = prime({1, 1});
  EXPECT_FALSE(f_nonvanishing_scan(k, {}, 1, p));
  // (X - 1)^2: repeated root, never a witness
  FrobeniusData rep{"x", 1, {{1}, {1}, {1}}, prime({0, 1})};
  EXPECT_FALSE(f_nonvanishing_scan(k, {rep}, 1, p));
  auto fam = reference_family();
  auto sw = collect_frobenius(fam, {2, false, {}});
  auto w = f_nonvanishing_scan(k, sw.data, 1, p);
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->a);
}

TEST(TradField, Detect) {
  auto k = Fq::get(3);
  EXPECT_EQ(trad_field_detect(k, {}), TradField::Undetermined);
  auto fam = reference_family();
  auto sw = collect_frobenius(fam, {2, false, {}});
  std::vector<TraceSample> s;
  for (auto& fd : sw.data) s.push_back(trad_of(k, fd));
  EXPECT_EQ(trad_field_detect(k, s), TradField::F);
  DrinfeldFamily r3{k, {{}, {0, 1}, {}, {1}}, "rank3"};
  std::vector<TraceSample> s3;
  for (auto& fd : collect_frobenius(r3, {2, false, {}}).data) s3.push_back(trad_of(k, fd));
  EXPECT_EQ(trad_field_detect(k, s3), TradField::F);

  // char 2 rank 2: at places of even degree every adjoint trace is a square
  auto k2 = Fq::get(2);
  DrinfeldFamily c2{k2, {{}, {0, 1}, {1}}, "char2"};
  std::vector<TraceSample> even;
  for (auto& fd : collect_frobenius(c2, {4, false, {}}).data)
    if (fd.deg_x % 2 == 0) even.push_back(trad_of(k2, fd));
  ASSERT_FALSE(even.empty());
  EXPECT_EQ(trad_field_detect(k2, even), TradField::FSquared);
  for (auto& s2 : even) {
    PiAdicExpansion E(k2, prime({1, 1}), 3);
    EXPECT_EQ(E.expand(s2.trad)[1], 0u);
  }
  EXPECT_TRUE(is_square(k2, sample(k2, {1, 0, 1}, {0, 0, 1}).trad));
  EXPECT_FALSE(is_square(k2, sample(k2, {0, 1}).trad));
  EXPECT_TRUE(is_square(Fq::get(5), sample(Fq::get(5), {4, 0, 1}, {1, 2, 1}).trad) == false);
  EXPECT_TRUE(is_square(Fq::get(5), sample(Fq::get(5), {1, 2, 1}).trad));
  EXPECT_FALSE(is_square(Fq::get(5), sample(Fq::get(5), {2}).trad));
}

TEST(Certify, ReferenceFamily) {
  auto fam = reference_family();
  CertifyOptions opt;
  auto rep = certify(fam, opt);
  EXPECT_EQ(rep.places_good, 32u);  // monic irreducibles of degree <= 4 over F_3
  EXPECT_EQ(rep.places_bad, 0u);
  EXPECT_TRUE(rep.samples_in_A0);
  EXPECT_TRUE(rep.newton_ok);
  EXPECT_EQ(rep.trad_field, TradField::F);
  ASSERT_EQ(rep.primes.size(), 6u);
  for (auto& e : rep.primes) {
    EXPECT_EQ(e.status, PrimeStatus::Excluded);  // |k_p| <= 9 for every prime of degree <= 2
    if (e.p == rep.p0) continue;
    EXPECT_TRUE(e.residual) << e.pi;
    ASSERT_TRUE(e.witness) << e.pi;
    EXPECT_TRUE(e.witness_consistent) << e.pi;
  }
  EXPECT_EQ(rep.primes[0].exclusion, "characteristic");
  EXPECT_EQ(report_to_json(fam.k, rep), report_to_json(fam.k, certify(fam, opt)));
}

TEST(Certify, LargerPrimesCanCertify) {
  auto fam = reference_family();
  CertifyOptions opt;
  opt.place_degree_bound = 3;
  opt.prime_degree_bound = 3;
  auto rep = certify(fam, opt);
  for (auto& e : rep.primes)
    if (e.deg == 3) {
      EXPECT_NE(e.status, PrimeStatus::Excluded);
      if (e.residual && e.depth2 && e.witness) EXPECT_EQ(e.status, PrimeStatus::Certified);
    }
  EXPECT_GE(rep.certified(), 1u);
}

TEST(Certify, EmptyPrimeRangeAndExclusions) {
  auto fam = reference_family();
  CertifyOptions opt;
  opt.place_degree_bound = 2;
  opt.prime_degree_bound = 0;
  auto rep = certify(fam, opt);
  EXPECT_TRUE(rep.primes.empty());
  EXPECT_TRUE(rep.pairs.empty());
  opt.prime_degree_bound = 3;
  opt.exclusions = {prime({1, 2, 0, 1})};
  auto r2 = certify(fam, opt);
  for (auto& e : r2.primes)
    if (e.p == opt.exclusions[0]) EXPECT_EQ(e.exclusion, "user");
}
