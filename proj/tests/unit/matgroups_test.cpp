#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "adelic/matgroups/matgroups.hpp"

using namespace adelic;

namespace {

KMat kmat(std::initializer_list<std::initializer_list<std::uint32_t>> rows) {
  KMat g(rows.size(), rows.begin()->size(), 0);
  std::size_t i = 0;
  for (auto& r : rows)
    for (auto x : r) g.a[i++] = x;
  return g;
}

std::vector<TMat> standard_gens(const TRing& R, bool with_u) {
  std::vector<TMat> g{lift_constant(R, kmat({{1, 1}, {0, 1}})), lift_constant(R, kmat({{1, 0}, {1, 1}}))};
  if (with_u) g.push_back(elementary(R, 2, 0, 1, {0, 1}));
  return g;
}

std::set<std::vector<std::uint8_t>> as_set(const CongruenceClosure& H) {
  std::set<std::vector<std::uint8_t>> s;
  for (std::size_t i = 0; i < H.order(); ++i) s.emplace(H.elems.at(i), H.elems.at(i) + H.elems.len());
  return s;
}

// Whenever the residual image is SL_n(k), |k| > 9 and layer 1 has a non-scalar, layer 1 is sl_n.
void expect_layer_lemma(const Fq& k, const FiltrationProfile& p) {
  if (k.order() > 9 && p.h0_contains_sl && !p.layers.empty() && p.layers[0].has_nonscalar)
    EXPECT_TRUE(p.layers[0].equals_sl);
}

}  // namespace

TEST(Closure, SmallExamples) {
  auto F3 = Fq::get(3);
  TRing R(F3, 1);
  auto id = closure(F3, 2, 1, {mat_identity(R, 2)});
  EXPECT_EQ(id.order(), 1u);
  EXPECT_TRUE(id.complete);
  auto H = closure(F3, 2, 1, standard_gens(R, false));
  EXPECT_EQ(H.order(), 24u);
  EXPECT_EQ(H.order(), count_sl(F3, 2));
  auto capped = closure(F3, 2, 1, standard_gens(R, false), 10);
  EXPECT_FALSE(capped.complete);
  EXPECT_THROW(closure(F3, 2, 1, {lift_constant(R, kmat({{1, 1}, {1, 1}}))}), std::invalid_argument);
}

TEST(Closure, IndependentOfGeneratorOrder) {
  auto F5 = Fq::get(5);
  TRing R(F5, 2);
  auto gens = standard_gens(R, true);
  gens.push_back(lift_constant(R, kmat({{2, 0}, {0, 3}})));
  auto base = as_set(closure(F5, 2, 2, gens));
  std::sort(gens.begin(), gens.end(), [](const TMat& a, const TMat& b) { return a.a < b.a; });
  do {
    EXPECT_EQ(as_set(closure(F5, 2, 2, gens)), base);
  } while (std::next_permutation(gens.begin(), gens.end(), [](const TMat& a, const TMat& b) { return a.a < b.a; }));
}

TEST(Closure, ElementsFormAGroup) {
  auto F4 = Fq::get(4);
  TRing R(F4, 2);
  auto H = closure(F4, 2, 2, {lift_constant(R, kmat({{1, 2}, {0, 1}})), elementary(R, 2, 1, 0, {0, 1})});
  ASSERT_TRUE(H.complete);
  std::vector<std::uint8_t> out(H.group.len());
  for (std::size_t i = 0; i < H.order(); i += 3)
    for (std::size_t j = 0; j < H.order(); j += 5) {
      H.group.mul(H.elems.at(i), H.elems.at(j), out.data());
      EXPECT_TRUE(H.elems.contains(out.data()));
    }
}

TEST(StrongApprox, FullGroupsOverF11AndF13) {
  for (std::uint32_t q : {11u, 13u}) {
    auto k = Fq::get(q);
    TRing R(k, 2);
    auto v = verify_strong_approx(k, 2, 2, standard_gens(R, true));
    EXPECT_TRUE(v.in_regime);
    EXPECT_TRUE(v.hypotheses);
    EXPECT_TRUE(v.full);
    EXPECT_TRUE(v.consistent);
    std::size_t expect = q == 11 ? 1756920u : 4798248u;
    EXPECT_EQ(v.order, expect);
    EXPECT_EQ(v.full_order, Int(expect));
    ASSERT_EQ(v.profile.layers.size(), 1u);
    EXPECT_EQ(v.profile.h0_order, static_cast<std::size_t>(group_order(2, q)));
    EXPECT_TRUE(v.profile.layers[0].equals_sl);
    EXPECT_EQ(v.profile.layers[0].fp_dim, 3u);
    EXPECT_TRUE(v.profile.layers[0].additive);
    expect_layer_lemma(k, v.profile);
  }
}

TEST(StrongApprox, HypothesisFailureMeansProperSubgroup) {
  auto k = Fq::get(11);
  TRing R(k, 2);
  auto v = verify_strong_approx(k, 2, 2, standard_gens(R, false));
  EXPECT_EQ(v.order, 1320u);
  EXPECT_FALSE(v.hypotheses);
  EXPECT_FALSE(v.full);
  EXPECT_TRUE(v.consistent);
  EXPECT_EQ(v.profile.layers[0].fp_dim, 0u);

  // residual image too small: upper unipotent with a u-layer
  auto w = verify_strong_approx(k, 2, 2, {standard_gens(R, true)[0], standard_gens(R, true)[2]});
  EXPECT_FALSE(w.h0_contains_sl);
  EXPECT_FALSE(w.full);
  EXPECT_TRUE(w.consistent);

  auto F13 = Fq::get(13);
  TRing R13(F13, 2);
  auto c = verify_strong_approx(F13, 2, 2, standard_gens(R13, false));
  EXPECT_FALSE(c.hypotheses);
  EXPECT_TRUE(c.consistent);
}

TEST(StrongApprox, RandomGeneratorSetsAreConsistent) {
  Rng rng(5);
  for (std::uint32_t q : {11u, 13u}) {
    auto k = Fq::get(q);
    TRing R(k, 2);
    for (int t = 0; t < 2; ++t) {
      // conjugates of the standard residual generators plus a random traceless u-layer or none
      std::vector<TMat> gens;
      KMat x(2, 2, 0);
      do
        for (auto& e : x.a) e = k.random(rng);
      while (k.is_zero(mat_det(k, x)));
      auto xi = *mat_inverse(k, x);
      for (auto& g : standard_gens(R, false)) {
        KMat c(2, 2, 0);
        for (std::size_t i = 0; i < 4; ++i) c.a[i] = g.a[i][0];
        gens.push_back(lift_constant(R, mat_mul(k, mat_mul(k, x, c), xi)));
      }
      if (t % 2 == 0) {
        auto a = k.random(rng), b = k.random(rng), d = k.random(rng);
        TMat g = mat_identity(R, 2);
        g(0, 0)[1] = a;
        g(1, 1)[1] = k.neg(a);
        g(0, 1)[1] = b;
        g(1, 0)[1] = d;
        gens.push_back(g);
      }
      auto v = verify_strong_approx(k, 2, 2, gens);
      EXPECT_TRUE(v.consistent) << q << " " << t;
      expect_layer_lemma(k, v.profile);
    }
  }
}

TEST(StrongApprox, SmallFieldIsOutOfRegime) {
  auto F2 = Fq::get(2);
  TRing R(F2, 2);
  auto v = verify_strong_approx(F2, 2, 2, standard_gens(R, true));
  EXPECT_FALSE(v.in_regime);
  EXPECT_TRUE(v.complete);
  EXPECT_THROW(verify_strong_approx(F2, 2, 2, {lift_constant(R, kmat({{1, 1}, {1, 0}})), TMat()}), std::exception);
}

TEST(Filtration, ConstantsHaveNoULayer) {
  auto k = Fq::get(11);
  TRing R(k, 2);
  auto H = closure(k, 2, 2, standard_gens(R, false));
  auto p = filtration_profile(H);
  EXPECT_EQ(p.h0_order, 1320u);
  EXPECT_TRUE(p.h0_contains_sl);
  EXPECT_EQ(p.layers[0].size, 1u);
  EXPECT_FALSE(p.layers[0].has_nonscalar);
  EXPECT_THROW(filtration_profile(closure(k, 2, 2, standard_gens(R, true), 100)), std::invalid_argument);
}

TEST(Filtration, LayersAreAdditiveAndConjugationStable) {
  auto k = Fq::get(4);
  TRing R(k, 3);
  auto H = closure(k, 2, 3, {lift_constant(R, kmat({{1, 1}, {0, 1}})), elementary(R, 2, 1, 0, {0, 0, 1}),
                             elementary(R, 2, 0, 1, {0, 2})});
  ASSERT_TRUE(H.complete);
  auto p = filtration_profile(H);
  for (auto& L : p.layers) EXPECT_TRUE(L.additive) << L.level;
}

TEST(BracketSpan, DegenerateExactlyAtTwoTwo) {
  EXPECT_EQ(bracket_span(2, Fq::get(3)).k_dim, 3u);
  EXPECT_EQ(bracket_span(2, Fq::get(2)).k_dim, 1u);
  EXPECT_EQ(bracket_span(3, Fq::get(2)).k_dim, 8u);
  for (auto [n, q] : std::vector<std::pair<int, std::uint32_t>>{{2, 2}, {2, 4}, {2, 3}, {2, 5}, {3, 2}, {3, 3}, {2, 9}}) {
    auto b = bracket_span(n, Fq::get(q));
    bool degenerate = n == 2 && Fq::get(q).characteristic() == 2;
    EXPECT_EQ(!b.full(), degenerate) << n << " " << q;
    EXPECT_EQ(b.fp_dim, b.k_dim * Fq::get(q).degree());
  }
  // pairing of pgl_2 with sl_2 in char 2 spans sl_2
  for (std::uint32_t q : {2u, 4u}) EXPECT_EQ(bracket_span_gl_sl(2, Fq::get(q)).k_dim, 3u);
}

TEST(InvariantSubgroups, PrimeFieldsSplit) {
  for (std::uint32_t q : {11u, 13u}) {
    auto L = invariant_subgroups(Fq::get(q), 2);
    EXPECT_TRUE(L.in_regime);
    EXPECT_TRUE(L.dichotomy);
    std::vector<std::string> labels;
    for (auto& s : L.members) labels.push_back(s.label);
    EXPECT_EQ(labels, (std::vector<std::string>{"0", "c", "sl", "gl"}));
  }
}

TEST(InvariantSubgroups, CharTwoDichotomy) {
  auto L = invariant_subgroups(Fq::get(16), 2);
  EXPECT_TRUE(L.in_regime);
  EXPECT_TRUE(L.dichotomy);
  bool c_in_sl = false;
  for (auto& s : L.members)
    if (s.label == "sl") c_in_sl = true;
  EXPECT_TRUE(c_in_sl);
  for (auto& s : L.members)
    if (s.label == "c") EXPECT_TRUE(s.contains_sl == false && s.in_scalars);
  // scalars lie in sl_2 in char 2: every subgroup of c is invariant (2^4 F_2-subspace lattice)
  std::size_t in_c = 0;
  for (auto& s : L.members) in_c += s.in_scalars;
  EXPECT_EQ(in_c, 67u);

  auto small = invariant_subgroups(Fq::get(3), 2);  // exploration only
  EXPECT_FALSE(small.in_regime);
  EXPECT_GE(small.members.size(), 2u);
}

TEST(TrAd, Examples) {
  auto k = Fq::get(13);
  EXPECT_EQ(tr_ad(k, mat_identity(k, 3)), k.from_int(9));
  auto a = k.from_int(3), b = k.from_int(5);
  auto d = kmat({{3, 0}, {0, 5}});
  EXPECT_EQ(tr_ad(k, d), k.add(k.from_int(2), k.add(k.div(a, b), k.div(b, a))));
  EXPECT_THROW(tr_ad(k, kmat({{1, 1}, {1, 1}})), std::domain_error);
}

TEST(TrAd, MatrixPathEqualsCharpolyPath) {
  auto k = Fq::get(13);
  Rng rng(17);
  int checked = 0;
  while (checked < 1000) {
    int n = 2 + checked % 3;
    KMat g(n, n, 0);
    for (auto& x : g.a) x = k.random(rng);
    if (k.is_zero(mat_det(k, g))) continue;
    EXPECT_EQ(tr_ad(k, g), tr_ad_charpoly(k, charpoly_mat(k, g)));
    ++checked;
  }
}

TEST(TrAd, CharTwoIdentityExhaustiveGL2F4) {
  auto k = Fq::get(4);
  EXPECT_TRUE(char2_trad_identity(k, mat_identity(k, 2)));
  EXPECT_TRUE(char2_trad_identity(Fq::get(2), kmat({{1, 1}, {0, 1}})));
  int count = 0;
  for (std::uint32_t code = 0; code < 256; ++code) {
    KMat g(2, 2, 0);
    for (int i = 0; i < 4; ++i) g.a[i] = (code >> (2 * i)) & 3;
    if (k.is_zero(mat_det(k, g))) continue;
    ++count;
    EXPECT_TRUE(char2_trad_identity(k, g));
  }
  EXPECT_EQ(count, 180);
  EXPECT_THROW(char2_trad_identity(Fq::get(3), mat_identity(Fq::get(3), 2)), std::invalid_argument);
}

TEST(TraceCriteria, One) {
  auto k = Fq::get(4);
  TRing R(k, 2);
  auto gen = R.constant(k.generator());
  EXPECT_FALSE(trace_criterion_1(R, {}));
  EXPECT_FALSE(trace_criterion_1(R, {gen, R.one()}));
  EXPECT_TRUE(trace_criterion_1(R, {gen, R.from_coeffs({1, 1})}));
  EXPECT_FALSE(trace_criterion_1(R, {R.from_coeffs({1, 1})}));  // residue F_2 only
  TRing R3(Fq::get(5), 3);
  EXPECT_TRUE(trace_criterion_1(R3, {R3.from_coeffs({2, 1})}));
  EXPECT_FALSE(trace_criterion_1(R3, {R3.from_coeffs({2, 0, 1})}));
}

TEST(TraceCriteria, Two) {
  auto k = Fq::get(4);
  TRing R(k, 3);
  auto gen = R.constant(k.generator());
  EXPECT_FALSE(trace_criterion_2(R, {gen}));
  EXPECT_TRUE(trace_criterion_2(R, {gen, R.from_coeffs({1, 0, 1})}));
  EXPECT_FALSE(trace_criterion_2(R, {gen, R.from_coeffs({1, 1, 0})}));  // not a square
  EXPECT_FALSE(trace_criterion_2(R, {}));
  // the squares form exactly the target subring
  std::vector<TRing::Elem> squares;
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) {
      auto x = R.from_coeffs({a, b, 0});
      squares.push_back(R.mul(x, x));
    }
  EXPECT_EQ(subalgebra_dim(R, squares), 4u);
  EXPECT_TRUE(trace_criterion_2(R, squares));
}

TEST(LayerTwoTrace, IsAHomomorphism) {
  auto k = Fq::get(4);
  TRing R(k, 3);
  Rng rng(23);
  auto random_h = [&](Fq::Elem& expect) {
    KMat g(2, 2, 0);
    do
      for (auto& x : g.a) x = k.random(rng);
    while (k.is_zero(mat_det(k, g)));
    TMat g2 = mat_identity(R, 2);
    for (auto& x : g2.a) x[2] = k.random(rng);
    auto x = R.from_coeffs({1, k.random(rng), k.random(rng)});
    expect = mat_trace(R, mat_sub(R, g2, mat_identity(R, 2)))[2];
    return mat_scale(R, x, mat_mul(R, lift_constant(R, g), g2));
  };
  for (int t = 0; t < 200; ++t) {
    Fq::Elem e1, e2;
    auto h1 = random_h(e1);
    auto h2 = random_h(e2);
    ASSERT_EQ(layer_two_trace(R, h1), e1);
    EXPECT_EQ(layer_two_trace(R, mat_mul(R, h1, h2)), k.add(e1, e2));
  }
  // a non-scalar u-layer has no decomposition
  EXPECT_FALSE(layer_two_trace(R, elementary(R, 2, 0, 1, {0, 1})));
}

TEST(ScalarLayer, SquaringIsTheConnectingBijection) {
  // g = diag(1 + ux, (1 + ux)^{-1}) g2 with g2 = Id mod u^2; (1 + ux) g has trace Tr = 2 + u^2 x^2 mod u^3
  auto k = Fq::get(4);
  TRing R(k, 3);
  Rng rng(29);
  std::set<Fq::Elem> images;
  for (std::uint32_t x0 = 0; x0 < 4; ++x0)
    for (int t = 0; t < 8; ++t) {
      auto s = R.add(R.one(), R.mul(R.uniformizer(), R.from_coeffs({x0, k.random(rng), 0})));
      TMat d = mat_identity(R, 2);
      d(0, 0) = s;
      d(1, 1) = R.inv(s);
      TMat g2 = mat_identity(R, 2);
      auto a = k.random(rng), b = k.random(rng), c = k.random(rng);
      g2(0, 0)[2] = a;
      g2(1, 1)[2] = a;  // traceless in char 2
      g2(0, 1)[2] = b;
      g2(1, 0)[2] = c;
      auto g = mat_mul(R, d, g2);
      auto gt = mat_scale(R, s, g);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          EXPECT_EQ(gt(i, j)[0], i == j ? 1u : 0u);
          if (i != j) EXPECT_EQ(gt(i, j)[1], 0u);
        }
      auto tr = mat_trace(R, mat_sub(R, gt, mat_identity(R, 2)));
      EXPECT_EQ(tr[0], 0u);
      EXPECT_EQ(tr[1], 0u);
      EXPECT_EQ(tr[2], k.mul(x0, x0));
      images.insert(tr[2]);
    }
  EXPECT_EQ(images.size(), 4u);
}

TEST(Goursat, FullProductAndGraphs) {
  auto F9 = Fq::get(9);
  auto gens9 = sl_generators(F9, 2);
  {
    std::vector<std::pair<KMat, KMat>> g;
    for (auto& x : gens9) {
      g.emplace_back(x, mat_identity(F9, 2));
      g.emplace_back(mat_identity(F9, 2), x);
    }
    auto r = goursat_analyze(F9, F9, 2, g);
    EXPECT_EQ(r.kind, GoursatKind::Full);
    EXPECT_EQ(r.order, 518400u);
  }
  {
    std::vector<std::pair<KMat, KMat>> g;
    for (auto& x : gens9) {
      KMat y = x;
      for (auto& e : y.a) e = F9.frobenius(e);
      g.emplace_back(x, y);
    }
    auto r = goursat_analyze(F9, F9, 2, g);
    EXPECT_EQ(r.kind, GoursatKind::Graph);
    EXPECT_EQ(r.order, 720u);
    ASSERT_TRUE(r.frob_power);
    EXPECT_EQ(*r.frob_power, 1u);
  }
  {
    auto F5 = Fq::get(5);
    std::vector<std::pair<KMat, KMat>> g;
    for (auto& x : sl_generators(F5, 2)) g.emplace_back(x, x);
    auto r = goursat_analyze(F5, F5, 2, g);
    EXPECT_EQ(r.kind, GoursatKind::Graph);
    EXPECT_EQ(*r.frob_power, 0u);
    EXPECT_EQ(r.n1, 1u);
  }
  {
    // first factor only: second projection trivial
    auto F5 = Fq::get(5);
    std::vector<std::pair<KMat, KMat>> g;
    for (auto& x : sl_generators(F5, 2)) g.emplace_back(x, mat_identity(F5, 2));
    EXPECT_EQ(goursat_analyze(F5, F5, 2, g).kind, GoursatKind::Other);
  }
}

TEST(Goursat, FullProductOverF11) {
  auto F11 = Fq::get(11);
  std::vector<std::pair<KMat, KMat>> g;
  for (auto& x : sl_generators(F11, 2)) {
    g.emplace_back(x, mat_identity(F11, 2));
    g.emplace_back(mat_identity(F11, 2), x);
  }
  auto r = goursat_analyze(F11, F11, 2, g);
  EXPECT_EQ(r.kind, GoursatKind::Full);
  EXPECT_EQ(r.order, 1320u * 1320u);
}

TEST(Orders, FormulaAndEnumeration) {
  EXPECT_EQ(group_order(2, 3), Int(24));
  EXPECT_EQ(group_order(2, 4), Int(60));
  EXPECT_EQ(group_order(2, 2, true), Int(6));
  EXPECT_EQ(group_order(3, 2, true), Int(8 * 3 * 9));
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    EXPECT_EQ(Int(count_sl(Fq::get(q), 2)), Int(q) * (Int(q) * q - 1)) << q;
    EXPECT_EQ(Int(count_sl(Fq::get(q), 2)), group_order(2, q));
  }
  EXPECT_EQ(Int(count_sl(Fq::get(2), 3)), group_order(3, 2));
}

TEST(Orders, FieldBound) {
  for (int n : {2, 3}) {
    auto r = field_bound_check(n, 16);
    EXPECT_TRUE(r.ok()) << r.violations.front();
    EXPECT_GT(r.pairs, 0);
  }
}
