#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "adelic/cli/acceptance.hpp"
#include "adelic/cli/module_io.hpp"
#include "adelic/surjcert/surjcert.hpp"

using namespace adelic;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(ADELIC_TEST_DATA) + "/" + name, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(SparsePoly, ParseAndPrint) {
  auto k = Fq::get(5);
  EXPECT_EQ(parse_sparse_poly(k, "2*s^3+s+4"), (APoly{4, 1, 0, 2}));
  EXPECT_EQ(parse_sparse_poly(k, " 4 + s + 2 * s ^ 3 "), (APoly{4, 1, 0, 2}));
  EXPECT_EQ(parse_sparse_poly(k, "s-1"), (APoly{4, 1}));
  EXPECT_EQ(parse_sparse_poly(k, "s^2+4*s^2"), APoly{});
  EXPECT_EQ(parse_sparse_poly(k, "0"), APoly{});
  EXPECT_EQ(sparse_poly_to_string({4, 1, 0, 2}), "2*s^3+s+4");
  EXPECT_EQ(sparse_poly_to_string({}), "0");
  EXPECT_EQ(sparse_poly_to_string({0, 0, 1}, "t"), "t^2");
  EXPECT_THROW(parse_sparse_poly(k, "5*s"), std::invalid_argument);
  EXPECT_THROW(parse_sparse_poly(k, "s^"), std::invalid_argument);
  EXPECT_THROW(parse_sparse_poly(k, "2*x"), std::invalid_argument);
  EXPECT_THROW(parse_sparse_poly(k, ""), std::invalid_argument);
  // F_4 element codes
  EXPECT_EQ(parse_sparse_poly(Fq::get(4), "3*s+2"), (APoly{2, 3}));
}

TEST(SparsePoly, CanonicalRoundTripRandomized) {
  Rng rng(5);
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 9u}) {
    auto k = Fq::get(q);
    for (int t = 0; t < 100; ++t) {
      APoly f;
      for (int i = 0; i < 6; ++i) f.push_back(k.random(rng));
      PolyRing<Fq>(k).normalize(f);
      auto s = sparse_poly_to_string(f);
      EXPECT_EQ(parse_sparse_poly(k, s), f);
      EXPECT_EQ(sparse_poly_to_string(parse_sparse_poly(k, s)), s);
    }
  }
}

TEST(ModuleSpec, FilesRoundTripBitExact) {
  for (auto name : {"reference_module.json", "rank1_F4.json", "rank1_family.json"}) {
    auto text = slurp(name);
    ASSERT_FALSE(text.empty()) << name;
    EXPECT_EQ(module_spec_to_json(parse_module_spec(text)), text) << name;
  }
  auto ref = slurp("reference_module.json");
  EXPECT_EQ(module_spec_to_json(spec_of(reference_family())), ref);
  auto fam = to_family(parse_module_spec(ref));
  EXPECT_EQ(fam.phiT, reference_family().phiT);
  EXPECT_EQ(fam.name, reference_family().name);
}

TEST(ModuleSpec, FiniteBase) {
  auto phi = to_module(parse_module_spec(slurp("rank1_F4.json")));
  EXPECT_EQ(phi.m(), 2u);
  EXPECT_EQ(phi.rank(), 1);
  EXPECT_EQ(phi.p0().pi, (APoly{0, 1}));
}

TEST(ModuleSpec, Diagnostics) {
  auto where = [](const std::string& text) {
    try {
      parse_module_spec(text);
    } catch (const ModuleParseError& e) {
      return e.where();
    }
    return std::string("accepted");
  };
  EXPECT_EQ(where(slurp("malformed.json")).substr(0, 6), "line 4");
  EXPECT_EQ(where(R"({"q": 6, "base": "rational", "m_or_var": "s", "rank": 1, "phiT": ["0", "1"], "name": ""})"), "field q");
  EXPECT_EQ(where(R"({"q": 3, "base": "rational", "m_or_var": "s", "rank": 2, "phiT": ["0", "1"], "name": ""})"), "field phiT");
  EXPECT_EQ(where(R"({"q": 3, "base": "rational", "m_or_var": "s", "rank": 1, "phiT": ["0", "3*s"], "name": ""})"),
            "field phiT[1]");
  EXPECT_EQ(where(R"({"q": 3, "base": "rational", "m_or_var": "s", "rank": 1, "phiT": ["s", "1"], "name": ""})"),
            "field phiT[0]");
  EXPECT_EQ(where(R"({"q": 3, "base": "finite", "m_or_var": "s", "rank": 1, "phiT": ["0", "1"], "name": ""})"),
            "field m_or_var");
  EXPECT_EQ(where(R"({"q": 3, "base": "finite", "m_or_var": 2, "rank": 1, "phiT": ["0", "1"]})"), "field name");
  EXPECT_EQ(where(R"({"q": 3, "base": "finite", "m_or_var": 2, "rank": 1, "phiT": ["0", "1"], "name": "", "x": 1})"),
            "field x");
  EXPECT_EQ(where(R"({"q": 3, "base": "finite", "m_or_var": 2, "rank": 1, "phiT": ["0", "0"], "name": ""})"),
            "field phiT[1]");
}

TEST(Report, MatchesGolden) {
  auto fam = reference_family();
  auto rep = certify(fam, {});
  EXPECT_EQ(report_to_json(fam.k, rep), slurp("reference_report.json"));
}

TEST(Acceptance, CriteriaAreNumberedOneToTwelve) {
  const auto& all = acceptance_criteria();
  ASSERT_EQ(all.size(), 12u);
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i].id, static_cast<int>(i + 1));
  auto corpus = charpoly_corpus();
  EXPECT_GE(corpus.size(), 20u);
  for (auto& phi : corpus) {
    EXPECT_LE(phi.m(), 4u);
    EXPECT_GE(phi.rank(), 1);
    EXPECT_LE(phi.rank(), 3);
  }
}

TEST(Acceptance, FastCriteriaPass) {
  for (auto& r : run_acceptance({2, 7, 9, 10})) EXPECT_TRUE(r.pass) << format_result(r);
}
