#include <hol/bbw/spencer.hpp>

#include <gtest/gtest.h>

using namespace hol;
using namespace hol::bbw;

namespace {

// H^i(P^1, O(n)) as sl2 highest weights; closed form.
CohomologyTable p1_line(int n) {
  CohomologyTable t;
  if (n >= 0) t.add(0, {n}, 1);
  if (n <= -2) t.add(1, {-n - 2}, 1);
  return t;
}

// J^1 O(k) on P^1 is O(k-1) (x) C^2, so L (x) S^m N* = O(k + m(1-k)) (x) S^m C^2:
// cohomology is H^i(O(k + m(1-k))) (x) V(m) by Clebsch-Gordan.
std::map<int, Decomposition> p1_jet_oracle(int k, int m) {
  const RootSystem rs = RootSystem::of_type("A1");
  std::map<int, Decomposition> out;
  for (const auto& [q, dec] : p1_line(k + m * (1 - k)).degrees)
    for (const auto& [w, mult] : dec)
      for (const auto& [x, c] : lie::tensor_decompose(rs, w, {m})) out[q][x] += mult * c;
  return out;
}

}  // namespace

TEST(Parabolic, Dimensions) {
  EXPECT_EQ(parabolic_from_node(RootSystem::of_type("A1"), 0).dim_x(), 1);
  auto e7 = parabolic_from_node(RootSystem::of_type("E7"), 6);
  EXPECT_EQ(e7.dim_x(), 27);
  EXPECT_TRUE(e7.cominuscule());
  EXPECT_EQ(e7.levi.positive_roots().size(), 36u);
  EXPECT_EQ(parabolic_from_node(RootSystem::of_type("E6"), 0).dim_x(), 16);
  EXPECT_FALSE(parabolic_from_node(RootSystem::of_type("E7"), 0).cominuscule());
}

TEST(Parabolic, TangentBundleIsIrreducible) {
  auto par = parabolic_from_node(RootSystem::of_type("E7"), 6);
  auto tx = tangent_bundle(par);
  ASSERT_EQ(tx.summands.size(), 1u);
  EXPECT_EQ(tx.rank(par), 27);
  auto h = kostant_cohomology(par, tx);
  EXPECT_EQ(h.dim(*par.rs, 0), 133);
}

TEST(Kostant, ProjectiveLine) {
  auto par = parabolic_from_node(RootSystem::of_type("A1"), 0);
  EXPECT_TRUE(kostant_cohomology(par, line_bundle(par, {-1})).degrees.empty());
  for (int n = -6; n <= 6; ++n) {
    auto t = kostant_cohomology(par, line_bundle(par, {n}));
    EXPECT_EQ(t.degrees, p1_line(n).degrees) << n;
  }
  // Serre duality: h^1(O(-k)) = h^0(O(k-2)).
  for (int k = 2; k <= 8; ++k) {
    auto a = kostant_cohomology(par, line_bundle(par, {-k}));
    auto b = kostant_cohomology(par, line_bundle(par, {k - 2}));
    EXPECT_EQ(a.dim(*par.rs, 1), b.dim(*par.rs, 0));
  }
}

TEST(Kostant, BorelWeilGivesV) {
  auto par = parabolic_from_node(RootSystem::of_type("E7"), 6);
  auto t = kostant_cohomology(par, line_bundle(par, par.omega));
  EXPECT_EQ(t.dim(*par.rs, 0), 56);
  EXPECT_EQ(t.degrees.size(), 1u);
}

TEST(Conormal, Ranks) {
  auto e7 = parabolic_from_node(RootSystem::of_type("E7"), 6);
  EXPECT_EQ(lie::character_dimension(conormal_character(e7, ConormalVariant::kJet)), 28);
  EXPECT_EQ(lie::character_dimension(conormal_character(e7, ConormalVariant::kEmbedding)), 28);
  auto rs = RootSystem::of_type("A1");
  for (int k = 1; k <= 6; ++k) {
    auto par = parabolic_from_node(rs, 0);
    par.omega = {k};
    EXPECT_EQ(lie::character_dimension(conormal_character(par, ConormalVariant::kEmbedding)), k - 1);
    EXPECT_EQ(lie::character_dimension(conormal_character(par, ConormalVariant::kJet)), 2);
  }
}

TEST(Conormal, WeightMultisetIdentities) {
  for (auto [type, node, k] : {std::tuple{"E7", 6, 1}, std::tuple{"A1", 0, 4}, std::tuple{"E6", 0, 1}}) {
    auto par = parabolic_from_node(RootSystem::of_type(type), node);
    par.omega = lie::scaled(par.omega, k);
    // Embedding: -N* + TX + 0 = weights of V* (x) L.
    Character lhs = par.nil_character;
    lhs[par.rs->zero_weight()] += 1;
    for (const auto& [w, m] : conormal_character(par, ConormalVariant::kEmbedding)) lhs[-w] += m;
    Character rhs;
    for (const auto& [mu, m] : borel_weil_weights(par)) rhs[par.omega - mu] += m;
    EXPECT_EQ(lhs, rhs) << type;
    // Jet: N* (x) L = 0 + TX.
    Character jet;
    for (const auto& [w, m] : conormal_character(par, ConormalVariant::kJet)) jet[w + par.omega] += m;
    Character expect = par.nil_character;
    expect[par.rs->zero_weight()] += 1;
    EXPECT_EQ(jet, expect) << type;
  }
}

TEST(Conormal, RefusesNonCominuscule) {
  auto par = parabolic_from_node(RootSystem::of_type("E7"), 0);
  EXPECT_THROW(conormal_character(par, ConormalVariant::kJet), std::invalid_argument);
}

TEST(Twisted, E7ConormalTable) {
  auto cb = rep::ChevalleyBasis::of_type("E7");
  auto v = rep::build_minuscule(cb, 6);
  auto par = parabolic_from_node(cb.roots(), 6);
  const auto& rs = cb.roots();
  auto run = [&](int k) {
    return twisted_conormal_cohomology(par, k, ConormalVariant::kJet,
                                       h0_frobenius(rs, par, jet_twisted_module(cb, v, par, k)));
  };
  auto c1 = run(1);
  ASSERT_TRUE(c1.exact);
  EXPECT_EQ(c1.dim(rs, 0), 134);
  EXPECT_EQ(c1.at(0), (Decomposition{{rs.zero_weight(), 1}, {rs.fundamental(0), 1}}));
  EXPECT_EQ(c1.degrees.size(), 1u);
  auto c2 = run(2);
  ASSERT_TRUE(c2.exact);
  EXPECT_EQ(c2.dim(rs, 0), 0);
  EXPECT_EQ(c2.dim(rs, 1), 0);
  auto c3 = run(3);
  ASSERT_TRUE(c3.exact);
  EXPECT_EQ(c3.dim(rs, 0), 0);
  EXPECT_EQ(c3.at(1), (Decomposition{{rs.fundamental(0), 1}}));
  EXPECT_EQ(c3.dim(rs, 1), 133);
}

TEST(Twisted, E7GradedBoundNeedsFrobeniusOnlyForK3) {
  auto par = parabolic_from_node(RootSystem::of_type("E7"), 6);
  EXPECT_TRUE(twisted_conormal_cohomology(par, 1, ConormalVariant::kJet).exact);
  EXPECT_TRUE(twisted_conormal_cohomology(par, 2, ConormalVariant::kJet).exact);
  EXPECT_FALSE(twisted_conormal_cohomology(par, 3, ConormalVariant::kJet).exact);
}

TEST(Twisted, EulerCharacteristicMatchesBorelRoute) {
  for (auto [type, node] : {std::pair{"E7", 6}, std::pair{"E6", 0}, std::pair{"A1", 0}, std::pair{"D5", 0}}) {
    auto par = parabolic_from_node(RootSystem::of_type(type), node);
    for (auto variant : {ConormalVariant::kJet, ConormalVariant::kEmbedding})
      for (int k = 0; k <= 3; ++k) {
        auto graded = graded_cohomology(par, twisted_conormal_pieces(par, k, variant));
        auto borel = euler_via_borel(*par.rs, twisted_conormal_character(par, k, variant));
        EXPECT_EQ(graded.euler(), borel) << type << " k=" << k;
      }
  }
}

TEST(Twisted, ProjectiveLineMatchesClosedForm) {
  auto cb = rep::ChevalleyBasis::of_type("A1");
  const auto& rs = cb.roots();
  for (int k = 1; k <= 5; ++k) {
    auto v = rep::build_sl2_irrep(cb, k);
    auto par = parabolic_from_node(rs, 0);
    par.omega = {k};
    for (int m = 0; m <= 3; ++m) {
      auto h0 = h0_frobenius(rs, par, jet_twisted_module(cb, v, par, m));
      auto t = twisted_conormal_cohomology(par, m, ConormalVariant::kJet, h0);
      EXPECT_TRUE(t.exact);
      EXPECT_EQ(t.degrees, p1_jet_oracle(k, m)) << "k=" << k << " m=" << m;
    }
  }
}

TEST(Twisted, FrobeniusAgreesWhereGradedIsExact) {
  auto cb = rep::ChevalleyBasis::of_type("E7");
  auto v = rep::build_minuscule(cb, 6);
  auto par = parabolic_from_node(cb.roots(), 6);
  for (int k = 0; k <= 2; ++k) {
    auto t = twisted_conormal_cohomology(par, k, ConormalVariant::kJet);
    ASSERT_TRUE(t.exact);
    EXPECT_EQ(h0_frobenius(cb.roots(), par, jet_twisted_module(cb, v, par, k)), t.at(0)) << k;
  }
}

TEST(Twisted, EmbeddingVariantDoesNotGiveTheAlgebra) {
  auto par = parabolic_from_node(RootSystem::of_type("E7"), 6);
  auto t = twisted_conormal_cohomology(par, 1, ConormalVariant::kEmbedding);
  EXPECT_NE(t.dim(*par.rs, 0), 134);
}

TEST(Twisted, RefusesLargeK) {
  auto par = parabolic_from_node(RootSystem::of_type("E7"), 6);
  EXPECT_THROW(twisted_conormal_pieces(par, 4, ConormalVariant::kJet), std::invalid_argument);
}

TEST(Spencer, Sl2Oracles) {
  auto cb = rep::ChevalleyBasis::of_type("A1");
  struct Expect {
    int k, g1, K, image, h1;
  };
  for (auto e : {Expect{1, 6, 4, 4, 0}, Expect{2, 3, 9, 9, 0}, Expect{3, 0, 8, 0, 8}}) {
    auto r = spencer_cross_check(cb, rep::build_sl2_irrep(cb, e.k), 0);
    EXPECT_TRUE(r.passed()) << e.k;
    EXPECT_EQ(r.g_dim, 4);
    EXPECT_EQ(r.g1_bruteforce, e.g1) << e.k;
    EXPECT_EQ(r.h0_s2, e.g1) << e.k;
    EXPECT_EQ(r.k_bruteforce, e.K) << e.k;
    EXPECT_EQ(r.spencer_image, e.image) << e.k;
    EXPECT_EQ(r.h1_s3, e.h1) << e.k;
  }
}
