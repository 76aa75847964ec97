#include <hol/lie/characters.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace hol;
using namespace hol::lie;

namespace {

// Independent oracle: Weyl orbit by breadth-first reflection.
std::set<Weight> weyl_orbit(const RootSystem& rs, const Weight& w) {
  std::set<Weight> seen{w};
  std::vector<Weight> todo{w};
  while (!todo.empty()) {
    Weight x = todo.back();
    todo.pop_back();
    for (int i = 0; i < rs.rank(); ++i) {
      Weight y = x;
      rs.reflect(y, i);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

Character product(const Character& a, const Character& b) {
  Character out;
  for (const auto& [x, m] : a)
    for (const auto& [y, n] : b) out[x + y] += m * n;
  return out;
}

Character sum_of_irreducibles(const Subsystem& sub, const Decomposition& d) {
  Character out;
  for (const auto& [hw, m] : d)
    for (const auto& [w, k] : weight_multiplicities(sub, hw)) out[w] += m * k;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

TEST(RootSystem, ClassicalRootCounts) {
  const std::vector<std::pair<std::string, int>> expected = {
      {"A1", 2}, {"A2", 6}, {"B3", 18}, {"C3", 18}, {"D4", 24}, {"G2", 12},
      {"F4", 48}, {"E6", 72}, {"E7", 126}, {"E8", 240}};
  for (const auto& [name, count] : expected) {
    RootSystem rs = RootSystem::of_type(name);
    EXPECT_EQ(rs.num_roots(), count) << name;
    EXPECT_EQ(rs.num_positive() * 2, count) << name;
  }
}

TEST(RootSystem, E7Basics) {
  RootSystem rs = RootSystem::of_type("E7");
  EXPECT_EQ(rs.num_roots(), 126);
  EXPECT_EQ(rs.dimension(), 133);
  // Closed under negation.
  for (int r = 0; r < rs.num_roots(); ++r) {
    RootCoords n = rs.roots()[r];
    for (auto& x : n) x = -x;
    EXPECT_EQ(rs.root_index(n), rs.negative_of(r));
  }
  // <rho, alpha_i^vee> = 1, and rho is half the sum of positive roots.
  Weight two_rho = rs.zero_weight();
  for (int r = 0; r < rs.num_positive(); ++r) two_rho = two_rho + rs.root_weight(r);
  EXPECT_EQ(two_rho, scaled(rs.rho(), 2));
  // Highest root of E7 is the fundamental weight omega_1.
  EXPECT_EQ(rs.root_weight(rs.highest_root()), rs.fundamental(0));
}

TEST(RootSystem, RootWeightConversionRoundTrips) {
  RootSystem rs = RootSystem::of_type("F4");
  for (int r = 0; r < rs.num_roots(); ++r) {
    auto c = rs.to_root_coords(rs.root_weight(r));
    for (int i = 0; i < rs.rank(); ++i) EXPECT_EQ(c[i], Q(rs.roots()[r][i]));
  }
}

TEST(RootSystem, RejectsNonFiniteType) {
  // Affine A1^(1).
  EXPECT_THROW(validate_cartan({{2, -2}, {-2, 2}}), std::invalid_argument);
  // Hyperbolic.
  EXPECT_THROW(validate_cartan({{2, -3}, {-3, 2}}), std::invalid_argument);
  EXPECT_THROW(validate_cartan({{2, 1}, {1, 2}}), std::invalid_argument);
  EXPECT_THROW(validate_cartan({{2, -1}, {0, 2}}), std::invalid_argument);
  CartanMatrix g2 = validate_cartan({{2, -3}, {-1, 2}});
  EXPECT_EQ(RootSystem(g2).num_roots(), 12);
  EXPECT_THROW(cartan_matrix("X3"), std::invalid_argument);
  EXPECT_THROW(cartan_matrix("E9"), std::invalid_argument);
}

TEST(WeylDimension, KnownModules) {
  RootSystem e7 = RootSystem::of_type("E7");
  EXPECT_EQ(weyl_dimension(e7, e7.fundamental(6)), 56);
  EXPECT_EQ(weyl_dimension(e7, e7.fundamental(0)), 133);
  RootSystem e6 = RootSystem::of_type("E6");
  EXPECT_EQ(weyl_dimension(e6, e6.fundamental(0)), 27);
  RootSystem a1 = RootSystem::of_type("A1");
  EXPECT_EQ(weyl_dimension(a1, {4}), 5);
  EXPECT_THROW(weyl_dimension(e7, scaled(e7.fundamental(0), -1)), std::invalid_argument);
}

TEST(WeightMultiplicities, SlTwoString) {
  RootSystem a1 = RootSystem::of_type("A1");
  Character c = weight_multiplicities(a1, {3});
  Character expected{{{3}, 1}, {{1}, 1}, {{-1}, 1}, {{-3}, 1}};
  EXPECT_EQ(c, expected);
}

TEST(WeightMultiplicities, E7Minuscule) {
  RootSystem e7 = RootSystem::of_type("E7");
  Character c = weight_multiplicities(e7, e7.fundamental(6));
  EXPECT_EQ(c.size(), 56u);
  for (const auto& [w, m] : c) EXPECT_EQ(m, 1);
  auto orbit = weyl_orbit(e7, e7.fundamental(6));
  std::set<Weight> support;
  for (const auto& [w, m] : c) support.insert(w);
  EXPECT_EQ(support, orbit);
}

TEST(WeightMultiplicities, E7AdjointMatchesRoots) {
  RootSystem e7 = RootSystem::of_type("E7");
  Character c = weight_multiplicities(e7, e7.fundamental(0));
  Character expected;
  for (const auto& w : e7.root_weights()) expected[w] += 1;
  expected[e7.zero_weight()] = 7;
  EXPECT_EQ(c, expected);
  EXPECT_EQ(character_dimension(c), 133);
}

TEST(WeightMultiplicities, SumsToWeylDimension) {
  for (std::string name : {"A2", "B3", "C3", "G2", "D4", "F4"}) {
    RootSystem rs = RootSystem::of_type(name);
    for (int i = 0; i < rs.rank(); ++i) {
      Weight w = rs.fundamental(i);
      w[0] += 1;
      EXPECT_EQ(Z(character_dimension(weight_multiplicities(rs, w))), weyl_dimension(rs, w)) << name << format_weight(w);
    }
  }
}

TEST(TensorDecompose, ClebschGordan) {
  RootSystem a1 = RootSystem::of_type("A1");
  Decomposition d = tensor_decompose(a1, {1}, {1});
  Decomposition expected{{{2}, 1}, {{0}, 1}};
  EXPECT_EQ(d, expected);
  EXPECT_EQ(tensor_decompose(a1, {3}, {0}), (Decomposition{{{3}, 1}}));
}

TEST(TensorDecompose, E6TwentySevenSquared) {
  RootSystem e6 = RootSystem::of_type("E6");
  Subsystem full = Subsystem::full(e6);
  Weight w1 = e6.fundamental(0);
  Decomposition d = tensor_decompose(e6, w1, w1);
  EXPECT_EQ(decomposition_dimension(full, d), 729);
  // Independent check: the character of the product equals the sum of the
  // summands' Freudenthal characters.
  Character c = weight_multiplicities(e6, w1);
  EXPECT_EQ(product(c, c), sum_of_irreducibles(full, d));
  EXPECT_EQ(d, tensor_decompose(e6, w1, w1));
  EXPECT_EQ(d.size(), 3u);
}

TEST(TensorDecompose, Commutes) {
  RootSystem b3 = RootSystem::of_type("B3");
  Weight a{1, 0, 1}, b{0, 1, 0};
  EXPECT_EQ(tensor_decompose(b3, a, b), tensor_decompose(b3, b, a));
}

TEST(SymmetricPower, SmallCases) {
  RootSystem a1 = RootSystem::of_type("A1");
  EXPECT_EQ(symmetric_power_decompose(a1, {1}, 2), (Decomposition{{{2}, 1}}));
  EXPECT_THROW(symmetric_power_decompose(a1, {1}, 4), std::invalid_argument);
}

TEST(SymmetricPower, E6SquareAndCube) {
  RootSystem e6 = RootSystem::of_type("E6");
  Subsystem full = Subsystem::full(e6);
  Weight w1 = e6.fundamental(0);
  Decomposition s2 = symmetric_power_decompose(e6, w1, 2);
  EXPECT_EQ(s2.size(), 2u);
  EXPECT_EQ(decomposition_dimension(full, s2), 27 * 28 / 2);
  Decomposition s3 = symmetric_power_decompose(e6, w1, 3);
  EXPECT_EQ(s3.size(), 3u);
  EXPECT_EQ(decomposition_dimension(full, s3), 27 * 28 * 29 / 6);
  // Sym^2 + Lambda^2 = tensor square, in dimension.
  Decomposition l2 = decompose_character(full, exterior_square_character(weight_multiplicities(e6, w1)));
  EXPECT_EQ(decomposition_dimension(full, s2) + decomposition_dimension(full, l2), 729);
}

TEST(RhoShift, ProjectiveLine) {
  RootSystem a1 = RootSystem::of_type("A1");
  EXPECT_TRUE(rho_shift_resolve(a1, {-1}).singular);
  for (int k = 0; k < 5; ++k) {
    RhoShift r = rho_shift_resolve(a1, {k});
    EXPECT_FALSE(r.singular);
    EXPECT_EQ(r.length, 0);
    EXPECT_EQ(r.dominant, Weight{k});
  }
  RhoShift r = rho_shift_resolve(a1, {-2});
  EXPECT_FALSE(r.singular);
  EXPECT_EQ(r.length, 1);
  EXPECT_EQ(r.dominant, Weight{0});
  // Serre duality on P^1: H^1(O(-k)) ~ H^0(O(k-2)).
  for (int k = 2; k < 7; ++k) {
    RhoShift s = rho_shift_resolve(a1, {-k});
    EXPECT_EQ(weyl_dimension(a1, s.dominant), weyl_dimension(a1, {k - 2}));
  }
}

TEST(RhoShift, IdempotentOnDominant) {
  RootSystem e7 = RootSystem::of_type("E7");
  for (int i = 0; i < 7; ++i) {
    RhoShift r = rho_shift_resolve(e7, e7.fundamental(i));
    EXPECT_EQ(r.length, 0);
    EXPECT_EQ(r.dominant, e7.fundamental(i));
  }
  // Longest element: -2 rho resolves to 0 in length 63.
  RhoShift r = rho_shift_resolve(e7, scaled(e7.rho(), -2));
  EXPECT_FALSE(r.singular);
  EXPECT_EQ(r.length, 63);
  EXPECT_EQ(r.dominant, e7.zero_weight());
}

TEST(Levi, E7NodeSevenLevi) {
  RootSystem e7 = RootSystem::of_type("E7");
  Subsystem levi = Subsystem::levi(e7, {6});
  EXPECT_EQ(levi.positive_roots().size(), 36u);  // E6
  // The tangent representation at the base point has highest weight omega_1
  // and is the 27 of E6.
  EXPECT_EQ(weyl_dimension(levi, e7.fundamental(0)), 27);
  EXPECT_EQ(weyl_dimension(levi, e7.fundamental(6)), 1);
}
