#include <hol/rep/cache.hpp>
#include <hol/rep/checks.hpp>

#include <gtest/gtest.h>

using namespace hol;
using namespace hol::rep;

namespace {

const Model& e7() {
  static const Model m = build_e7_model();
  return m;
}

int find_weight(const MatrixRep& rep, const lie::Weight& w) {
  for (int v = 0; v < rep.dim; ++v)
    if (rep.weights[v] == w) return v;
  return -1;
}

}  // namespace

TEST(Chevalley, A1IsStandardTriple) {
  auto cb = ChevalleyBasis::of_type("A1");
  ASSERT_EQ(cb.dimension(), 3);
  // basis h, E, F
  EXPECT_EQ(cb.bracket(0, 1), (SVecL{{1, 2}}));
  EXPECT_EQ(cb.bracket(0, 2), (SVecL{{2, -2}}));
  EXPECT_EQ(cb.bracket(1, 2), (SVecL{{0, -1}}));
  EXPECT_EQ(cb.jacobi_failures(), 0);
  auto B = killing_form(cb);
  EXPECT_EQ(B[0][0], 8);
  EXPECT_EQ(B[1][2], -4);
  EXPECT_EQ(B[1][1], 0);
}

TEST(Chevalley, A2AntisymmetricUnitConstants) {
  auto cb = ChevalleyBasis::of_type("A2");
  const auto& rs = cb.roots();
  int nonzero = 0;
  for (int a = 0; a < rs.num_roots(); ++a)
    for (int b = 0; b < rs.num_roots(); ++b) {
      EXPECT_EQ(cb.N(a, b), -cb.N(b, a));
      if (cb.N(a, b) != 0) {
        EXPECT_EQ(std::abs(cb.N(a, b)), 1);
        ++nonzero;
      }
    }
  EXPECT_EQ(nonzero, 12);
  EXPECT_EQ(cb.jacobi_failures(), 0);
}

TEST(Chevalley, E7TableIsConsistent) {
  const auto& cb = e7().cb;
  const auto& rs = cb.roots();
  EXPECT_EQ(cb.jacobi_failures(), 0);
  for (int a = 0; a < rs.num_roots(); ++a)
    for (int b = 0; b < rs.num_roots(); ++b) {
      EXPECT_EQ(cb.N(a, b), -cb.N(b, a));
      bool is_root = rs.root_index(lie::operator+(rs.roots()[a], rs.roots()[b])) >= 0;
      EXPECT_EQ(cb.N(a, b) != 0, is_root);
      if (is_root) {
        EXPECT_EQ(std::abs(cb.N(a, b)), 1);
      }
    }
  for (int a = 0; a < rs.num_positive(); ++a)
    if (rs.height(a) > 1) {
      auto [i, b] = cb.extraspecial(a);
      EXPECT_EQ(cb.N(i, b), 1);
    }
}

TEST(Chevalley, OtherSimplyLacedTypesSatisfyJacobi) {
  for (const char* t : {"A3", "D4", "D5", "E6"}) EXPECT_EQ(ChevalleyBasis::of_type(t).jacobi_failures(), 0) << t;
}

TEST(Chevalley, RejectsNonSimplyLaced) {
  EXPECT_THROW(ChevalleyBasis::of_type("B3"), std::invalid_argument);
  EXPECT_THROW(ChevalleyBasis::of_type("G2"), std::invalid_argument);
}

TEST(Adjoint, E7DimensionAndRelations) {
  const auto& m = e7();
  EXPECT_EQ(m.adjoint.dim, 133);
  EXPECT_EQ(commutation_failures(m.cb, m.adjoint), 0);
  EXPECT_TRUE(weight_basis_consistent(m.cb, m.adjoint));
}

TEST(Adjoint, KillingCartanBlockMatchesRootSum) {
  // Independent oracle: tr(ad h_i ad h_j) = sum over roots of a(h_i) a(h_j),
  // which equals 2 * 18 * a_ij for E7.
  const auto& m = e7();
  const auto& rs = m.cb.roots();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      long s = 0;
      for (const auto& w : rs.root_weights()) s += static_cast<long>(w[i]) * w[j];
      EXPECT_EQ(m.B.at(i, j), Q(s));
      EXPECT_EQ(m.B.at(i, j), Q(36 * rs.cartan()(i, j)));
    }
}

TEST(Adjoint, KillingFormInvariantAndNondegenerate) {
  const auto& m = e7();
  EXPECT_EQ(killing_invariance_failures(m.cb, m.B), 0);
  for (int a = 0; a < 133; ++a)
    for (int b = 0; b < 133; ++b) EXPECT_EQ(m.B.at(a, b), m.B.at(b, a));
  EXPECT_EQ(dense_rank(m.B.dense()), 133);
}

TEST(Minuscule, A1Standard) {
  auto cb = ChevalleyBasis::of_type("A1");
  auto rep = build_minuscule(cb, 0);
  EXPECT_EQ(rep.dim, 2);
  EXPECT_EQ(commutation_failures(cb, rep), 0);
}

TEST(Minuscule, E7FiftySix) {
  const auto& m = e7();
  EXPECT_EQ(m.rep.dim, 56);
  std::set<lie::Weight> distinct(m.rep.weights.begin(), m.rep.weights.end());
  EXPECT_EQ(distinct.size(), 56u);
  EXPECT_EQ(m.rep.weights[0], m.cb.roots().fundamental(6));
  EXPECT_EQ(commutation_failures(m.cb, m.rep), 0);
  EXPECT_TRUE(weight_basis_consistent(m.cb, m.rep));
}

TEST(Minuscule, E6TwentySeven) {
  auto cb = ChevalleyBasis::of_type("E6");
  auto rep = build_minuscule(cb, 0);
  EXPECT_EQ(rep.dim, 27);
  EXPECT_EQ(commutation_failures(cb, rep), 0);
}

TEST(Minuscule, RejectsNonMinusculeNode) {
  EXPECT_THROW(build_minuscule(e7().cb, 0), std::invalid_argument);
  EXPECT_THROW(build_minuscule(ChevalleyBasis::of_type("D4"), 1), std::invalid_argument);
}

TEST(Minuscule, CorruptedMatrixIsDetected) {
  MatrixRep bad = e7().rep;
  int a = e7().cb.root_element(3);
  bad.mats[a] = bad.mats[a].scaled(Q(2));
  EXPECT_GT(commutation_failures(e7().cb, bad), 0);
}

TEST(Sl2, SymmetricPowers) {
  auto cb = ChevalleyBasis::of_type("A1");
  for (int k = 0; k <= 5; ++k) {
    auto rep = build_sl2_irrep(cb, k);
    EXPECT_EQ(rep.dim, k + 1);
    EXPECT_EQ(commutation_failures(cb, rep), 0) << k;
  }
}

TEST(Pairing, Sl2AreaForm) {
  auto cb = ChevalleyBasis::of_type("A1");
  auto w = invariant_symplectic(build_sl2_irrep(cb, 1), generator_indices(cb));
  EXPECT_EQ(w.at(0, 1), 1);
  EXPECT_EQ(w.at(1, 0), -1);
  EXPECT_EQ(w.at(0, 0), 0);
}

TEST(Pairing, Sl2SymSquareIsOrthogonal) {
  auto cb = ChevalleyBasis::of_type("A1");
  auto rep = build_sl2_irrep(cb, 2);
  EXPECT_EQ(invariant_bilinear_forms(rep, generator_indices(cb), false).size(), 0u);
  EXPECT_EQ(invariant_bilinear_forms(rep, generator_indices(cb), true).size(), 1u);
  EXPECT_THROW(invariant_symplectic(rep, generator_indices(cb)), std::runtime_error);
}

TEST(Pairing, E7UniqueAndInvariant) {
  const auto& m = e7();
  EXPECT_EQ(invariant_bilinear_forms(m.rep, m.gens, false).size(), 1u);
  EXPECT_EQ(m.pairing.at(0, lowest_index(m.rep)), 1);
  for (int u = 0; u < 56; ++u)
    for (int v = 0; v < 56; ++v) {
      EXPECT_EQ(m.pairing.at(u, v), -m.pairing.at(v, u));
      EXPECT_TRUE(m.pairing.at(u, v).get_den() == 1);
    }
  EXPECT_EQ(dense_rank(m.pairing.dense()), 56);
  EXPECT_EQ(pairing_invariance_failures(m.rep, m.pairing), 0);
}

TEST(Circ, SymmetricAndEquivariant) {
  const auto& m = e7();
  EXPECT_EQ(circ_symmetry_failures(m.circ), 0);
  EXPECT_EQ(circ_equivariance_failures(m.cb, m.rep, m.circ), 0);
}

TEST(Circ, DefiningRelationOnSamples) {
  const auto& m = e7();
  std::mt19937_64 rng(11);
  for (int k = 0; k < 5; ++k) {
    SVecQ A = random_vector(rng, 133), u = random_vector(rng, 56), v = random_vector(rng, 56);
    Q lhs = sparse_dot(m.pairing.left(m.rep.act(A).apply(u)), v);
    EXPECT_EQ(lhs, m.lambda * m.B(A, m.circ(u, v)));
  }
}

TEST(Circ, HighestWeightProducts) {
  const auto& m = e7();
  const auto& rs = m.cb.roots();
  // 2*omega7 is not a weight of g, so top o top vanishes.
  EXPECT_TRUE(m.circ(0, 0).empty());
  // top o v with weight(v) = theta - omega7 is a nonzero multiple of E_theta.
  int v = find_weight(m.rep, lie::operator-(rs.root_weight(rs.highest_root()), rs.fundamental(6)));
  ASSERT_GE(v, 0);
  const SVecQ& x = m.circ(0, v);
  ASSERT_EQ(x.size(), 1u);
  EXPECT_EQ(x[0].first, m.cb.root_element(rs.highest_root()));
}

TEST(Mu, ValueAndIdentity) {
  const auto& m = e7();
  EXPECT_EQ(m.mu, Q(-1, 72));
  auto r = quartic_random(m, m.circ, 100, 2024);
  EXPECT_EQ(r.tested, 100);
  EXPECT_EQ(r.failures, 0);
  auto s = quartic_sweep(m, m.circ);
  EXPECT_GT(s.tested, 0);
  EXPECT_GT(s.zero_rhs, 0);
  EXPECT_EQ(s.failures, 0);
}

TEST(Mu, AsPrintedSignPatternHasNoSolution) {
  const auto& m = e7();
  EXPECT_THROW(derive_mu(m.rep, m.pairing, m.circ, m.B, QuarticForm::kAsPrinted), std::runtime_error);
}

TEST(Mu, PerturbedCircFails) {
  const auto& m = e7();
  CircProduct bad = perturbed_circ(m);
  EXPECT_GT(quartic_random(m, bad, 20, 1).failures, 0);
  EXPECT_GT(quartic_sweep(m, bad).failures, 0);
}

TEST(Cache, RoundTripIsBitExact) {
  const auto& m = e7();
  std::string first = model_to_json(m, 6).dump();
  Model back = model_from_json(nlohmann::json::parse(first));
  std::string second = model_to_json(back, 6).dump();
  EXPECT_EQ(first, second);
  EXPECT_EQ(back.mu, m.mu);
  EXPECT_EQ(back.circ.table, m.circ.table);
}

TEST(Cache, RationalsAreDecimalStringPairs) {
  EXPECT_EQ(rational_json(Q(-1, 72)).dump(), R"({"d":"72","n":"-1"})");
  EXPECT_EQ(rational_from_json(rational_json(Q(5))), Q(5));
  Q big = rational(Z("123456789012345678901234567890"), Z(7));
  EXPECT_EQ(rational_from_json(rational_json(big)), big);
  EXPECT_THROW(rational_from_json(nlohmann::json(3)), std::runtime_error);
  EXPECT_THROW(rational_from_json(nlohmann::json{{"n", "1"}, {"d", "0"}}), std::runtime_error);
  EXPECT_THROW(rational_from_json(nlohmann::json{{"n", "x"}, {"d", "1"}}), std::runtime_error);
}

TEST(Cache, BuildHitAndRebuild) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "hol_cache_test";
  fs::remove_all(dir);
  auto a = load_or_build(dir.string(), "A1", 0);
  EXPECT_EQ(a.status, CacheStatus::built);
  EXPECT_TRUE(fs::exists(a.path));
  auto b = load_or_build(dir.string(), "A1", 0);
  EXPECT_EQ(b.status, CacheStatus::hit);
  EXPECT_EQ(model_to_json(a.model, 0).dump(), model_to_json(b.model, 0).dump());
  {
    std::ofstream out(a.path, std::ios::trunc);
    out << "{\"version\": 2, \"algebra\": ";
  }
  auto c = load_or_build(dir.string(), "A1", 0);
  EXPECT_EQ(c.status, CacheStatus::rebuilt);
  EXPECT_FALSE(c.warning.empty());
  EXPECT_EQ(load_or_build(dir.string(), "A1", 0).status, CacheStatus::hit);
  fs::remove_all(dir);
}

TEST(Cache, RejectsTamperedConstants) {
  auto j = model_to_json(e7(), 6);
  j["n_constants"][0][2] = -j["n_constants"][0][2].get<int>();
  EXPECT_THROW(model_from_json(j), std::runtime_error);
  auto k = model_to_json(e7(), 6);
  k["version"] = 99;
  EXPECT_THROW(model_from_json(k), std::runtime_error);
}
