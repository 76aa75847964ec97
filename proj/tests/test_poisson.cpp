#include <hol/poisson/jet.hpp>
#include <hol/poisson/schur.hpp>

#include <gtest/gtest.h>

using namespace hol;
using namespace hol::poisson;

namespace {

const Model& e7() {
  static const Model m = rep::build_e7_model();
  return m;
}

const curv::FormulaData& data() {
  static const curv::FormulaData d = curv::build_formula_data(e7());
  return d;
}

WPoint point(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_point(e7(), rng);
}

/// p with p# = H, i.e. p = B(H, .).
WPoint dual_point(const SVecQ& H) {
  WPoint pt = zero_point(e7());
  pt.p = to_dense(e7().B.left(H), e7().dim_g());
  return pt;
}

PolyObservable random_poly(std::mt19937_64& rng, int terms) {
  const int dg = e7().dim_g(), n = e7().dim_v();
  std::uniform_int_distribution<int> var(0, dg + n - 1), deg(0, 2), coef(-5, 5);
  PolyObservable f(dg, n);
  for (int t = 0; t < terms; ++t) {
    PolyObservable::Monomial mono;
    for (int d = deg(rng); d > 0; --d) mono.push_back(var(rng));
    f.add(mono, Q(coef(rng)));
  }
  return f;
}

}  // namespace

TEST(Bracket, LieAlgebraPartIsLiePoisson) {
  const WPoint pt = point(1);
  PointState st(PhiMap::phi2(e7()), pt);
  const auto& cb = e7().cb;
  for (int a : {0, 7, 40, 100})
    for (int b : {3, 7, 69, 132}) {
      Q expect = 0;
      for (const auto& [c, v] : cb.bracket(a, b)) expect += Q(v) * pt.p[c];
      EXPECT_EQ(st.bracket(w_basis(e7(), a), w_basis(e7(), b)), expect);
    }
}

TEST(Bracket, MixedPartIsRepresentationPairing) {
  const WPoint pt = point(2);
  PointState st(PhiMap::phi2(e7()), pt);
  const int dg = e7().dim_g();
  for (int a : {0, 8, 90})
    for (int j : {0, 20, 55}) {
      // nu(X_a e_j)
      Q expect = 0;
      for (const auto& [i, v] : e7().rep[a].column(j)) expect += v * pt.nu[i];
      EXPECT_EQ(st.bracket(w_basis(e7(), a), w_basis(e7(), dg + j)), expect);
      EXPECT_EQ(st.bracket(w_basis(e7(), dg + j), w_basis(e7(), a)), -expect);
    }
}

TEST(Bracket, VPartMatchesTableContraction) {
  const WPoint pt = point(3);
  for (const Q& tau : {Q(0), Q(5, 2)}) {
    PhiMap phi = PhiMap::phi2(e7(), tau);
    PointState st(phi, pt);
    const std::vector<Q> ps = to_dense(st.psharp(), e7().dim_g());
    DenseQ M = phi_contract(data().phi2, phi, ps, ps);
    const int n = e7().dim_v();
    long mismatches = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (st.phi_matrix()[i][j] != M[i][j] + tau * e7().pairing.at(i, j)) ++mismatches;
    EXPECT_EQ(mismatches, 0);
    EXPECT_EQ(st.bracket(w_basis(e7(), 133), w_basis(e7(), 133 + 55)), st.phi_matrix()[0][55]);
  }
}

TEST(Bracket, AntisymmetryAndLeibnizOnPolynomials) {
  std::mt19937_64 rng(4);
  PointState st(PhiMap::phi2(e7(), Q(2)), point(4));
  for (int s = 0; s < 5; ++s) {
    PolyObservable f = random_poly(rng, 6), g = random_poly(rng, 6), h = random_poly(rng, 6);
    EXPECT_EQ(poisson_bracket(f, g, st), -poisson_bracket(g, f, st));
    const Q lhs = poisson_bracket(f, g * h, st);
    const Q rhs = poisson_bracket(f, g, st) * h.evaluate(st.point()) + g.evaluate(st.point()) * poisson_bracket(f, h, st);
    EXPECT_EQ(lhs, rhs);
  }
  PolyObservable one = PolyObservable::constant(e7().dim_g(), e7().dim_v(), Q(7));
  EXPECT_EQ(poisson_bracket(one, random_poly(rng, 4), st), 0);
}

TEST(Jacobi, LiePoissonTriples) {
  PointState st(PhiMap::phi2(e7()), point(5));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    LinearObs f = random_observable(rng, 133, 56, 6, 0), g = random_observable(rng, 133, 56, 6, 0),
              h = random_observable(rng, 133, 56, 6, 0);
    EXPECT_EQ(jacobi_residual(st, f, g, h), 0);
  }
}

TEST(Jacobi, HoldsForPhi2AndTau) {
  for (const Q& tau : {Q(0), Q(1), Q(-3, 2)}) {
    auto r = jacobi_sweep(PhiMap::phi2(e7(), tau), 4, 10, 17);
    EXPECT_EQ(r.evaluations, 40);
    EXPECT_TRUE(r.passed()) << "tau = " << tau << ", " << r.nonzero << " nonzero";
  }
  EXPECT_EQ(tau_invariance_failures(PhiMap::phi2(e7(), Q(3))), 0);
}

TEST(Jacobi, CorruptedPhi2Fails) {
  auto r = jacobi_sweep(corrupted_phi2(e7()), 4, 10, 17);
  EXPECT_GT(r.nonzero, 0);
  EXPECT_GE(r.first_failing_point, 0);
}

TEST(Admissibility, OriginIsFlat) {
  PointState st(PhiMap::phi2(e7()), zero_point(e7()));
  EXPECT_TRUE(st.dphi_element().is_zero());
  auto c = check_point(st);
  EXPECT_TRUE(c.admissible);
  EXPECT_FALSE(c.in_u0);
  EXPECT_EQ(c.span_dim, 0);
}

TEST(Admissibility, RegularSemisimplePoint) {
  const SVecQ H = curv::regular_semisimple(e7().cb);
  PointState st(PhiMap::phi2(e7()), dual_point(H));
  EXPECT_EQ(st.psharp(), H);
  CurvatureElement expect = curv::curvature_element(e7(), sparse_scaled(H, Q(2)));
  EXPECT_TRUE(st.dphi_element() == expect);
  auto c = check_point(st);
  EXPECT_TRUE(c.admissible);
  EXPECT_TRUE(c.in_u0);
}

TEST(Admissibility, RandomPointAndNegativeControl) {
  const WPoint pt = point(6);
  auto c = check_point(PointState(PhiMap::phi2(e7(), Q(4)), pt));
  EXPECT_TRUE(c.admissible);
  EXPECT_TRUE(c.in_u0);
  EXPECT_EQ(c.span_dim, 133);
  EXPECT_FALSE(check_point(PointState(corrupted_phi2(e7()), pt)).admissible);
}

TEST(Rank, OriginOfLiePoisson) {
  auto r = poisson_rank(PointState(PhiMap::phi2(e7()), zero_point(e7())));
  EXPECT_EQ(r.rank, 0);
  EXPECT_EQ(r.symmetry_dim, 189);
}

TEST(Rank, GenericPointsHaveOddCorank) {
  for (std::uint64_t s : {7, 8}) {
    auto r = poisson_rank(PointState(PhiMap::phi2(e7()), point(s)));
    EXPECT_TRUE(r.antisymmetric);
    EXPECT_EQ(r.rank % 2, 0);
    EXPECT_EQ(r.rank, 182);
    EXPECT_EQ(r.symmetry_dim, 7);
  }
  auto t = poisson_rank(PointState(PhiMap::phi2(e7(), Q(3)), point(9)));
  EXPECT_EQ(t.rank % 2, 0);
  EXPECT_GE(t.symmetry_dim, 1);
}

TEST(Jet, OriginIsFlat) {
  auto [jet, r] = jet_verify(PhiMap::phi2(e7()), data(), zero_point(e7()), 4, 2, 1);
  EXPECT_TRUE(jet.curvature.is_zero());
  EXPECT_FALSE(r.center_in_u0);
  EXPECT_TRUE(r.passed());
}

TEST(Jet, RandomCenterSatisfiesStructureEquations) {
  for (const Q& tau : {Q(0), Q(3)}) {
    auto [jet, r] = jet_verify(PhiMap::phi2(e7(), tau), data(), point(10), 6, 3, 2);
    EXPECT_TRUE(r.center_in_u0);
    EXPECT_EQ(r.curvature_span, 133);
    EXPECT_EQ(r.torsion_nonzero, 0);
    EXPECT_EQ(r.curvature_mismatch, 0);
    EXPECT_EQ(r.a_equation_order1 + r.b_equation_order1, 0);
    EXPECT_EQ(r.a_equation_order2 + r.b_equation_order2 + r.coframe_jacobi_order2, 0);
    EXPECT_EQ(r.c_not_tau + r.c_not_constant, 0);
    EXPECT_EQ(r.sampled_pairs, 6);
    EXPECT_EQ(r.sampled_triples, 3);
    EXPECT_EQ(jet.first.size(), 189u);
  }
}

TEST(Jet, CorruptedPhi2Fails) {
  auto [jet, r] = jet_verify(corrupted_phi2(e7()), data(), point(10), 2, 1, 2);
  EXPECT_GT(r.curvature_mismatch, 0);
  EXPECT_FALSE(r.passed());
}

TEST(Schur, IrreducibleOraclesHaveNoSolutions) {
  auto a1 = rep::ChevalleyBasis::of_type("A1");
  auto a2 = rep::ChevalleyBasis::of_type("A2");
  auto c2 = rep::build_sl2_irrep(a1, 1), s2 = rep::build_sl2_irrep(a1, 2), s3 = rep::build_sl2_irrep(a1, 3);
  auto v3 = rep::build_minuscule(a2, 0), v3d = rep::build_minuscule(a2, 1), ad = rep::build_adjoint(a2);
  const std::vector<std::pair<const rep::MatrixRep*, const rep::MatrixRep*>> oracles = {
      {&c2, &c2}, {&c2, &s2}, {&s2, &s3}, {&v3, &v3}, {&v3, &v3d}, {&v3, &ad}, {&ad, &ad}};
  for (const auto& [V, W] : oracles) {
    auto r = schur_solver(*V, *W);
    EXPECT_EQ(r.solutions.dim(), 0) << V->name << " -> " << W->name;
    EXPECT_EQ(r.solutions.ambient, static_cast<long>(V->dim) * W->dim);
    EXPECT_EQ(r.redundancy_failures, 0);
  }
}

TEST(Schur, TrivialActionAdmitsAllMaps) {
  auto a1 = rep::ChevalleyBasis::of_type("A1");
  auto t = rep::build_sl2_irrep(a1, 0), c2 = rep::build_sl2_irrep(a1, 1);
  EXPECT_THROW(schur_solver(t, t), std::invalid_argument);
  EXPECT_EQ(schur_solver(t, t, {}, true).solutions.dim(), 1);
  EXPECT_EQ(schur_solver(t, c2, {}, true).solutions.dim(), 2);
}

TEST(Schur, ReducibleSourceHasSolutions) {
  // C^2 + C: maps killing C^2 and sending the trivial line anywhere in C^2
  auto a1 = rep::ChevalleyBasis::of_type("A1");
  auto c2 = rep::build_sl2_irrep(a1, 1);
  rep::MatrixRep sum = c2;
  sum.name = "C2+C";
  sum.dim = 3;
  for (auto& m : sum.mats) {
    rep::SparseMatrix big(3, 3);
    for (int j = 0; j < 2; ++j)
      for (const auto& [i, v] : m.column(j)) big.add(i, j, v);
    m = big;
  }
  auto r = schur_solver(sum, c2);
  EXPECT_EQ(r.solutions.dim(), 2);
  EXPECT_EQ(r.redundancy_failures, 0);
}

TEST(Schur, CapRefusal) {
  auto a2 = rep::ChevalleyBasis::of_type("A2");
  auto ad = rep::build_adjoint(a2);
  EXPECT_THROW(schur_solver(ad, ad, curv::Caps{10}), curv::CapExceeded);
}
