#include <hol/curv/formula.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace hol;
using namespace hol::curv;

namespace {

const Model& e7() {
  static const Model m = rep::build_e7_model();
  return m;
}

const FormulaData& data() {
  static const FormulaData d = build_formula_data(e7());
  return d;
}

std::vector<int> all_basis(const Model& m) {
  std::vector<int> v(m.dim_g());
  for (int a = 0; a < m.dim_g(); ++a) v[a] = a;
  return v;
}

SVecQ random_algebra_element(std::mt19937_64& rng, int dg) { return rep::random_vector(rng, dg); }

}  // namespace

TEST(CurvatureK, BasisSatisfiesBianchi) {
  long failures = 0;
  for (const auto& R : data().basis.R) failures += bianchi_failures(e7().rep, R);
  EXPECT_EQ(failures, 0);
}

TEST(CurvatureK, BasisHasFullRank) { EXPECT_EQ(curvature_rank(data().basis.R), 133); }

TEST(CurvatureK, EquivariantUnderEveryBasisElement) {
  EXPECT_EQ(equivariance_failures(e7(), data().basis, all_basis(e7())), 0);
}

TEST(CurvatureK, LinearInA) {
  std::mt19937_64 rng(11);
  for (int s = 0; s < 3; ++s) {
    SVecQ A = random_algebra_element(rng, e7().dim_g());
    EXPECT_TRUE(curvature_element(e7(), A) == data().basis.combine(A));
  }
  EXPECT_TRUE(curvature_element(e7(), {}).is_zero());
}

TEST(CurvatureK, TensorViewMatchesValues) {
  const auto& R = data().basis.R[7];
  auto T = R.tensor();
  SVecQ flat = R.flatten();
  EXPECT_EQ(static_cast<long>(T.nonzeros()), 2 * static_cast<long>(flat.size()));
}

TEST(CurvatureK, MembershipInK0) {
  const auto& cb = e7().cb;
  EXPECT_FALSE(k0_membership(curvature_element(e7(), {})));
  SVecQ H = regular_semisimple(cb);
  for (int j = 0; j < cb.rank(); ++j) EXPECT_EQ(root_value(cb, j, H), 2);
  EXPECT_TRUE(k0_membership(data().basis.combine(H)));
  // Weyl conjugates of H stay regular and keep full span
  for (int i = 0; i < cb.rank(); ++i) {
    SVecQ sH = reflect(cb, i, H);
    EXPECT_EQ(root_value(cb, i, sH), -2);
    EXPECT_TRUE(k0_membership(data().basis.combine(sH))) << "s_" << i + 1;
  }
  // a single Cartan generator: recorded span
  for (int i = 0; i < cb.rank(); ++i) EXPECT_EQ(span_dimension(data().basis.R[cb.cartan_index(i)]), 131);
}

TEST(SecondCurvature, KernelOfI2WithRank56) {
  std::vector<SecondCurvatureElement> S;
  long failures = 0;
  for (int w = 0; w < e7().dim_v(); ++w) {
    S.push_back(e7_second_curvature_element(e7(), data().basis, {{w, Q(1)}}));
    failures += i2_failures(S.back());
  }
  EXPECT_EQ(failures, 0);
  EXPECT_EQ(second_curvature_rank(S), 56);
}

TEST(SecondCurvature, SlicesAreCurvatureElements) {
  std::mt19937_64 rng(3);
  SVecQ w = rep::random_vector(rng, e7().dim_v());
  auto S = e7_second_curvature_element(e7(), data().basis, w);
  for (int s : {0, 17, 55}) {
    EXPECT_TRUE(S.slices[s] == curvature_element(e7(), e7().circ({{s, Q(1)}}, w)));
    EXPECT_EQ(bianchi_failures(e7().rep, S.slices[s]), 0);
  }
  EXPECT_TRUE(e7_second_curvature_element(e7(), data().basis, {}).is_zero());
}

TEST(Phi2, SymmetricInGSlots) {
  EXPECT_GT(data().phi2.nonzeros(), 0);
  EXPECT_EQ(phi2_symmetry_failures(data().phi2), 0);
}

TEST(Phi2, SkewInVSlotsAndMatchesFormula) {
  auto r = phi2_skew_check(e7(), data().phi2);
  EXPECT_EQ(r.skew_failures, 0);
  EXPECT_EQ(r.table_mismatches, 0);
}

TEST(Phi2, InvariantUnderEveryBasisElement) {
  auto f = phi2_invariance_failures(e7(), data().phi2, all_basis(e7()));
  ASSERT_EQ(f.size(), 133u);
  for (int a = 0; a < 133; ++a) EXPECT_EQ(f[a], 0) << "X_" << a;
}

TEST(Phi2, PerturbedTableIsNotInvariant) {
  Phi2Table t = data().phi2;
  const int low = e7().dim_v() - 1;
  auto& v = t.rows[0].values[pair_index(t.n, 0, low)];
  v = sparse_axpy(v, Q(1), SVecQ{{0, Q(1)}});
  auto f = phi2_invariance_failures(e7(), t, e7().gens);
  long total = 0;
  for (long x : f) total += x;
  EXPECT_GT(total, 0);
}

TEST(Phi2, FirstDerivativeIsAnIsomorphism) {
  EXPECT_EQ(curvature_rank(data().prime), 133);
  // phi2'(e^a) = R_{X^a} with X^a dual to e^a under B
  for (int a : {0, 6, 7, 70, 132}) {
    EXPECT_TRUE(data().prime[a] == data().basis.combine(e7().Binv.rows[a])) << a;
    EXPECT_EQ(bianchi_failures(e7().rep, data().prime[a]), 0);
  }
}

TEST(Phi2, SecondDerivativeIsAnIsomorphism) {
  auto dp = phi2_double_prime(e7(), data().prime);
  long failures = 0;
  for (const auto& e : dp) failures += i2_failures(e);
  EXPECT_EQ(failures, 0);
  EXPECT_EQ(second_curvature_rank(dp), 56);
  // phi2''(e^i) = lambda S_w with <w, .> = e^i
  for (int i : {0, 28, 55}) {
    auto S = e7_second_curvature_element(e7(), data().basis, pairing_dual(e7(), i));
    for (auto& sl : S.slices)
      for (auto& v : sl.values) v = sparse_scaled(v, e7().lambda);
    EXPECT_EQ(dp[i].flatten(), S.flatten()) << i;
  }
}

TEST(Phi2, UniqueInvariantIsInverseKilling) {
  auto ti = weight_zero_invariants(e7());
  EXPECT_EQ(ti.pairs.size(), 175u);
  ASSERT_EQ(ti.solutions.size(), 1u);
  const SVecQ& s = ti.solutions[0];
  // proportional to B^{-1} restricted to the weight-zero pairs
  Q ratio = 0;
  std::vector<Q> dense(ti.pairs.size(), Q(0));
  for (const auto& [k, c] : s) dense[k] = c;
  for (std::size_t k = 0; k < ti.pairs.size(); ++k) {
    const Q b = e7().Binv.at(ti.pairs[k].first, ti.pairs[k].second);
    if (b == 0) {
      EXPECT_EQ(dense[k], 0);
      continue;
    }
    if (ratio == 0) ratio = dense[k] / b;
    EXPECT_EQ(dense[k], ratio * b);
  }
  EXPECT_NE(ratio, 0);
}

TEST(Report, SpaceReportJson) {
  SpaceReport r{"K(e7)", 133L * 1540, curvature_rank(data().basis.R), "formula", {{"bianchi", true}}};
  auto j = r.to_json();
  EXPECT_EQ(j["space"], "K(e7)");
  EXPECT_EQ(j["computed_dim"], 133);
  EXPECT_EQ(j["residual_checks"][0]["status"], "pass");
  EXPECT_TRUE(r.passed());
  r.residual_checks.emplace_back("rank", false);
  EXPECT_FALSE(r.passed());
}
