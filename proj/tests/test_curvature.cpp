#include <hol/curv/bruteforce.hpp>
#include <hol/rep/matrix_rep.hpp>

#include <gtest/gtest.h>

using namespace hol;
using namespace hol::curv;

namespace {

struct Dims {
  int g1, K, image, K1, P1;
};

Dims compute(const MatrixAlgebra& g) {
  auto g1 = prolongation(g);
  auto K = curvature_space(g);
  auto sp = spencer_image(g, g1, K);
  EXPECT_TRUE(sp.contained_in_K) << g.name;
  auto K1 = second_curvature(g, K);
  auto P1 = p1_space(g);
  EXPECT_EQ(p1_second_bianchi_failures(g, P1), 0) << g.name;
  return {g1.dim(), K.dim(), sp.image_dim, K1.dim(), P1.dim()};
}

MatrixAlgebra sym(int k, bool with_identity) {
  static auto cb = rep::ChevalleyBasis::of_type("A1");
  return rep_image(rep::build_sl2_irrep(cb, k), with_identity);
}

}  // namespace

TEST(BruteForce, GeneralLinearClosedForms) {
  for (int n = 2; n <= 3; ++n) {
    auto g = gl_algebra(n);
    auto d = compute(g);
    EXPECT_EQ(d.g1, n * n * (n + 1) / 2);
    // K(gl(n)) = ker(V (x) V* (x) L^2 V* -> V (x) L^3 V*), the map being onto
    EXPECT_EQ(d.K, n * n * n * (n - 1) / 2 - n * n * (n - 1) * (n - 2) / 6);
    EXPECT_EQ(d.image, d.K);  // gl(n) has no torsion-free curvature obstruction
  }
}

TEST(BruteForce, OrthogonalClosedForms) {
  for (int n = 3; n <= 4; ++n) {
    auto d = compute(so_algebra(n));
    EXPECT_EQ(d.g1, 0);
    EXPECT_EQ(d.K, n * n * (n * n - 1) / 12);
    EXPECT_EQ(d.image, 0);
    EXPECT_EQ(d.K1, n * n * (n * n - 1) * (n + 2) / 24);
  }
}

TEST(BruteForce, SpecialLinearPlane) {
  auto d = compute(sym(1, false));
  EXPECT_EQ(d.g1, 2 * 2 * 3 / 2 - 2);
  EXPECT_EQ(d.K, 3);
  EXPECT_EQ(d.image, 3);
}

TEST(BruteForce, SymmetricPowers) {
  // so(3) = sym^2 of sl2 on C^3
  auto a = compute(sym(2, false)), b = compute(so_algebra(3));
  EXPECT_EQ(std::tie(a.g1, a.K, a.image, a.K1, a.P1), std::tie(b.g1, b.K, b.image, b.K1, b.P1));
  auto c = compute(sym(2, true));
  EXPECT_EQ(c.g1, 3);
  EXPECT_EQ(c.K, 9);
  EXPECT_EQ(c.image, 9);
  auto d = compute(sym(3, true));
  EXPECT_EQ(d.g1, 0);
  EXPECT_EQ(d.K, 8);
  EXPECT_EQ(d.image, 0);
  auto e = compute(sym(3, false));
  EXPECT_EQ(e.K, 3);
  // Berger: no proper torsion-free holonomy on sym^4 of sl2 beyond a line of curvature
  auto f = compute(sym(4, true));
  EXPECT_EQ(f.g1, 0);
  EXPECT_LE(f.K, 1);
}

TEST(BruteForce, ZeroAlgebra) {
  auto d = compute(zero_algebra(3));
  EXPECT_EQ(d.g1 + d.K + d.image + d.K1 + d.P1, 0);
}

TEST(BruteForce, BianchiMembership) {
  auto g = so_algebra(3);
  auto K = curvature_space(g);
  for (const auto& x : K.basis) EXPECT_TRUE(satisfies_bianchi(g, x));
  // single-entry 2-forms: a rotation in the plane of its own pair passes, the rest fail
  int passing = 0;
  for (int a = 0; a < g.dim(); ++a)
    for (int p = 0; p < num_pairs(3); ++p) passing += satisfies_bianchi(g, SVecQ{{a * num_pairs(3) + p, Q(1)}});
  EXPECT_EQ(passing, 3);
}

TEST(BruteForce, CapRefusal) {
  auto g = gl_algebra(4);
  Caps tight{10};
  try {
    prolongation(g, tight);
    FAIL() << "cap not enforced";
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.cap(), 10);
    EXPECT_GT(e.ambient(), 10);
    EXPECT_NE(std::string(e.what()).find("cap"), std::string::npos);
  }
  EXPECT_THROW(curvature_space(g, tight), CapExceeded);
  EXPECT_THROW(p1_space(g, tight), CapExceeded);
}
