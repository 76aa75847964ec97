#pragma once

// Cross-check of the brute-force spaces against the cohomology of the
// Borel-Weil data: g^(1) = H^0(X, L (x) S^2 N*) and
// dim K(g) - dim d(g^(1) (x) V*) <= dim H^1(X, L (x) S^3 N*),
// for g = H^0(X, L (x) N*) acting on V = H^0(X, L).

#include <hol/bbw/frobenius.hpp>
#include <hol/curv/bruteforce.hpp>

namespace hol::bbw {

struct SpencerCrossCheck {
  std::string algebra;
  int g_dim = 0;
  long h0_l_n = 0;  // dim H^0(X, L (x) N*), must equal dim g
  int g1_bruteforce = 0;
  long h0_s2 = 0;
  int k_bruteforce = 0;
  int spencer_image = 0;
  long h1_s3 = 0;
  bool cohomology_exact = false;
  bool containment = false;  // d(g^(1) (x) V*) inside K(g)

  bool g_matches() const { return h0_l_n == g_dim; }
  bool prolongation_matches() const { return g1_bruteforce == h0_s2; }
  bool bound_holds() const { return k_bruteforce - spencer_image <= h1_s3; }
  bool passed() const { return cohomology_exact && g_matches() && prolongation_matches() && bound_holds() && containment; }
};

/// Runs both pipelines for V (a MatrixRep of the algebra of `cb`) with Borel-Weil
/// data from the parabolic at `node`; the brute-force side uses the image of
/// the algebra plus the identity, which is g = H^0(X, L (x) N*).
inline SpencerCrossCheck spencer_cross_check(const rep::ChevalleyBasis& cb, const rep::MatrixRep& v, int node,
                                             const curv::Caps& caps = {}) {
  const auto& rs = cb.roots();
  ParabolicData par = parabolic_from_node(rs, node);
  par.omega = v.weights.at(0);
  if (!rs.is_dominant(par.omega) || !par.levi.is_dominant(par.omega))
    throw std::invalid_argument("spencer_cross_check: first basis vector must carry the highest weight");
  for (int i = 0; i < rs.rank(); ++i)
    if (i != node && par.omega[i] != 0)
      throw std::invalid_argument("spencer_cross_check: highest weight is not a multiple of the crossed node");

  auto cohomology = [&](int m) {
    auto h0 = h0_frobenius(rs, par, jet_twisted_module(cb, v, par, m));
    return twisted_conormal_cohomology(par, m, ConormalVariant::kJet, h0);
  };
  auto c1 = cohomology(1), c2 = cohomology(2), c3 = cohomology(3);

  curv::MatrixAlgebra g = curv::rep_image(v, true);
  auto g1 = curv::prolongation(g, caps);
  auto K = curv::curvature_space(g, caps);
  auto sp = curv::spencer_image(g, g1, K);

  SpencerCrossCheck r;
  r.algebra = g.name;
  r.g_dim = g.dim();
  r.h0_l_n = c1.dim(rs, 0);
  r.g1_bruteforce = g1.dim();
  r.h0_s2 = c2.dim(rs, 0);
  r.k_bruteforce = K.dim();
  r.spencer_image = sp.image_dim;
  r.h1_s3 = c3.dim(rs, 1);
  r.cohomology_exact = c1.exact && c2.exact && c3.exact;
  r.containment = sp.contained_in_K;
  return r;
}

}  // namespace hol::bbw
