#pragma once

#include <hol/rep/invariants.hpp>

#include <string>

namespace hol::rep {

/// Everything needed downstream: the algebra, its adjoint and minuscule
/// representations, the Killing form, the invariant pairing, o and mu.
struct Model {
  ChevalleyBasis cb;
  MatrixRep adjoint;
  MatrixRep rep;
  std::vector<int> gens;
  BilinearForm B;
  BilinearForm Binv;
  BilinearForm pairing;
  CircProduct circ;
  Q lambda = 1;
  Q mu = 0;

  int dim_g() const { return cb.dimension(); }
  int dim_v() const { return rep.dim; }
};

inline Model build_model(const ChevalleyBasis& cb, int node) {
  Model m{cb, build_adjoint(cb), build_minuscule(cb, node), generator_indices(cb), {}, {}, {}, {}, Q(1), Q(0)};
  DenseQ B = killing_form(cb);
  m.B = BilinearForm::from_dense(B);
  m.Binv = BilinearForm::from_dense(inverse(B));
  m.pairing = invariant_symplectic(m.rep, m.gens);
  m.circ = circ_product(m.rep, m.Binv, m.pairing, m.lambda);
  m.mu = derive_mu(m.rep, m.pairing, m.circ, m.B);
  return m;
}

/// E7 with its 56-dimensional representation (node 7).
inline Model build_e7_model() { return build_model(ChevalleyBasis::of_type("E7"), 6); }

}  // namespace hol::rep
