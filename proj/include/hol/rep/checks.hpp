#pragma once

#include <hol/rep/model.hpp>

#include <map>
#include <random>

namespace hol::rep {

/// Triples (a, b, c) with B([a,b], c) + B(b, [a,c]) != 0.
inline long killing_invariance_failures(const ChevalleyBasis& cb, const BilinearForm& B) {
  const int d = cb.dimension();
  long failures = 0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = b; c < d; ++c) {
        Q s = 0;
        for (const auto& [e, v] : cb.bracket(a, b)) s += v * B.at(e, c);
        for (const auto& [e, v] : cb.bracket(a, c)) s += v * B.at(b, e);
        if (s != 0) ++failures;
      }
  return failures;
}

/// Pairs (a, u, v) with <rho(a)u, v> + <u, rho(a)v> != 0, over all basis elements a.
inline long pairing_invariance_failures(const MatrixRep& rep, const BilinearForm& w) {
  long failures = 0;
  for (const auto& X : rep.mats)
    for (int u = 0; u < rep.dim; ++u) {
      SVecQ xu = X.column(u);
      for (int v = 0; v < rep.dim; ++v)
        if (sparse_dot(w.left(xu), SVecQ{{v, Q(1)}}) + w(SVecQ{{u, Q(1)}}, X.column(v)) != 0) ++failures;
    }
  return failures;
}

inline long circ_symmetry_failures(const CircProduct& circ) {
  long failures = 0;
  for (int u = 0; u < circ.n; ++u)
    for (int v = u + 1; v < circ.n; ++v)
      if (circ(u, v) != circ(v, u)) ++failures;
  return failures;
}

/// Triples (a, u, v) violating ad(a)(u o v) = (rho(a)u) o v + u o (rho(a)v).
inline long circ_equivariance_failures(const ChevalleyBasis& cb, const MatrixRep& rep, const CircProduct& circ) {
  long failures = 0;
  for (int a = 0; a < cb.dimension(); ++a)
    for (int u = 0; u < circ.n; ++u)
      for (int v = u; v < circ.n; ++v) {
        SVecQ lhs = cb.bracket(SVecQ{{a, Q(1)}}, circ(u, v));
        lhs = sparse_axpy(lhs, Q(-1), circ(rep[a].column(u), SVecQ{{v, Q(1)}}));
        lhs = sparse_axpy(lhs, Q(-1), circ(SVecQ{{u, Q(1)}}, rep[a].column(v)));
        if (!lhs.empty()) ++failures;
      }
  return failures;
}

struct QuarticReport {
  long tested = 0;
  long failures = 0;
  long zero_rhs = 0;  // quadruples whose right side vanishes
};

inline bool quartic_holds(const Model& m, const CircProduct& circ, const SVecQ& u, const SVecQ& v, const SVecQ& s,
                          const SVecQ& t, bool& zero_rhs) {
  Q rhs = quartic_rhs_unit(m.pairing, u, v, s, t, QuarticForm::kConsistent);
  zero_rhs = rhs == 0;
  return quartic_lhs(m.B, circ, u, v, s, t) == m.mu * rhs;
}

/// The quartic identity on seeded random rational quadruples.
inline QuarticReport quartic_random(const Model& m, const CircProduct& circ, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  QuarticReport r;
  for (int k = 0; k < count; ++k) {
    SVecQ u = random_vector(rng, m.dim_v()), v = random_vector(rng, m.dim_v());
    SVecQ s = random_vector(rng, m.dim_v()), t = random_vector(rng, m.dim_v());
    bool z;
    ++r.tested;
    if (!quartic_holds(m, circ, u, v, s, t, z)) ++r.failures;
    if (z) ++r.zero_rhs;
  }
  return r;
}

/// The quartic identity on every basis quadruple of total weight zero (all
/// other basis quadruples vanish on both sides by weight).
inline QuarticReport quartic_sweep(const Model& m, const CircProduct& circ) {
  std::map<lie::Weight, int> index;
  const auto& wts = m.rep.weights;
  for (int v = 0; v < m.dim_v(); ++v) index[wts[v]] = v;
  QuarticReport r;
  for (int u = 0; u < m.dim_v(); ++u)
    for (int v = 0; v < m.dim_v(); ++v)
      for (int s = 0; s < m.dim_v(); ++s) {
        auto it = index.find(lie::operator-(lie::operator+(lie::operator+(wts[u], wts[v]), wts[s])));
        if (it == index.end()) continue;
        bool z;
        ++r.tested;
        if (!quartic_holds(m, circ, {{u, Q(1)}}, {{v, Q(1)}}, {{s, Q(1)}}, {{it->second, Q(1)}}, z)) ++r.failures;
        if (z) ++r.zero_rhs;
      }
  return r;
}

/// Copy of `circ` with the coefficients of top o low and low o top perturbed
/// (negative control).
inline CircProduct perturbed_circ(const Model& m) {
  CircProduct c = m.circ;
  const int low = lowest_index(m.rep);
  for (auto [u, v] : {std::pair{0, low}, std::pair{low, 0}}) {
    auto& e = c.table[static_cast<std::size_t>(u) * c.n + v];
    if (e.empty()) throw std::logic_error("perturbed_circ: top o low vanishes");
    e.front().second += 1;
  }
  return c;
}

}  // namespace hol::rep
