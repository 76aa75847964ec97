#pragma once

#include <hol/lie/characters.hpp>
#include <hol/rep/chevalley.hpp>
#include <hol/rep/matrix.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hol::rep {

using lie::format_weight;
using lie::weyl_dimension;

/// A representation of a Chevalley-basis algebra: one matrix per basis
/// element, with a weight label (and multiplicity index) per basis vector.
struct MatrixRep {
  std::string name;
  int dim = 0;
  std::vector<SparseMatrix> mats;
  std::vector<Weight> weights;
  std::vector<int> mult_index;

  const SparseMatrix& operator[](int a) const { return mats[a]; }

  /// rho(x) for x given in basis coordinates.
  SparseMatrix act(const SVecQ& x) const {
    SparseMatrix m(dim, dim);
    for (const auto& [a, c] : x) m = m.axpy(c, mats[a]);
    return m;
  }
};

/// Indices of h_i, E_{alpha_i}, E_{-alpha_i}: a generating set of the algebra.
inline std::vector<int> generator_indices(const ChevalleyBasis& cb) {
  std::vector<int> g;
  const auto& rs = cb.roots();
  for (int i = 0; i < cb.rank(); ++i) {
    g.push_back(cb.cartan_index(i));
    g.push_back(cb.root_element(i));
    g.push_back(cb.root_element(rs.negative_of(i)));
  }
  return g;
}

namespace detail {

inline bool integral_columns(const MatrixRep& rep, std::vector<std::vector<SVecL>>& out) {
  out.assign(rep.mats.size(), {});
  for (std::size_t a = 0; a < rep.mats.size(); ++a) {
    out[a].resize(rep.dim);
    for (int j = 0; j < rep.dim; ++j)
      for (const auto& [i, v] : rep.mats[a].column(j)) {
        if (v.get_den() != 1 || !v.get_num().fits_slong_p()) return false;
        out[a][j].emplace_back(i, v.get_num().get_si());
      }
  }
  return true;
}

}  // namespace detail

/// Number of basis pairs (a, b) with [rho(a), rho(b)] != rho([a, b]).
inline long commutation_failures(const ChevalleyBasis& cb, const MatrixRep& rep) {
  long failures = 0;
  const int d = cb.dimension();
  std::vector<std::vector<SVecL>> m;
  if (detail::integral_columns(rep, m)) {
    Accumulator<long> acc(rep.dim);
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        bool ok = true;
        for (int v = 0; v < rep.dim && ok; ++v) {
          for (const auto& [k, x] : m[b][v])
            for (const auto& [i, y] : m[a][k]) acc.add(i, x * y);
          for (const auto& [k, x] : m[a][v])
            for (const auto& [i, y] : m[b][k]) acc.add(i, -x * y);
          for (const auto& [c, n] : cb.bracket(a, b))
            for (const auto& [i, y] : m[c][v]) acc.add(i, -n * y);
          ok = acc.take().empty();
        }
        if (!ok) ++failures;
      }
    return failures;
  }
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      SparseMatrix lhs = commutator(rep[a], rep[b]);
      for (const auto& [c, v] : cb.bracket(a, b)) lhs = lhs.axpy(Q(-v), rep[c]);
      if (!lhs.is_zero()) ++failures;
    }
  return failures;
}

/// True iff every basis vector is a weight vector for the Cartan generators.
inline bool weight_basis_consistent(const ChevalleyBasis& cb, const MatrixRep& rep) {
  for (int i = 0; i < cb.rank(); ++i) {
    const SparseMatrix& h = rep[cb.cartan_index(i)];
    for (int v = 0; v < rep.dim; ++v) {
      SVecQ expect;
      if (rep.weights[v][i] != 0) expect.emplace_back(v, Q(rep.weights[v][i]));
      if (h.column(v) != expect) return false;
    }
  }
  return true;
}

inline MatrixRep build_adjoint(const ChevalleyBasis& cb) {
  const int d = cb.dimension();
  MatrixRep rep;
  rep.name = "adjoint";
  rep.dim = d;
  rep.mats.assign(d, SparseMatrix(d, d));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b)
      for (const auto& [c, v] : cb.bracket(a, b)) rep.mats[a].add(c, b, Q(v));
    rep.mats[a].compress();
    rep.weights.push_back(cb.weight_of(a));
    rep.mult_index.push_back(cb.is_cartan(a) ? a : 0);
  }
  return rep;
}

/// Trace form of the adjoint representation, B(x_a, x_b) = tr(ad x_a ad x_b).
inline std::vector<std::vector<Q>> killing_form(const ChevalleyBasis& cb) {
  const int d = cb.dimension();
  std::vector<std::vector<Q>> B(d, std::vector<Q>(d, Q(0)));
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      long t = 0;
      for (int k = 0; k < d; ++k)
        for (const auto& [j, v] : cb.bracket(b, k))
          for (const auto& [kk, w] : cb.bracket(a, j))
            if (kk == k) t += v * w;
      B[a][b] = B[b][a] = t;
    }
  return B;
}

/// Extends matrices for E_{alpha_i} and E_{-alpha_i} (plus Cartan diagonals
/// from the weights) to the whole Chevalley basis by commutators along
/// extraspecial pairs.
inline MatrixRep extend_from_simple(const ChevalleyBasis& cb, std::string name, const std::vector<Weight>& weights,
                                    const std::vector<SparseMatrix>& e, const std::vector<SparseMatrix>& f) {
  const auto& rs = cb.roots();
  const int n = static_cast<int>(weights.size());
  MatrixRep rep;
  rep.name = std::move(name);
  rep.dim = n;
  rep.weights = weights;
  rep.mult_index.assign(n, 0);
  std::map<Weight, int> seen;
  for (int v = 0; v < n; ++v) rep.mult_index[v] = seen[weights[v]]++;
  rep.mats.assign(cb.dimension(), SparseMatrix(n, n));
  for (int i = 0; i < cb.rank(); ++i) {
    SparseMatrix h(n, n);
    for (int v = 0; v < n; ++v) h.add(v, v, Q(weights[v][i]));
    rep.mats[cb.cartan_index(i)] = h;
    rep.mats[cb.root_element(i)] = e[i];
    rep.mats[cb.root_element(rs.negative_of(i))] = f[i];
  }
  for (int a = 0; a < rs.num_positive(); ++a) {
    if (rs.height(a) == 1) continue;
    auto [i, b] = cb.extraspecial(a);
    rep.mats[cb.root_element(a)] =
        commutator(rep.mats[cb.root_element(i)], rep.mats[cb.root_element(b)]).scaled(Q(1, cb.N(i, b)));
    int ni = rs.negative_of(i), nb = rs.negative_of(b);
    rep.mats[cb.root_element(rs.negative_of(a))] =
        commutator(rep.mats[cb.root_element(ni)], rep.mats[cb.root_element(nb)]).scaled(Q(1, cb.N(ni, nb)));
  }
  return rep;
}

/// Minuscule representation with highest weight the fundamental weight at
/// `node` (0-based). Basis: the Weyl orbit, ordered by depth below the top.
inline MatrixRep build_minuscule(const ChevalleyBasis& cb, int node) {
  const auto& rs = cb.roots();
  if (node < 0 || node >= rs.rank()) throw std::invalid_argument("build_minuscule: node out of range");
  const Weight top = rs.fundamental(node);
  // Orbit by reflections; minuscule iff every weight has all coordinates in {-1,0,1}
  // and the orbit exhausts the module.
  std::vector<Weight> orbit{top};
  std::set<Weight> seen{top};
  for (std::size_t k = 0; k < orbit.size(); ++k)
    for (int i = 0; i < rs.rank(); ++i) {
      if (orbit[k][i] <= 0) continue;
      Weight w = orbit[k];
      rs.reflect(w, i);
      if (seen.insert(w).second) orbit.push_back(w);
    }
  bool minuscule = weyl_dimension(rs, top) == Z(static_cast<long>(orbit.size()));
  for (const auto& w : orbit)
    for (int c : w)
      if (c < -1 || c > 1) minuscule = false;
  if (!minuscule)
    throw std::invalid_argument("build_minuscule: fundamental weight at node " + std::to_string(node + 1) +
                                " is not minuscule");
  // BFS from the top already orders by depth.
  std::map<Weight, int> index;
  for (int v = 0; v < static_cast<int>(orbit.size()); ++v) index[orbit[v]] = v;
  const int n = static_cast<int>(orbit.size());
  std::vector<SparseMatrix> e(rs.rank(), SparseMatrix(n, n)), f(rs.rank(), SparseMatrix(n, n));
  for (int i = 0; i < rs.rank(); ++i) {
    const Weight ai = rs.simple_root_weight(i);
    for (int v = 0; v < n; ++v) {
      if (orbit[v][i] == -1) e[i].add(index.at(orbit[v] + ai), v, Q(1));
      if (orbit[v][i] == 1) f[i].add(index.at(orbit[v] - ai), v, Q(-1));
    }
    e[i].compress();
    f[i].compress();
  }
  return extend_from_simple(cb, "minuscule(" + format_weight(top) + ")", orbit, e, f);
}

/// Irreducible sl2-module of dimension k+1 (symmetric power of C^2) for an
/// A1 Chevalley basis. Basis x^(k-j) y^j, weights k - 2j.
inline MatrixRep build_sl2_irrep(const ChevalleyBasis& cb, int k) {
  if (cb.rank() != 1) throw std::invalid_argument("build_sl2_irrep: algebra must be A1");
  if (k < 0) throw std::invalid_argument("build_sl2_irrep: negative degree");
  const int n = k + 1;
  std::vector<Weight> weights;
  for (int j = 0; j < n; ++j) weights.push_back({k - 2 * j});
  SparseMatrix e(n, n), f(n, n);
  for (int j = 0; j < n; ++j) {
    if (j > 0) e.add(j - 1, j, Q(j));          // x d/dy
    if (j < k) f.add(j + 1, j, Q(-(k - j)));   // -y d/dx
  }
  return extend_from_simple(cb, "sym" + std::to_string(k), weights, {e}, {f});
}

}  // namespace hol::rep
