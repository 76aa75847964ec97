#pragma once

// Exact H^0(G/P, L (x) S^m (J^1 L)*) by Frobenius reciprocity:
// the multiplicity of V(lambda) is the dimension of
// { x in M_lambda : e_i x = 0 for Levi nodes i, f_i^(lambda_i + 1) x = 0 for all i },
// where M is the fiber as an explicit module over p = Levi + negative nilradical.

#include <hol/bbw/bbw.hpp>
#include <hol/core/linalg.hpp>
#include <hol/rep/matrix_rep.hpp>

#include <map>
#include <vector>

namespace hol::bbw {

/// A finite-dimensional p-module with explicit e_i (Levi nodes), f_i and weights.
struct ParabolicModule {
  int dim = 0;
  std::vector<Weight> weights;
  std::vector<rep::SparseMatrix> e;  // indexed by node; empty matrix for crossed nodes
  std::vector<rep::SparseMatrix> f;
};

namespace detail {

inline rep::SparseMatrix restrict(const rep::SparseMatrix& m, const std::vector<int>& keep) {
  std::map<int, int> pos;
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) pos[keep[i]] = i;
  const int r = static_cast<int>(keep.size());
  rep::SparseMatrix out(r, r);
  for (int j = 0; j < r; ++j)
    for (const auto& [i, v] : m.column(keep[j])) {
      auto it = pos.find(i);
      if (it != pos.end()) out.add(it->second, j, v);
    }
  out.compress();
  return out;
}

inline rep::SparseMatrix dual(const rep::SparseMatrix& m) { return m.transpose().scaled(Q(-1)); }

// Derivation action of a matrix on the degree-k symmetric power with basis
// given by sorted index tuples.
inline rep::SparseMatrix sym_power_action(const rep::SparseMatrix& x, const std::vector<std::vector<int>>& basis,
                                          const std::map<std::vector<int>, int>& index) {
  const int n = static_cast<int>(basis.size());
  rep::SparseMatrix out(n, n);
  for (int b = 0; b < n; ++b) {
    const auto& mono = basis[b];
    for (std::size_t t = 0; t < mono.size(); ++t) {
      if (t > 0 && mono[t] == mono[t - 1]) continue;  // each distinct factor once, times its multiplicity
      long mult = std::count(mono.begin(), mono.end(), mono[t]);
      for (const auto& [i, v] : x.column(mono[t])) {
        std::vector<int> img = mono;
        img[t] = i;
        std::sort(img.begin(), img.end());
        out.add(index.at(img), b, v * mult);
      }
    }
  }
  out.compress();
  return out;
}

}  // namespace detail

/// The fiber L (x) S^m (V / V_{>=2})* as an explicit p-module, from a matrix
/// model of V = H^0(X, L).
inline ParabolicModule jet_twisted_module(const rep::ChevalleyBasis& cb, const rep::MatrixRep& v,
                                          const ParabolicData& par, int m) {
  const auto& rs = cb.roots();
  std::vector<int> keep;
  for (int i = 0; i < v.dim; ++i)
    if (par.depth(v.weights[i]) <= 1) keep.push_back(i);
  const int r = static_cast<int>(keep.size());
  std::vector<std::vector<int>> basis;
  std::vector<int> tuple(m, 0);
  if (m == 0) {
    basis.push_back({});
  } else {
    while (true) {
      basis.push_back(tuple);
      int p = m - 1;
      while (p >= 0 && tuple[p] == r - 1) --p;
      if (p < 0) break;
      ++tuple[p];
      for (int j = p + 1; j < m; ++j) tuple[j] = tuple[p];
    }
  }
  std::map<std::vector<int>, int> index;
  for (int b = 0; b < static_cast<int>(basis.size()); ++b) index[basis[b]] = b;

  ParabolicModule M;
  M.dim = static_cast<int>(basis.size());
  for (const auto& mono : basis) {
    Weight w = par.omega;
    for (int t : mono) w = w - v.weights[keep[t]];
    M.weights.push_back(w);
  }
  for (int i = 0; i < rs.rank(); ++i) {
    auto lift = [&](int element) {
      return detail::sym_power_action(detail::dual(detail::restrict(v[element], keep)), basis, index);
    };
    M.f.push_back(lift(cb.root_element(rs.negative_of(i))));
    M.e.push_back(par.levi.has_node(i) ? lift(cb.root_element(i)) : rep::SparseMatrix(M.dim, M.dim));
  }
  return M;
}

/// Multiplicities of H^0 by Frobenius reciprocity.
inline Decomposition h0_frobenius(const RootSystem& rs, const ParabolicData& par, const ParabolicModule& M) {
  std::map<Weight, std::vector<int>> spaces;
  for (int b = 0; b < M.dim; ++b)
    if (rs.is_dominant(M.weights[b])) spaces[M.weights[b]].push_back(b);
  Decomposition out;
  for (const auto& [lambda, idx] : spaces) {
    const int d = static_cast<int>(idx.size());
    // Each constraint T contributes rows sum_j T(b_j)_t x_j = 0.
    std::map<std::pair<int, int>, SVecQ> rows;  // (constraint id, target coordinate)
    int cid = 0;
    auto constrain = [&](const rep::SparseMatrix& T, int power) {
      for (int j = 0; j < d; ++j) {
        SVecQ x{{idx[j], Q(1)}};
        for (int p = 0; p < power; ++p) x = T.apply(x);
        for (const auto& [t, v] : x) rows[{cid, t}].emplace_back(j, v);
      }
      ++cid;
    };
    for (int i = 0; i < rs.rank(); ++i) {
      if (par.levi.has_node(i)) constrain(M.e[i], 1);
      constrain(M.f[i], lambda[i] + 1);
    }
    EchelonBasis eb(d);
    for (auto& [key, row] : rows) {
      sort_and_compress(row);
      eb.insert(row);
    }
    if (d - eb.rank() > 0) out[lambda] = d - eb.rank();
  }
  return out;
}

}  // namespace hol::bbw
