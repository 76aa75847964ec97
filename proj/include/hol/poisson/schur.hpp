#pragma once

// Linear maps rho: V -> W with A rho B = B rho A for all A, B in g.

#include <hol/curv/bruteforce.hpp>

#include <random>
#include <stdexcept>

namespace hol::poisson {

using curv::Caps;
using curv::SubspaceBasis;
using rep::MatrixRep;
using rep::SparseMatrix;

struct SchurResult {
  SubspaceBasis solutions;  // coordinate i * dim V + j is rho(e_j)_i
  int pairs = 0;            // basis pairs imposed
  int redundancy_checks = 0;
  long redundancy_failures = 0;
  std::uint64_t seed = 0;
};

inline bool acts_trivially(const MatrixRep& r) {
  for (const auto& m : r.mats)
    if (!m.is_zero()) return false;
  return true;
}

namespace detail {

/// Entries of A rho B - B rho A for rho given in coordinates.
inline long schur_residual(const SparseMatrix& WA, const SparseMatrix& VA, const SparseMatrix& WB,
                           const SparseMatrix& VB, const SVecQ& rho, int dv, int dw) {
  SparseMatrix R(dw, dv);
  for (const auto& [c, v] : rho) R.add(static_cast<int>(c / dv), static_cast<int>(c % dv), v);
  R.compress();
  return static_cast<long>((WA * R * VB - WB * R * VA).nonzeros());
}

}  // namespace detail

/// Exact solution space, imposed on every pair of basis elements (the
/// condition is bilinear, so this suffices); every solution is then rechecked
/// on `checks` seeded pairs of random rational combinations.
inline SchurResult schur_solver(const MatrixRep& V, const MatrixRep& W, const Caps& caps = {},
                                bool allow_trivial = false, int checks = 4, std::uint64_t seed = 1) {
  if (V.mats.size() != W.mats.size())
    throw std::invalid_argument("schur_solver: representations of different algebras");
  if (!allow_trivial && (acts_trivially(V) || acts_trivially(W)))
    throw std::invalid_argument("schur_solver: trivial representation (outside the lemma's scope)");
  const int dv = V.dim, dw = W.dim, m = static_cast<int>(V.mats.size());
  const long amb = static_cast<long>(dv) * dw;
  curv::enforce_cap("schur_solver", amb, caps);

  SchurResult res;
  res.seed = seed;
  EchelonBasis eb(static_cast<int>(amb));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      ++res.pairs;
      for (int j = 0; j < dv; ++j) {
        curv::detail::RowSink sink(dw, amb);
        auto add = [&](const SparseMatrix& WX, const SparseMatrix& VY, const Q& sign) {
          for (const auto& [l, y] : VY.column(j))
            for (int k = 0; k < dw; ++k)
              for (const auto& [i, x] : WX.column(k)) sink.rows[i].add(static_cast<long>(k) * dv + l, sign * x * y);
        };
        add(W[a], V[b], Q(1));
        add(W[b], V[a], Q(-1));
        sink.flush(eb);
      }
    }
  res.solutions = {"schur", amb, eb.kernel()};

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-10, 10);
  for (int s = 0; s < checks; ++s) {
    SVecQ A, B;
    for (int a = 0; a < m; ++a) {
      if (int c = coef(rng)) A.emplace_back(a, Q(c));
      if (int c = coef(rng)) B.emplace_back(a, Q(c));
    }
    const SparseMatrix WA = W.act(A), VA = V.act(A), WB = W.act(B), VB = V.act(B);
    for (const auto& rho : res.solutions.basis)
      if (detail::schur_residual(WA, VA, WB, VB, rho, dv, dw) != 0) ++res.redundancy_failures;
    ++res.redundancy_checks;
  }
  return res;
}

}  // namespace hol::poisson
