#pragma once

// Curvature spaces of the model representation realized through explicit
// formulas: R_A(u,v) = 2 lambda mu <u,v> A + u o rho(A)v - v o rho(A)u,
// the second curvature elements s -> R_{s o w}, and the invariant phi2.

#include <hol/curv/bruteforce.hpp>
#include <hol/curv/tensor.hpp>
#include <hol/rep/model.hpp>

#include <algorithm>
#include <cstdint>
#include <json.hpp>

namespace hol::curv {

using rep::DenseQ;
using rep::Model;

/// g-valued 2-form on V, stored on pairs u < v.
struct CurvatureElement {
  int dim_g = 0;
  int n = 0;
  std::vector<SVecQ> values;

  CurvatureElement() = default;
  CurvatureElement(int dg, int dim_v) : dim_g(dg), n(dim_v), values(num_pairs(dim_v)) {}

  const SVecQ& at_pair(int u, int v) const { return values[pair_index(n, u, v)]; }

  SVecQ value(int u, int v) const {
    if (u == v) return {};
    if (u < v) return at_pair(u, v);
    return sparse_scaled(at_pair(v, u), Q(-1));
  }

  bool is_zero() const {
    return std::all_of(values.begin(), values.end(), [](const SVecQ& x) { return x.empty(); });
  }

  /// Coordinate a * P + pair, the layout used by the brute-force spaces.
  SVecQ flatten() const {
    const int P = num_pairs(n);
    SVecQ out;
    for (int p = 0; p < P; ++p)
      for (const auto& [a, c] : values[p]) out.emplace_back(a * P + p, c);
    sort_and_compress(out);
    return out;
  }

  SparseTensor tensor() const {
    SparseTensor t({dim_g, n, n});
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        for (const auto& [a, c] : at_pair(u, v)) {
          t.set({a, u, v}, c);
          t.set({a, v, u}, -c);
        }
    return t;
  }

  void axpy(const Q& s, const CurvatureElement& o) {
    if (s == 0) return;
    for (std::size_t p = 0; p < values.size(); ++p)
      if (!o.values[p].empty()) values[p] = sparse_axpy(values[p], s, o.values[p]);
  }

  friend bool operator==(const CurvatureElement& a, const CurvatureElement& b) {
    return a.dim_g == b.dim_g && a.n == b.n && a.values == b.values;
  }
};

/// R_A for A in g (basis coordinates).
inline CurvatureElement curvature_element(const Model& m, const SVecQ& A) {
  const int dg = m.dim_g(), n = m.dim_v();
  CurvatureElement R(dg, n);
  if (A.empty()) return R;
  const SparseMatrix rho = m.rep.act(A);
  const Q c = 2 * m.lambda * m.mu;
  Accumulator<Q> acc(dg);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const Q w = m.pairing.at(u, v);
      if (w != 0)
        for (const auto& [a, x] : A) acc.add_product(a, c * w, x);
      for (const auto& [k, x] : rho.column(v))
        for (const auto& [b, y] : m.circ(u, k)) acc.add_product(b, x, y);
      for (const auto& [k, x] : rho.column(u)) {
        const Q nx = -x;
        for (const auto& [b, y] : m.circ(v, k)) acc.add_product(b, nx, y);
      }
      R.values[pair_index(n, u, v)] = acc.take();
    }
  return R;
}

/// Same formula, named for the model algebra.
inline CurvatureElement e7_curvature_element(const Model& m, const SVecQ& A) { return curvature_element(m, A); }

/// R_{X_a} for every basis element; R_A for other A by linearity.
struct CurvatureBasis {
  std::vector<CurvatureElement> R;

  CurvatureElement combine(const SVecQ& A) const {
    CurvatureElement out(R.at(0).dim_g, R.at(0).n);
    for (const auto& [a, c] : A) out.axpy(c, R[a]);
    return out;
  }
};

inline CurvatureBasis curvature_basis(const Model& m) {
  CurvatureBasis b;
  for (int a = 0; a < m.dim_g(); ++a) b.R.push_back(curvature_element(m, {{a, Q(1)}}));
  return b;
}

/// Number of triples u < v < w with R(u,v)w + R(v,w)u + R(w,u)v != 0.
inline long bianchi_failures(const rep::MatrixRep& rep, const CurvatureElement& R) {
  const int n = R.n;
  long failures = 0;
  Accumulator<Q> acc(n);
  auto term = [&](int x, int y, int z) {
    // R(x,y) with x < y, or its negative
    const bool fwd = x < y;
    const SVecQ& val = fwd ? R.at_pair(x, y) : R.at_pair(y, x);
    for (const auto& [b, c] : val) {
      const Q s = fwd ? c : Q(-c);
      for (const auto& [i, r] : rep[b].column(z)) acc.add_product(i, s, r);
    }
  };
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = v + 1; w < n; ++w) {
        if (R.at_pair(u, v).empty() && R.at_pair(v, w).empty() && R.at_pair(u, w).empty()) continue;
        term(u, v, w);
        term(v, w, u);
        term(w, u, v);
        if (!acc.take().empty()) ++failures;
      }
  return failures;
}

/// (X_b . R)(u,v) = [X_b, R(u,v)] - R(X_b u, v) - R(u, X_b v).
inline CurvatureElement act(const Model& m, int b, const CurvatureElement& R) {
  const int n = R.n, dg = R.dim_g;
  const SparseMatrix& X = m.rep[b];
  CurvatureElement out(dg, n);
  Accumulator<Q> acc(dg);
  auto add_value = [&](int x, int y, const Q& s) {
    if (x == y) return;
    const bool fwd = x < y;
    const SVecQ& val = fwd ? R.at_pair(x, y) : R.at_pair(y, x);
    const Q t = fwd ? s : Q(-s);
    for (const auto& [a, c] : val) acc.add_product(a, t, c);
  };
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      for (const auto& [c, y] : R.at_pair(u, v))
        for (const auto& [e, z] : m.cb.bracket(b, c)) acc.add(e, y * Q(z));
      for (const auto& [k, x] : X.column(u)) add_value(k, v, -x);
      for (const auto& [k, x] : X.column(v)) add_value(u, k, -x);
      out.values[pair_index(n, u, v)] = acc.take();
    }
  return out;
}

/// Pairs (generator, basis element) with R_{[X,A]} != X . R_A.
inline long equivariance_failures(const Model& m, const CurvatureBasis& basis, const std::vector<int>& generators) {
  long failures = 0;
  for (int b : generators)
    for (int a = 0; a < m.dim_g(); ++a) {
      SVecQ ba;
      for (const auto& [c, v] : m.cb.bracket(b, a)) ba.emplace_back(c, Q(v));
      if (!(basis.combine(ba) == act(m, b, basis.R[a]))) ++failures;
    }
  return failures;
}

inline int stacked_rank(const std::vector<SVecQ>& rows, long ncols) {
  EchelonBasis eb(static_cast<int>(ncols));
  for (const auto& r : rows) eb.insert(r);
  return eb.rank();
}

inline int curvature_rank(const std::vector<CurvatureElement>& elems) {
  if (elems.empty()) return 0;
  std::vector<SVecQ> rows;
  for (const auto& e : elems) rows.push_back(e.flatten());
  return stacked_rank(rows, static_cast<long>(elems[0].dim_g) * num_pairs(elems[0].n));
}

/// True iff the values R(u,v) span g.
inline bool k0_membership(const CurvatureElement& R) {
  EchelonBasis eb(R.dim_g);
  for (const auto& v : R.values) {
    if (v.empty()) continue;
    eb.insert(v);
    if (eb.rank() == R.dim_g) return true;
  }
  return R.dim_g == 0;
}

inline int span_dimension(const CurvatureElement& R) {
  EchelonBasis eb(R.dim_g);
  for (const auto& v : R.values)
    if (!v.empty()) eb.insert(v);
  return eb.rank();
}

/// Element of g (x) V* (x) L^2 V*: slice s is a g-valued 2-form.
struct SecondCurvatureElement {
  std::vector<CurvatureElement> slices;

  SVecQ flatten() const {
    if (slices.empty()) return {};
    const long block = static_cast<long>(slices[0].dim_g) * num_pairs(slices[0].n);
    SVecQ out;
    for (std::size_t s = 0; s < slices.size(); ++s)
      for (const auto& [i, c] : slices[s].flatten()) out.emplace_back(static_cast<int>(s * block + i), c);
    return out;
  }

  long ambient() const {
    return slices.empty() ? 0 : static_cast<long>(slices.size()) * slices[0].dim_g * num_pairs(slices[0].n);
  }

  bool is_zero() const {
    return std::all_of(slices.begin(), slices.end(), [](const CurvatureElement& c) { return c.is_zero(); });
  }
};

/// s -> R_{s o w}.
inline SecondCurvatureElement e7_second_curvature_element(const Model& m, const CurvatureBasis& basis,
                                                          const SVecQ& w) {
  SecondCurvatureElement S;
  for (int s = 0; s < m.dim_v(); ++s) S.slices.push_back(basis.combine(m.circ({{s, Q(1)}}, w)));
  return S;
}

/// Triples s < u < v where S(s)(u,v) + S(u)(v,s) + S(v)(s,u) != 0.
inline long i2_failures(const SecondCurvatureElement& S) {
  if (S.slices.empty()) return 0;
  const int n = S.slices[0].n;
  long failures = 0;
  for (int s = 0; s < n; ++s)
    for (int u = s + 1; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        const SVecQ& a = S.slices[s].at_pair(u, v);
        const SVecQ& b = S.slices[u].at_pair(s, v);  // S(u)(v,s) = -S(u)(s,v)
        const SVecQ& c = S.slices[v].at_pair(s, u);
        if (a.empty() && b.empty() && c.empty()) continue;
        if (!sparse_axpy(sparse_axpy(a, Q(-1), b), Q(1), c).empty()) ++failures;
      }
  return failures;
}

inline int second_curvature_rank(const std::vector<SecondCurvatureElement>& elems) {
  if (elems.empty()) return 0;
  std::vector<SVecQ> rows;
  for (const auto& e : elems) rows.push_back(e.flatten());
  return stacked_rank(rows, elems[0].ambient());
}

/// phi2(C, D, u, v) = B(R_C(u,v), D); row C holds, per pair, the covector in D.
struct Phi2Table {
  int dim_g = 0;
  int n = 0;
  std::vector<CurvatureElement> rows;

  Q at(int C, int D, int u, int v) const {
    if (u == v) return 0;
    const bool fwd = u < v;
    const SVecQ& r = fwd ? rows[C].at_pair(u, v) : rows[C].at_pair(v, u);
    auto it = std::lower_bound(r.begin(), r.end(), D, [](const auto& e, int k) { return e.first < k; });
    if (it == r.end() || it->first != D) return 0;
    return fwd ? it->second : Q(-it->second);
  }

  long nonzeros() const {
    long s = 0;
    for (const auto& r : rows)
      for (const auto& v : r.values) s += static_cast<long>(v.size());
    return s;
  }
};

/// Covector D -> phi2(C, D, u, v) straight from the displayed formula.
inline SVecQ phi2_value(const Model& m, int C, int u, int v) {
  SVecQ x;
  const Q w = m.pairing.at(u, v);
  if (w != 0) x.emplace_back(C, 2 * m.lambda * m.mu * w);
  const SparseMatrix& rc = m.rep[C];
  x = sparse_axpy(x, Q(1), m.circ({{u, Q(1)}}, rc.column(v)));
  x = sparse_axpy(x, Q(-1), m.circ({{v, Q(1)}}, rc.column(u)));
  return m.B.left(x);
}

inline Phi2Table phi2_element(const Model& m, const CurvatureBasis& basis) {
  Phi2Table t{m.dim_g(), m.dim_v(), {}};
  for (int C = 0; C < m.dim_g(); ++C) {
    CurvatureElement row(m.dim_g(), m.dim_v());
    for (std::size_t p = 0; p < row.values.size(); ++p)
      if (!basis.R[C].values[p].empty()) row.values[p] = m.B.left(basis.R[C].values[p]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Entries with phi2(C,D,u,v) != phi2(D,C,u,v).
inline long phi2_symmetry_failures(const Phi2Table& t) {
  long failures = 0;
  for (int C = 0; C < t.dim_g; ++C)
    for (int u = 0; u < t.n; ++u)
      for (int v = u + 1; v < t.n; ++v)
        for (const auto& [D, c] : t.rows[C].at_pair(u, v))
          if (t.at(D, C, u, v) != c) ++failures;
  return failures;
}

/// Ordered pairs (u, v) with phi2(., ., u, v) + phi2(., ., v, u) != 0, evaluated
/// from the formula on all 133 x 56 x 56 slots, together with agreement of the
/// formula and the stored table.
struct SkewReport {
  long skew_failures = 0;
  long table_mismatches = 0;
};

inline SkewReport phi2_skew_check(const Model& m, const Phi2Table& t) {
  SkewReport r;
  for (int C = 0; C < m.dim_g(); ++C)
    for (int u = 0; u < m.dim_v(); ++u) {
      if (!phi2_value(m, C, u, u).empty()) ++r.skew_failures;
      for (int v = u + 1; v < m.dim_v(); ++v) {
        SVecQ a = phi2_value(m, C, u, v), b = phi2_value(m, C, v, u);
        if (!sparse_axpy(a, Q(1), b).empty()) ++r.skew_failures;
        if (a != t.rows[C].at_pair(u, v)) ++r.table_mismatches;
      }
    }
  return r;
}

namespace detail {

// Transposed sparse columns: for a matrix M, rows[i] lists (j, M_ij).
inline std::vector<std::vector<std::pair<int, long>>> integer_rows(const SparseMatrix& M) {
  std::vector<std::vector<std::pair<int, long>>> rows(M.rows());
  for (int j = 0; j < M.cols(); ++j)
    for (const auto& [i, v] : M.column(j)) {
      if (v.get_den() != 1 || !v.get_num().fits_slong_p())
        throw std::runtime_error("integer_rows: representation matrix is not integral");
      rows[i].emplace_back(j, v.get_num().get_si());
    }
  return rows;
}

}  // namespace detail

/// For each basis element X of g, the number of nonzero entries of X . phi2 with
/// phi2 viewed in g* (x) g* (x) L^2 V*:
/// (X.phi)(C,D,u,v) = -phi([X,C],D,u,v) - phi(C,[X,D],u,v) - phi(C,D,Xu,v) - phi(C,D,u,Xv).
/// Runs in integer arithmetic after clearing denominators.
inline std::vector<long> phi2_invariance_failures(const Model& m, const Phi2Table& t,
                                                  const std::vector<int>& generators) {
  const int dg = t.dim_g, n = t.n, P = num_pairs(n);
  struct Entry {
    int C, D, u, v;
    long val;
  };
  Z den = 1;
  for (const auto& row : t.rows)
    for (const auto& vals : row.values)
      for (const auto& [D, c] : vals) den = lcm(den, c.get_den());
  std::vector<Entry> entries;
  for (int C = 0; C < dg; ++C)
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        for (const auto& [D, c] : t.rows[C].at_pair(u, v)) {
          Q s = c * den;
          if (!s.get_num().fits_slong_p()) throw std::runtime_error("phi2_invariance_failures: entry overflow");
          entries.push_back({C, D, u, v, s.get_num().get_si()});
          entries.push_back({C, D, v, u, -s.get_num().get_si()});
        }
  std::vector<long> out;
  std::vector<std::pair<std::uint64_t, long>> acc;
  for (int b : generators) {
    // ad(X_b)^T and rho(X_b)^T as integer rows: row c lists (C, [X_b, X_C]_c).
    SparseMatrix ad(dg, dg);
    for (int C = 0; C < dg; ++C)
      for (const auto& [c, v] : m.cb.bracket(b, C)) ad.add(c, C, Q(v));
    ad.compress();
    auto adr = detail::integer_rows(ad);
    auto rhor = detail::integer_rows(m.rep[b]);
    acc.clear();
    auto push = [&](int C, int D, int u, int v, long val) {
      if (u >= v) return;
      acc.emplace_back((static_cast<std::uint64_t>(C) * dg + D) * P + pair_index(n, u, v), val);
    };
    for (const auto& e : entries) {
      for (const auto& [C, x] : adr[e.C]) push(C, e.D, e.u, e.v, -x * e.val);
      for (const auto& [D, x] : adr[e.D]) push(e.C, D, e.u, e.v, -x * e.val);
      for (const auto& [u, x] : rhor[e.u]) push(e.C, e.D, u, e.v, -x * e.val);
      for (const auto& [v, x] : rhor[e.v]) push(e.C, e.D, e.u, v, -x * e.val);
    }
    std::sort(acc.begin(), acc.end());
    long failures = 0;
    for (std::size_t i = 0; i < acc.size();) {
      long s = 0;
      std::size_t j = i;
      for (; j < acc.size() && acc[j].first == acc[i].first; ++j) s += acc[j].second;
      if (s != 0) ++failures;
      i = j;
    }
    out.push_back(failures);
  }
  return out;
}

/// phi2'(e^a) = P^a with P^a(u,v) = sum_b T^{ab}(u,v) X_b, T = phi2 with both
/// g* slots raised by B^{-1}.
inline std::vector<CurvatureElement> phi2_prime(const Model& m, const Phi2Table& t) {
  std::vector<CurvatureElement> out;
  for (int a = 0; a < t.dim_g; ++a) {
    CurvatureElement pa(t.dim_g, t.n);
    for (const auto& [C, binv] : m.Binv.rows[a]) pa.axpy(binv, t.rows[C]);
    for (auto& v : pa.values)
      if (!v.empty()) v = m.Binv.left(v);
    out.push_back(std::move(pa));
  }
  return out;
}

/// phi2''(e^i): s -> sum_a rho(X_a)_{is} P^a.
inline std::vector<SecondCurvatureElement> phi2_double_prime(const Model& m,
                                                             const std::vector<CurvatureElement>& prime) {
  const int n = m.dim_v();
  std::vector<SecondCurvatureElement> out(n);
  for (auto& e : out) e.slices.assign(n, CurvatureElement(m.dim_g(), n));
  for (int a = 0; a < m.dim_g(); ++a)
    for (int s = 0; s < n; ++s)
      for (const auto& [i, x] : m.rep[a].column(s)) out[i].slices[s].axpy(x, prime[a]);
  return out;
}

/// The vector w with <w, y> = e^i(y).
inline SVecQ pairing_dual(const Model& m, int i) {
  DenseQ inv = inverse(m.pairing.dense());
  // <w, y> = sum_k w_k W_{ky} = delta_{iy}, so w = row i of W^{-1} transposed
  SVecQ w;
  for (int k = 0; k < m.dim_v(); ++k)
    if (inv[k][i] != 0) w.emplace_back(k, inv[k][i]);
  return w;
}

/// Invariants of g (x) g in weight zero, which is isomorphic to the invariants
/// of g (x) K through A -> R_A. Returns the basis of solutions M (as
/// coordinates over the ordered pairs (a, b) with wt(a) + wt(b) = 0) and the pairs.
struct TensorInvariants {
  std::vector<std::pair<int, int>> pairs;
  std::vector<SVecQ> solutions;
};

inline TensorInvariants weight_zero_invariants(const Model& m) {
  const int dg = m.dim_g();
  TensorInvariants r;
  std::map<std::pair<int, int>, int> index;
  for (int a = 0; a < dg; ++a)
    for (int b = 0; b < dg; ++b)
      if (lie::operator+(m.cb.weight_of(a), m.cb.weight_of(b)) == m.cb.roots().zero_weight()) {
        index[{a, b}] = static_cast<int>(r.pairs.size());
        r.pairs.emplace_back(a, b);
      }
  const int N = static_cast<int>(r.pairs.size());
  // X . sum M_ab X_a (x) X_b = sum M_ab ([X,X_a] (x) X_b + X_a (x) [X,X_b]);
  // collect coefficient rows per output basis pair (c, d).
  std::map<std::pair<int, int>, Accumulator<Q>> rows;
  EchelonBasis eb(N);
  for (int x : m.gens) {
    rows.clear();
    auto row = [&](int c, int d) -> Accumulator<Q>& {
      auto it = rows.find({c, d});
      if (it == rows.end()) it = rows.emplace(std::pair{c, d}, Accumulator<Q>(N)).first;
      return it->second;
    };
    for (int k = 0; k < N; ++k) {
      auto [a, b] = r.pairs[k];
      for (const auto& [c, v] : m.cb.bracket(x, a)) row(c, b).add(k, Q(v));
      for (const auto& [d, v] : m.cb.bracket(x, b)) row(a, d).add(k, Q(v));
    }
    for (auto& [key, acc] : rows) eb.insert(acc.take());
  }
  r.solutions = eb.kernel();
  return r;
}

/// The formula-side data computed once per model.
struct FormulaData {
  CurvatureBasis basis;
  Phi2Table phi2;
  std::vector<CurvatureElement> prime;  // phi2'(e^a)
};

inline FormulaData build_formula_data(const Model& m) {
  FormulaData d;
  d.basis = curvature_basis(m);
  d.phi2 = phi2_element(m, d.basis);
  d.prime = phi2_prime(m, d.phi2);
  return d;
}

/// phi2'(p) = sum_a p(X_a) P^a.
inline CurvatureElement phi2_prime_at(const FormulaData& d, const std::vector<Q>& p) {
  CurvatureElement out(d.phi2.dim_g, d.phi2.n);
  for (std::size_t a = 0; a < p.size(); ++a) out.axpy(p[a], d.prime[a]);
  return out;
}

/// JSON summary of one computed space.
struct SpaceReport {
  std::string space;
  long ambient_dim = 0;
  long computed_dim = 0;
  std::string method;
  std::vector<std::pair<std::string, bool>> residual_checks;

  bool passed() const {
    return std::all_of(residual_checks.begin(), residual_checks.end(), [](const auto& c) { return c.second; });
  }

  nlohmann::json to_json() const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& [name, ok] : residual_checks) checks.push_back({{"name", name}, {"status", ok ? "pass" : "fail"}});
    return {{"space", space},
            {"ambient_dim", ambient_dim},
            {"computed_dim", computed_dim},
            {"method", method},
            {"residual_checks", checks}};
  }
};

/// h-coordinates of the element H with alpha_i(H) = 2 for every simple root.
inline SVecQ regular_semisimple(const rep::ChevalleyBasis& cb) {
  const int r = cb.rank();
  DenseQ A(r, std::vector<Q>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) A[j][i] = cb.roots().root_weight(j)[i];  // A[j][i] = alpha_j(h_i)
  DenseQ inv = inverse(A);
  SVecQ h;
  for (int i = 0; i < r; ++i) {
    Q c = 0;
    for (int j = 0; j < r; ++j) c += 2 * inv[i][j];  // sum_i c_i alpha_j(h_i) = 2
    if (c != 0) h.emplace_back(cb.cartan_index(i), c);
  }
  return h;
}

/// alpha(H) for a root alpha and H in the Cartan subalgebra.
inline Q root_value(const rep::ChevalleyBasis& cb, int root, const SVecQ& H) {
  Q s = 0;
  const auto& w = cb.roots().root_weight(root);
  for (const auto& [a, c] : H) {
    if (!cb.is_cartan(a)) throw std::invalid_argument("root_value: H is not in the Cartan subalgebra");
    s += c * w[a];
  }
  return s;
}

/// Simple reflection s_i on the Cartan subalgebra: H -> H - alpha_i(H) h_i.
inline SVecQ reflect(const rep::ChevalleyBasis& cb, int i, const SVecQ& H) {
  return sparse_axpy(H, Q(-root_value(cb, i, H)), SVecQ{{cb.cartan_index(i), Q(1)}});
}

}  // namespace hol::curv
