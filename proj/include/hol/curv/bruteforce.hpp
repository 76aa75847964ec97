#pragma once

// Brute-force exact computation of g^(1), K(g), K^1(g), the Spencer image and
// P^(1)(g) for a matrix Lie algebra g in gl(V). Every space is the kernel of
// an explicit sparse linear system over Q.

#include <hol/core/linalg.hpp>
#include <hol/rep/matrix_rep.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace hol::curv {

using rep::SparseMatrix;

struct Caps {
  long ambient = 20000;
};

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, long ambient, long cap)
      : std::runtime_error(what + ": ambient dimension " + std::to_string(ambient) + " exceeds the brute-force cap " +
                           std::to_string(cap) + " (raise --caps to allow)"),
        ambient_(ambient),
        cap_(cap) {}
  long ambient() const { return ambient_; }
  long cap() const { return cap_; }

 private:
  long ambient_, cap_;
};

inline void enforce_cap(const char* what, long ambient, const Caps& caps) {
  if (ambient > caps.ambient) throw CapExceeded(what, ambient, caps.ambient);
}

/// Index of the skew pair (k, l), k < l, among n(n-1)/2 pairs.
inline int pair_index(int n, int k, int l) { return k * n - k * (k + 1) / 2 + (l - k - 1); }
inline int num_pairs(int n) { return n * (n - 1) / 2; }

/// A linear subalgebra of gl(n) with a basis of linearly independent matrices.
struct MatrixAlgebra {
  std::string name;
  int n = 0;
  std::vector<SparseMatrix> basis;

  int dim() const { return static_cast<int>(basis.size()); }

  /// Coordinates of a matrix in the basis (throws if it is not in the span).
  SVecQ coordinates(const SparseMatrix& m) const;
};

inline SVecQ flatten_matrix(const SparseMatrix& m) {
  SVecQ out;
  for (int j = 0; j < m.cols(); ++j)
    for (const auto& [i, v] : m.column(j)) out.emplace_back(i * m.cols() + j, v);
  sort_and_compress(out);
  return out;
}

inline SVecQ MatrixAlgebra::coordinates(const SparseMatrix& m) const {
  // Solve sum c_a basis_a = m through the nullspace of [basis | -m].
  const int d = dim();
  std::vector<SVecQ> cols;
  for (const auto& b : basis) cols.push_back(flatten_matrix(b));
  cols.push_back(sparse_scaled(flatten_matrix(m), Q(-1)));
  std::vector<SVecQ> eqs(static_cast<std::size_t>(n) * n);
  for (int c = 0; c <= d; ++c)
    for (const auto& [k, v] : cols[c]) eqs[k].emplace_back(c, v);
  auto ker = nullspace(eqs, d + 1);
  for (const auto& k : ker) {
    Q last = 0;
    for (const auto& [i, v] : k)
      if (i == d) last = v;
    if (last == 0) continue;
    SVecQ out;
    for (const auto& [i, v] : k)
      if (i < d) out.emplace_back(i, v / last);
    return out;
  }
  throw std::invalid_argument("MatrixAlgebra::coordinates: matrix is not in the algebra");
}

/// Keeps a maximal linearly independent subfamily.
inline MatrixAlgebra independent_algebra(std::string name, int n, const std::vector<SparseMatrix>& mats) {
  MatrixAlgebra alg{std::move(name), n, {}};
  EchelonBasis eb(n * n);
  for (const auto& m : mats)
    if (eb.insert(flatten_matrix(m))) alg.basis.push_back(m);
  return alg;
}

inline MatrixAlgebra rep_image(const rep::MatrixRep& r, bool with_identity) {
  std::vector<SparseMatrix> mats = r.mats;
  if (with_identity) mats.push_back(SparseMatrix::identity(r.dim));
  return independent_algebra(r.name + (with_identity ? "+C" : ""), r.dim, mats);
}

inline MatrixAlgebra gl_algebra(int n) {
  std::vector<SparseMatrix> mats;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      SparseMatrix m(n, n);
      m.add(i, j, Q(1));
      mats.push_back(m);
    }
  return independent_algebra("gl(" + std::to_string(n) + ")", n, mats);
}

inline MatrixAlgebra so_algebra(int n) {
  std::vector<SparseMatrix> mats;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      SparseMatrix m(n, n);
      m.add(i, j, Q(1));
      m.add(j, i, Q(-1));
      m.compress();
      mats.push_back(m);
    }
  return independent_algebra("so(" + std::to_string(n) + ")", n, mats);
}

inline MatrixAlgebra zero_algebra(int n) { return MatrixAlgebra{"0", n, {}}; }

/// A subspace of an ambient coordinate space, given by a basis.
struct SubspaceBasis {
  std::string space;
  long ambient = 0;
  std::vector<SVecQ> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};

namespace detail {

// Row accumulators indexed by the output component.
struct RowSink {
  std::vector<Accumulator<Q>> rows;
  RowSink(int components, long unknowns) : rows(components, Accumulator<Q>(unknowns)) {}
  void flush(EchelonBasis& eb) {
    for (auto& r : rows) {
      SVecQ row = r.take();
      if (!row.empty()) eb.insert(row);
    }
  }
};

}  // namespace detail

/// g^(1) = (g (x) V*) cap (V (x) S^2 V*): maps T: V -> g with T(u)v = T(v)u.
/// Coordinate of T: index a * n + k is the X_a-coefficient of T(e_k).
inline SubspaceBasis prolongation(const MatrixAlgebra& g, const Caps& caps = {}) {
  const int n = g.n, m = g.dim();
  const long amb = static_cast<long>(m) * n;
  enforce_cap("prolongation", amb, caps);
  EchelonBasis eb(static_cast<int>(amb));
  detail::RowSink sink(n, amb);
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      for (int a = 0; a < m; ++a) {
        for (const auto& [i, v] : g.basis[a].column(l)) sink.rows[i].add(a * n + k, v);
        for (const auto& [i, v] : g.basis[a].column(k)) sink.rows[i].add(a * n + l, -v);
      }
      sink.flush(eb);
    }
  return {"g1", amb, eb.kernel()};
}

/// Coordinate layout of g (x) L^2 V*: index a * P + pair(k, l).
/// Value of a g (x) L^2 V* element (coordinates x) at (k, l) as g-coordinates.
inline SVecQ two_form_value(const std::vector<Q>& x, int m, int n, int k, int l) {
  if (k == l) return {};
  const int P = num_pairs(n);
  const int s = k < l ? 1 : -1;
  const int p = k < l ? pair_index(n, k, l) : pair_index(n, l, k);
  SVecQ out;
  for (int a = 0; a < m; ++a) {
    const Q& v = x[static_cast<std::size_t>(a) * P + p];
    if (v != 0) out.emplace_back(a, s * v);
  }
  return out;
}

/// Adds to `sink` the first Bianchi equations sum_cyc R(k,l) e_p = 0 for a
/// g-valued 2-form whose (a, pair) coordinate is unknown `offset + a*P + pair`
/// scaled by `scale`.
inline void bianchi_rows(const MatrixAlgebra& g, detail::RowSink& sink, long offset, const Q& scale, int k, int l,
                         int p) {
  const int n = g.n, P = num_pairs(n);
  auto term = [&](int x, int y, int z) {
    const int s = x < y ? 1 : -1;
    const int pr = x < y ? pair_index(n, x, y) : pair_index(n, y, x);
    for (int a = 0; a < g.dim(); ++a) {
      const long u = offset + static_cast<long>(a) * P + pr;
      const Q c = scale * s;
      for (const auto& [i, v] : g.basis[a].column(z)) sink.rows[i].add(static_cast<int>(u), c * v);
    }
  };
  term(k, l, p);
  term(l, p, k);
  term(p, k, l);
}

/// K(g) = ker i1: g-valued 2-forms R with sum_cyc R(u,v) w = 0.
inline SubspaceBasis curvature_space(const MatrixAlgebra& g, const Caps& caps = {}) {
  const int n = g.n;
  const long amb = static_cast<long>(g.dim()) * num_pairs(n);
  enforce_cap("curvature_space", amb, caps);
  EchelonBasis eb(static_cast<int>(amb));
  detail::RowSink sink(n, amb);
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      for (int p = l + 1; p < n; ++p) {
        bianchi_rows(g, sink, 0, Q(1), k, l, p);
        sink.flush(eb);
      }
  return {"K", amb, eb.kernel()};
}

/// True iff the g-valued 2-form x satisfies the first Bianchi identity.
inline bool satisfies_bianchi(const MatrixAlgebra& g, const SVecQ& x) {
  const int n = g.n, m = g.dim();
  std::vector<Q> d = to_dense(x, static_cast<std::size_t>(m) * num_pairs(n));
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      for (int p = l + 1; p < n; ++p) {
        Accumulator<Q> acc(n);
        auto term = [&](int x1, int y1, int z1) {
          for (const auto& [a, c] : two_form_value(d, m, n, x1, y1))
            for (const auto& [i, v] : g.basis[a].column(z1)) acc.add_product(i, c, v);
        };
        term(k, l, p);
        term(l, p, k);
        term(p, k, l);
        if (!acc.take().empty()) return false;
      }
  return true;
}

struct SpencerReport {
  int image_dim = 0;
  bool contained_in_K = false;
  std::vector<SVecQ> image_basis;
};

/// Image of the Spencer map g^(1) (x) V* -> g (x) L^2 V*,
/// T (x) e^w -> ((u,v) -> d_{vw} T(u) - d_{uw} T(v)), and its containment in K.
inline SpencerReport spencer_image(const MatrixAlgebra& g, const SubspaceBasis& g1, const SubspaceBasis& K) {
  const int n = g.n, m = g.dim(), P = num_pairs(n);
  EchelonBasis img(m * P);
  SpencerReport rep;
  for (const auto& t : g1.basis) {
    std::vector<Q> T = to_dense(t, static_cast<std::size_t>(m) * n);  // T[a*n + k]
    for (int w = 0; w < n; ++w) {
      Accumulator<Q> acc(m * P);
      for (int u = 0; u < n; ++u) {
        if (u == w) continue;
        // entry (u, w) is T(u), entry (w, u) is -T(u)
        for (int a = 0; a < m; ++a) {
          const Q& c = T[static_cast<std::size_t>(a) * n + u];
          if (c == 0) continue;
          if (u < w)
            acc.add(a * P + pair_index(n, u, w), c);
          else
            acc.add(a * P + pair_index(n, w, u), -c);
        }
      }
      SVecQ row = acc.take();
      if (img.insert(row)) rep.image_basis.push_back(row);
    }
  }
  rep.image_dim = img.rank();
  EchelonBasis kb(m * P);
  for (const auto& k : K.basis) kb.insert(k);
  rep.contained_in_K = true;
  for (const auto& r : rep.image_basis)
    if (!kb.contains(r)) rep.contained_in_K = false;
  return rep;
}

/// K^1(g) = ker i2 on K (x) V*, with i2 the cyclic sum
/// (s, u, v) -> S(s)(u,v) + S(u)(v,s) + S(v)(s,u) in g (x) L^3 V*.
/// Coordinate j * n + s is the coefficient of K_j in S(e_s).
inline SubspaceBasis second_curvature(const MatrixAlgebra& g, const SubspaceBasis& K, const Caps& caps = {}) {
  const int n = g.n, m = g.dim(), P = num_pairs(n);
  const long amb = static_cast<long>(K.dim()) * n;
  enforce_cap("second_curvature", amb, caps);
  std::vector<std::vector<Q>> Kd;
  for (const auto& k : K.basis) Kd.push_back(to_dense(k, static_cast<std::size_t>(m) * P));
  EchelonBasis eb(static_cast<int>(amb));
  detail::RowSink sink(m, amb);
  for (int s = 0; s < n; ++s)
    for (int u = s + 1; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        for (int j = 0; j < K.dim(); ++j) {
          for (const auto& [a, c] : two_form_value(Kd[j], m, n, u, v)) sink.rows[a].add(j * n + s, c);
          for (const auto& [a, c] : two_form_value(Kd[j], m, n, v, s)) sink.rows[a].add(j * n + u, c);
          for (const auto& [a, c] : two_form_value(Kd[j], m, n, s, u)) sink.rows[a].add(j * n + v, c);
        }
        sink.flush(eb);
      }
  return {"K1", amb, eb.kernel()};
}

/// Coordinates of P^(1) elements: unknown for (a <= b, pair) is
/// sym_index(a, b) * P + pair, with sym_index the upper-triangular index.
inline int sym_index(int m, int a, int b) {
  if (a > b) std::swap(a, b);
  return a * m - a * (a - 1) / 2 + (b - a);
}

/// P^(1)(g) = (S^2 g (x) L^2 V*) cap (g (x) K(g)).
inline SubspaceBasis p1_space(const MatrixAlgebra& g, const Caps& caps = {}) {
  const int n = g.n, m = g.dim(), P = num_pairs(n);
  const long amb = static_cast<long>(m) * (m + 1) / 2 * P;
  enforce_cap("p1", amb, caps);
  EchelonBasis eb(static_cast<int>(amb));
  detail::RowSink sink(n, amb);
  for (int a = 0; a < m; ++a)
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l)
        for (int p = l + 1; p < n; ++p) {
          // R^a(u,v) = sum_b P_ab(u,v) X_b
          auto term = [&](int x, int y, int z) {
            const int s = x < y ? 1 : -1;
            const int pr = x < y ? pair_index(n, x, y) : pair_index(n, y, x);
            for (int b = 0; b < m; ++b) {
              const int u = sym_index(m, a, b) * P + pr;
              for (const auto& [i, v] : g.basis[b].column(z)) sink.rows[i].add(u, s * v);
            }
          };
          term(k, l, p);
          term(l, p, k);
          term(p, k, l);
          sink.flush(eb);
        }
  return {"P1", amb, eb.kernel()};
}

/// For each P in P^(1) and each covector e^i, the map s -> sum_a (X_a s)_i P^a
/// must lie in K^1 (second Bianchi identity). Returns the number of failures.
inline long p1_second_bianchi_failures(const MatrixAlgebra& g, const SubspaceBasis& p1) {
  const int n = g.n, m = g.dim(), P = num_pairs(n);
  long failures = 0;
  for (const auto& x : p1.basis) {
    std::vector<Q> d = to_dense(x, static_cast<std::size_t>(m) * (m + 1) / 2 * P);
    // value P^a(u,v) as g-coordinates
    auto slice = [&](int a, int u, int v) {
      SVecQ out;
      if (u == v) return out;
      const int s = u < v ? 1 : -1;
      const int pr = u < v ? pair_index(n, u, v) : pair_index(n, v, u);
      for (int b = 0; b < m; ++b) {
        const Q& c = d[static_cast<std::size_t>(sym_index(m, a, b)) * P + pr];
        if (c != 0) out.emplace_back(b, s * c);
      }
      return out;
    };
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < n; ++s)
        for (int u = s + 1; u < n; ++u)
          for (int v = u + 1; v < n; ++v) {
            Accumulator<Q> acc(m);
            auto term = [&](int x1, int y1, int z1) {
              for (int a = 0; a < m; ++a) {
                Q coeff = g.basis[a].at(i, x1);
                if (coeff == 0) continue;
                for (const auto& [b, c] : slice(a, y1, z1)) acc.add_product(b, coeff, c);
              }
            };
            term(s, u, v);
            term(u, v, s);
            term(v, s, u);
            if (!acc.take().empty()) ++failures;
          }
  }
  return failures;
}

}  // namespace hol::curv
