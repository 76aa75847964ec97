#pragma once

// Second-order jets of the coframe theta + omega and the maps a, b, c on the
// leaf, in the frame xi_w dual to the coframe. For a function f,
// xi_w f is given by the structure equations; second derivatives come from
// differentiating those again, and [xi_1, xi_2] = xi_{C(w1,w2)} supplies the
// integrability conditions that the jets must satisfy.

#include <hol/poisson/poisson.hpp>

namespace hol::poisson {

/// Basis element k of W = g + V.
inline LinearObs w_basis(const Model& m, int k) {
  if (k < m.dim_g()) return {{{k, Q(1)}}, {}};
  return {{}, {{k - m.dim_g(), Q(1)}}};
}

/// Matrix M[i][j] = phi(c, d, e_i, e_j) for phi2 (with any corruption) and
/// c, d in g given by coordinates.
inline DenseQ phi_contract(const curv::Phi2Table& t, const PhiMap& phi, const std::vector<Q>& c,
                           const std::vector<Q>& d) {
  const int n = t.n;
  DenseQ M(n, std::vector<Q>(n, Q(0)));
  for (int C = 0; C < t.dim_g; ++C) {
    if (c[C] == 0) continue;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Q v = c[C] * sparse_dot_dense(t.rows[C].at_pair(i, j), d);
        if (v == 0) continue;
        M[i][j] += v;
        M[j][i] -= v;
      }
  }
  for (const auto& e : phi.corruption) {
    Q sym = c[e.C] * d[e.D];
    if (e.C != e.D) sym += c[e.D] * d[e.C];
    M[e.u][e.v] += e.value * sym;
    M[e.v][e.u] -= e.value * sym;
  }
  return M;
}

/// Values at the center: a, b, c and the first frame derivatives of a and b.
struct JetConnection {
  WPoint center;
  Q tau;
  std::vector<WPoint> first;           // xi_k (a, b) for each basis element k of W
  CurvatureElement curvature;          // -1/2 (d omega + omega ^ omega)(xi_x, xi_y)
  DenseQ c;                            // c(e_i, e_j)
};

struct JetReport {
  bool center_in_u0 = false;
  int curvature_span = 0;
  long torsion_nonzero = 0;
  long curvature_mismatch = 0;
  long a_equation_order1 = 0;
  long b_equation_order1 = 0;
  long a_equation_order2 = 0;
  long b_equation_order2 = 0;
  long coframe_jacobi_order2 = 0;
  long c_not_tau = 0;
  long c_not_constant = 0;
  int sampled_pairs = 0;
  int sampled_triples = 0;
  std::uint64_t seed = 0;

  bool passed() const {
    return torsion_nonzero == 0 && curvature_mismatch == 0 && a_equation_order1 == 0 && b_equation_order1 == 0 &&
           a_equation_order2 == 0 && b_equation_order2 == 0 && coframe_jacobi_order2 == 0 && c_not_tau == 0 && c_not_constant == 0;
  }
};

namespace detail {

inline WPoint dense_point(const Model& m, const LinearObs& w) {
  return {to_dense(w.A, m.dim_g()), to_dense(w.x, m.dim_v())};
}

/// xi_w (a, b) from the bracket relations: f -> {w, f}.
inline WPoint anchor(const PointState& st, const LinearObs& w) {
  const Model& m = st.model();
  WPoint out{std::vector<Q>(m.dim_g()), std::vector<Q>(m.dim_v())};
  for (int c = 0; c < m.dim_g(); ++c) out.p[c] = st.bracket(w, w_basis(m, c));
  for (int i = 0; i < m.dim_v(); ++i) out.nu[i] = st.bracket(w, w_basis(m, m.dim_g() + i));
  return out;
}

/// Coadjoint action (A . a)(X) = -a([A, X]).
inline std::vector<Q> coadjoint(const Model& m, const SVecQ& A, const std::vector<Q>& a) {
  std::vector<Q> out(m.dim_g(), Q(0));
  for (const auto& [x, cx] : A)
    for (int c = 0; c < m.dim_g(); ++c)
      for (const auto& [d, v] : m.cb.bracket(x, c)) out[c] -= cx * v * a[d];
  return out;
}

/// Dual action (A . b)(y) = -b(A y).
inline std::vector<Q> dual_action(const Model& m, const SVecQ& A, const std::vector<Q>& b) {
  std::vector<Q> out(m.dim_v(), Q(0));
  for (const auto& [x, cx] : A)
    for (int j = 0; j < m.dim_v(); ++j)
      for (const auto& [i, r] : m.rep[x].column(j)) out[j] -= cx * r * b[i];
  return out;
}

/// j(nu (x) y)(X) = (X . nu)(y) = -nu(X y).
inline std::vector<Q> jmath(const Model& m, const std::vector<Q>& nu, const SVecQ& y) {
  std::vector<Q> out(m.dim_g(), Q(0));
  for (int c = 0; c < m.dim_g(); ++c)
    for (const auto& [j, yj] : y)
      for (const auto& [i, r] : m.rep[c].column(j)) out[c] -= yj * r * nu[i];
  return out;
}

inline SVecQ raise(const Model& m, const std::vector<Q>& a) { return m.Binv.left(to_sparse(a)); }

inline long count_diff(const std::vector<Q>& x, const std::vector<Q>& y) {
  long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) ++s;
  return s;
}

}  // namespace detail

/// Right side of the a equation along xi_w: -A . a + j(b (x) y).
inline std::vector<Q> rhs_a_equation(const Model& m, const WPoint& z, const LinearObs& w) {
  std::vector<Q> out = detail::coadjoint(m, w.A, z.p);
  std::vector<Q> j = detail::jmath(m, z.nu, w.x);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = -out[c] + j[c];
  return out;
}

/// Right side of the b equation along xi_w: -A . b + (a^2 -| phi2 + tau)(y, .),
/// with aa = phi(a#, a#, ., .).
inline std::vector<Q> rhs_b_equation(const Model& m, const PhiMap& phi, const WPoint& z, const DenseQ& aa,
                                      const LinearObs& w) {
  std::vector<Q> out = detail::dual_action(m, w.A, z.nu);
  for (auto& v : out) v = -v;
  for (const auto& [j, yj] : w.x)
    for (int i = 0; i < m.dim_v(); ++i) out[i] += yj * (aa[j][i] + phi.tau * m.pairing.at(j, i));
  return out;
}

/// Linearization of (rhs_a_equation, rhs_b_equation) at z in the direction dz, with
/// ada = phi(a#, da#) + phi(da#, a#).
inline WPoint rhs_linearized(const Model& m, const LinearObs& w, const WPoint& dz, const DenseQ& ada) {
  WPoint out;
  out.p = detail::coadjoint(m, w.A, dz.p);
  for (auto& v : out.p) v = -v;
  std::vector<Q> j = detail::jmath(m, dz.nu, w.x);
  for (std::size_t c = 0; c < out.p.size(); ++c) out.p[c] += j[c];
  out.nu = detail::dual_action(m, w.A, dz.nu);
  for (auto& v : out.nu) v = -v;
  for (const auto& [k, yk] : w.x)
    for (int i = 0; i < m.dim_v(); ++i) out.nu[i] += yk * ada[k][i];
  return out;
}

inline DenseQ add_matrices(DenseQ a, const DenseQ& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] += b[i][j];
  return a;
}

/// Builds the jets at `center` and checks them against the structure equations.
/// Order-2 conditions are checked on `pairs` seeded random pairs and `triples`
/// seeded random triples of basis elements of W.
inline std::pair<JetConnection, JetReport> jet_verify(const PhiMap& phi, const curv::FormulaData& fd,
                                                      const WPoint& center, int pairs, int triples,
                                                      std::uint64_t seed) {
  const Model& m = *phi.model;
  const int dg = m.dim_g(), n = m.dim_v(), N = dg + n;
  PointState st(phi, center);
  JetConnection jet{center, phi.tau, {}, CurvatureElement(dg, n), {}};
  JetReport rep;
  rep.seed = seed;

  const std::vector<Q> asharp = to_dense(detail::raise(m, center.p), dg);
  const DenseQ aa = phi_contract(fd.phi2, phi, asharp, asharp);

  // first derivatives from the bracket relations, compared with the a and b equations
  for (int k = 0; k < N; ++k) {
    const LinearObs w = w_basis(m, k);
    WPoint d = detail::anchor(st, w);
    rep.a_equation_order1 += detail::count_diff(d.p, rhs_a_equation(m, center, w));
    rep.b_equation_order1 += detail::count_diff(d.nu, rhs_b_equation(m, phi, center, aa, w));
    jet.first.push_back(std::move(d));
  }

  // torsion and curvature from [xi_1, xi_2] = xi_{C(w1, w2)}:
  // (d theta + omega ^ theta)(xi_1, xi_2) = -theta(C) + A1 y2 - A2 y1,
  // (d omega + omega ^ omega)(xi_1, xi_2) = -omega(C) + [A1, A2].
  for (int k = 0; k < dg; ++k)
    for (int l = k + 1; l < N; ++l) {
      const LinearObs w1 = w_basis(m, k), w2 = w_basis(m, l);
      const LinearObs C = st.bracket_differential(w1, w2);
      SVecQ t = sparse_axpy(sparse_axpy(detail::act_vector(m, w1.A, w2.x), Q(-1), detail::act_vector(m, w2.A, w1.x)),
                            Q(-1), C.x);
      if (!t.empty()) ++rep.torsion_nonzero;
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const LinearObs C = st.bracket_differential(w_basis(m, dg + i), w_basis(m, dg + j));
      if (!C.x.empty()) ++rep.torsion_nonzero;
      // curvature -1/2 Omega = 1/2 omega(C)
      jet.curvature.values[curv::pair_index(n, i, j)] = sparse_scaled(C.A, Q(1, 2));
    }
  rep.curvature_mismatch = 0;
  {
    CurvatureElement expect = curv::phi2_prime_at(fd, center.p);
    for (std::size_t p = 0; p < expect.values.size(); ++p)
      if (expect.values[p] != jet.curvature.values[p]) ++rep.curvature_mismatch;
  }
  rep.curvature_span = curv::span_dimension(jet.curvature);
  rep.center_in_u0 = rep.curvature_span == dg;

  // c(x, y) = db(xi_x)(y) - phi2(a, a, x, y) must equal tau <x, y>
  jet.c.assign(n, std::vector<Q>(n, Q(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      jet.c[i][j] = jet.first[dg + i].nu[j] - aa[i][j];
      if (jet.c[i][j] != phi.tau * m.pairing.at(i, j)) ++rep.c_not_tau;
    }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, N - 1);

  // order 2 for a and b: xi_1 xi_2 z - xi_2 xi_1 z = xi_{C(w1,w2)} z, with the
  // second derivatives obtained by differentiating the a and b equations
  for (int s = 0; s < pairs; ++s) {
    int k = pick(rng), l = pick(rng);
    if (k == l) l = (l + 1) % N;
    const LinearObs w1 = w_basis(m, k), w2 = w_basis(m, l);
    auto ada = [&](const WPoint& dz) {
      const std::vector<Q> ds = to_dense(detail::raise(m, dz.p), dg);
      return add_matrices(phi_contract(fd.phi2, phi, asharp, ds), phi_contract(fd.phi2, phi, ds, asharp));
    };
    const DenseQ ada_k = ada(jet.first[k]);
    WPoint d12 = rhs_linearized(m, w2, jet.first[k], ada_k);
    WPoint d21 = rhs_linearized(m, w1, jet.first[l], ada(jet.first[l]));
    WPoint dc = detail::anchor(st, st.bracket_differential(w1, w2));
    for (int c = 0; c < dg; ++c)
      if (d12.p[c] - d21.p[c] != dc.p[c]) ++rep.a_equation_order2;
    for (int i = 0; i < n; ++i)
      if (d12.nu[i] - d21.nu[i] != dc.nu[i]) ++rep.b_equation_order2;
    ++rep.sampled_pairs;

    // dc = 0: xi_w of db(xi_x)(y) through the bracket relations minus
    // xi_w of phi2(a, a, x, y), for w = w1
    const WPoint& da = jet.first[k];
    const WPoint zero = zero_point(m);
    PointState plus(phi, {[&] {
                            std::vector<Q> v = center.p;
                            for (int c = 0; c < dg; ++c) v[c] += da.p[c];
                            return v;
                          }(),
                          zero.nu});
    PointState only(phi, {da.p, zero.nu});
    PointState base(phi, {center.p, zero.nu});
    PointState origin(phi, zero);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const Q dphi = plus.phi_matrix()[i][j] - base.phi_matrix()[i][j] - only.phi_matrix()[i][j] +
                       origin.phi_matrix()[i][j];
        if (dphi != ada_k[i][j]) ++rep.c_not_constant;
      }
  }

  // order 2 for the coframe: sum_cyc C(C(w1,w2), w3) - xi_{w3} C(w1,w2) = 0,
  // where C depends on the point only through d phi_a^*(y1, y2), linear in a
  for (int s = 0; s < triples; ++s) {
    int idx[3] = {pick(rng), pick(rng), pick(rng)};
    LinearObs w[3] = {w_basis(m, idx[0]), w_basis(m, idx[1]), w_basis(m, idx[2])};
    LinearObs total;
    for (int r = 0; r < 3; ++r) {
      const LinearObs &u = w[r], &v = w[(r + 1) % 3], &x = w[(r + 2) % 3];
      LinearObs cc = st.bracket_differential(st.bracket_differential(u, v), x);
      PointState deriv(PhiMap{phi.model, Q(0), phi.corruption}, {jet.first[idx[(r + 2) % 3]].p, zero_point(m).nu});
      SVecQ dC = deriv.dphi_star(u.x, v.x);
      total.A = sparse_axpy(sparse_axpy(total.A, Q(1), cc.A), Q(-1), dC);
      total.x = sparse_axpy(total.x, Q(1), cc.x);
    }
    if (!total.A.empty() || !total.x.empty()) ++rep.coframe_jacobi_order2;
    ++rep.sampled_triples;
  }
  return {std::move(jet), rep};
}

}  // namespace hol::poisson
