#pragma once

// The deformed Lie-Poisson structure on W* = g* + V*:
// {f,g}_{p+nu} = p([A,B]) + nu(A.y - B.x) + phi(p)(x,y), df = A + x, dg = B + y.

#include <hol/curv/formula.hpp>
#include <hol/rep/checks.hpp>

#include <random>
#include <set>

namespace hol::poisson {

using curv::CurvatureElement;
using rep::DenseQ;
using rep::Model;
using rep::SparseMatrix;

/// Additive change phi(C,D,u,v) += value, made symmetric in (C,D) and skew in (u,v).
struct PhiEntry {
  int C, D, u, v;
  Q value;
};

/// phi = phi2 + tau <.,.>, optionally with corrupted entries.
struct PhiMap {
  const Model* model = nullptr;
  Q tau = 0;
  std::vector<PhiEntry> corruption;

  static PhiMap phi2(const Model& m, const Q& tau = 0) { return PhiMap{&m, tau, {}}; }
};

/// phi2 with one entry changed, used as a negative control.
inline PhiMap corrupted_phi2(const Model& m) {
  PhiMap phi = PhiMap::phi2(m);
  phi.corruption.push_back({m.cb.cartan_index(0), m.cb.cartan_index(0), 0, rep::lowest_index(m.rep), Q(1)});
  return phi;
}

/// tau <.,.> is invariant iff <.,.> is; the residual is the pairing's.
inline long tau_invariance_failures(const PhiMap& phi) {
  if (phi.tau == 0) return 0;
  return rep::pairing_invariance_failures(phi.model->rep, phi.model->pairing);
}

struct WPoint {
  std::vector<Q> p;   // p(X_a)
  std::vector<Q> nu;  // nu(e_i)
};

inline WPoint zero_point(const Model& m) {
  return {std::vector<Q>(m.dim_g(), Q(0)), std::vector<Q>(m.dim_v(), Q(0))};
}

/// Entries with numerators in [-10,10] and denominators in [1,10].
inline WPoint random_point(const Model& m, std::mt19937_64& rng) {
  auto dense = [&](int n) { return to_dense(rep::random_vector(rng, n), n); };
  WPoint pt;
  pt.p = dense(m.dim_g());
  pt.nu = dense(m.dim_v());
  return pt;
}

/// A linear observable on W*, i.e. an element A + x of W = g + V.
struct LinearObs {
  SVecQ A;
  SVecQ x;
};

/// Random sparse element of W with `g_terms` and `v_terms` nonzero coordinates.
inline LinearObs random_observable(std::mt19937_64& rng, int dg, int n, int g_terms = 4, int v_terms = 12) {
  std::uniform_int_distribution<long> num(-10, 10), den(1, 10);
  auto pick = [&](int dim, int terms) {
    std::vector<int> idx(dim);
    for (int i = 0; i < dim; ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(std::min(terms, dim));
    std::sort(idx.begin(), idx.end());
    SVecQ v;
    for (int i : idx) {
      long a = num(rng);
      if (a == 0) a = 1;
      v.emplace_back(i, rational(Z(a), Z(den(rng))));
    }
    return v;
  };
  return {pick(dg, g_terms), pick(n, v_terms)};
}

/// Polynomial on W*: variable a < dim_g is p(X_a), variable dim_g + i is nu(e_i).
class PolyObservable {
 public:
  using Monomial = std::vector<int>;  // sorted variable indices

  PolyObservable() = default;
  PolyObservable(int dg, int n) : dg_(dg), n_(n) {}

  static PolyObservable linear(int dg, int n, const LinearObs& w) {
    PolyObservable f(dg, n);
    for (const auto& [a, c] : w.A) f.add({a}, c);
    for (const auto& [i, c] : w.x) f.add({dg + i}, c);
    return f;
  }

  static PolyObservable constant(int dg, int n, const Q& c) {
    PolyObservable f(dg, n);
    f.add({}, c);
    return f;
  }

  void add(Monomial mono, const Q& c) {
    std::sort(mono.begin(), mono.end());
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(std::move(mono), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::map<Monomial, Q>& terms() const { return terms_; }

  Q evaluate(const WPoint& pt) const {
    Q s = 0;
    for (const auto& [mono, c] : terms_) {
      Q t = c;
      for (int v : mono) t *= var(pt, v);
      s += t;
    }
    return s;
  }

  /// df at pt, split as A + x.
  LinearObs gradient(const WPoint& pt) const {
    Accumulator<Q> ga(dg_), gx(n_);
    for (const auto& [mono, c] : terms_)
      for (std::size_t k = 0; k < mono.size(); ++k) {
        if (k > 0 && mono[k] == mono[k - 1]) continue;
        // d/dv of c * v^mult * rest = c * mult * v^(mult-1) * rest
        const int v = mono[k];
        const long mult = std::count(mono.begin(), mono.end(), v);
        Q d = c * mult;
        for (long e = 1; e < mult; ++e) d *= var(pt, v);
        for (int w : mono)
          if (w != v) d *= var(pt, w);
        if (v < dg_)
          ga.add(v, d);
        else
          gx.add(v - dg_, d);
      }
    return {ga.take(), gx.take()};
  }

  friend PolyObservable operator*(const PolyObservable& f, const PolyObservable& g) {
    PolyObservable h(f.dg_, f.n_);
    for (const auto& [m1, c1] : f.terms_)
      for (const auto& [m2, c2] : g.terms_) {
        Monomial mono = m1;
        mono.insert(mono.end(), m2.begin(), m2.end());
        h.add(std::move(mono), c1 * c2);
      }
    return h;
  }

  friend PolyObservable operator+(const PolyObservable& f, const PolyObservable& g) {
    PolyObservable h = f;
    for (const auto& [mono, c] : g.terms_) h.add(mono, c);
    return h;
  }

 private:
  Q var(const WPoint& pt, int v) const { return v < dg_ ? pt.p[v] : pt.nu[v - dg_]; }

  int dg_ = 0, n_ = 0;
  std::map<Monomial, Q> terms_;
};

namespace detail {

inline SVecQ act_vector(const Model& m, const SVecQ& A, const SVecQ& y) {
  Accumulator<Q> acc(m.dim_v());
  for (const auto& [a, c] : A)
    for (const auto& [j, yj] : y) {
      const Q s = c * yj;
      for (const auto& [i, r] : m.rep[a].column(j)) acc.add_product(i, s, r);
    }
  return acc.take();
}

inline Q dense_dot(const SVecQ& a, const std::vector<Q>& b) { return sparse_dot_dense(a, b); }

}  // namespace detail

/// Everything about phi at one point of W*.
class PointState {
 public:
  PointState(const PhiMap& phi, WPoint pt) : phi_(phi), m_(*phi.model), pt_(std::move(pt)) {
    const int n = m_.dim_v();
    psharp_ = m_.Binv.left(to_sparse(pt_.p));
    P_ = m_.rep.act(psharp_);
    const Q pp = sparse_dot_dense(psharp_, pt_.p);
    Phi_.assign(n, std::vector<Q>(n, Q(0)));
    std::vector<SVecQ> wcols(n);
    for (int j = 0; j < n; ++j) wcols[j] = m_.pairing.left(P_.column(j));  // y -> <P e_j, y>
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        // phi2(p#, p#, e_i, e_j) = 2 lambda mu <e_i,e_j> p(p#) + (2/lambda) <P e_i, P e_j>
        Q v = 2 * m_.lambda * m_.mu * m_.pairing.at(i, j) * pp + 2 / m_.lambda * sparse_dot(wcols[i], P_.column(j));
        v += phi_.tau * m_.pairing.at(i, j);
        Phi_[i][j] += v;
        Phi_[j][i] -= v;
      }
    for (const auto& e : phi_.corruption) {
      const Q v = corruption_weight(e) * e.value * coord(psharp_, e.C) * coord(psharp_, e.D);
      Phi_[e.u][e.v] += v;
      Phi_[e.v][e.u] -= v;
    }
  }

  const WPoint& point() const { return pt_; }
  const SVecQ& psharp() const { return psharp_; }
  const Model& model() const { return m_; }
  const PhiMap& phi_map() const { return phi_; }

  /// phi(p)(x, y).
  Q phi(const SVecQ& x, const SVecQ& y) const {
    Q s = 0;
    for (const auto& [i, xi] : x)
      for (const auto& [j, yj] : y) s += xi * yj * Phi_[i][j];
    return s;
  }

  const DenseQ& phi_matrix() const { return Phi_; }

  /// d phi_p^*(x, y) in g = T_p^* g*.
  SVecQ dphi_star(const SVecQ& x, const SVecQ& y) const {
    SVecQ r = rpsharp(x, y);
    SVecQ out = sparse_scaled(r, Q(2));
    for (const auto& e : phi_.corruption) {
      Q w = 0;
      for (const auto& [i, xi] : x)
        for (const auto& [j, yj] : y) {
          if (i == e.u && j == e.v) w += xi * yj;
          if (i == e.v && j == e.u) w -= xi * yj;
        }
      if (w == 0) continue;
      // gradient of value * k * p#_C p#_D, with k = 1 or 2
      const Q k = corruption_weight(e) * e.value * w;
      out = sparse_axpy(out, Q(k * coord(psharp_, e.D)), m_.Binv.rows[e.C]);
      out = sparse_axpy(out, Q(k * coord(psharp_, e.C)), m_.Binv.rows[e.D]);
    }
    return out;
  }

  /// R_{p#}(x, y) = 2 lambda mu <x,y> p# + x o P y - y o P x.
  SVecQ rpsharp(const SVecQ& x, const SVecQ& y) const {
    SVecQ r = sparse_scaled(psharp_, Q(2 * m_.lambda * m_.mu * m_.pairing(x, y)));
    r = sparse_axpy(r, Q(1), m_.circ(x, P_.apply(y)));
    r = sparse_axpy(r, Q(-1), m_.circ(y, P_.apply(x)));
    return r;
  }

  /// p([A, B]).
  Q p_bracket(const SVecQ& A, const SVecQ& B) const {
    Q s = 0;
    for (const auto& [a, x] : A)
      for (const auto& [b, y] : B)
        for (const auto& [c, v] : m_.cb.bracket(a, b)) s += x * y * v * pt_.p[c];
    return s;
  }

  /// The bivector on two elements of W.
  Q bracket(const LinearObs& F, const LinearObs& G) const {
    Q s = p_bracket(F.A, G.A);
    s += detail::dense_dot(detail::act_vector(m_, F.A, G.x), pt_.nu);
    s -= detail::dense_dot(detail::act_vector(m_, G.A, F.x), pt_.nu);
    s += phi(F.x, G.x);
    return s;
  }

  /// d{F, G} at the point, an element of W.
  LinearObs bracket_differential(const LinearObs& F, const LinearObs& G) const {
    LinearObs d;
    d.A = sparse_axpy(m_.cb.bracket(F.A, G.A), Q(1), dphi_star(F.x, G.x));
    d.x = sparse_axpy(detail::act_vector(m_, F.A, G.x), Q(-1), detail::act_vector(m_, G.A, F.x));
    return d;
  }

  /// d phi_p^* as a g-valued 2-form on V.
  CurvatureElement dphi_element() const {
    const int n = m_.dim_v();
    CurvatureElement R = curv::curvature_element(m_, psharp_);
    for (auto& v : R.values) v = sparse_scaled(v, Q(2));
    std::set<std::pair<int, int>> touched;
    for (const auto& e : phi_.corruption) touched.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
    for (const auto& [u, v] : touched) {
      const SVecQ eu{{u, Q(1)}}, ev{{v, Q(1)}};
      SVecQ delta = sparse_axpy(dphi_star(eu, ev), Q(-2), rpsharp(eu, ev));
      SVecQ& slot = R.values[curv::pair_index(n, u, v)];
      slot = sparse_axpy(slot, Q(1), delta);
    }
    return R;
  }

 private:
  static Q coord(const SVecQ& v, int i) {
    for (const auto& [k, c] : v)
      if (k == i) return c;
    return 0;
  }
  static Q corruption_weight(const PhiEntry& e) { return e.C == e.D ? Q(1) : Q(2); }

  PhiMap phi_;
  const Model& m_;
  WPoint pt_;
  SVecQ psharp_;
  SparseMatrix P_;
  DenseQ Phi_;
};

/// {f, g} at a point for polynomial observables.
inline Q poisson_bracket(const PolyObservable& f, const PolyObservable& g, const PointState& st) {
  return st.bracket(f.gradient(st.point()), g.gradient(st.point()));
}

/// {{f,g},h} + {{g,h},f} + {{h,f},g} for linear observables.
inline Q jacobi_residual(const PointState& st, const LinearObs& f, const LinearObs& g, const LinearObs& h) {
  return st.bracket(st.bracket_differential(f, g), h) + st.bracket(st.bracket_differential(g, h), f) +
         st.bracket(st.bracket_differential(h, f), g);
}

struct JacobiReport {
  std::uint64_t seed = 0;
  int points = 0;
  int triples_per_point = 0;
  long evaluations = 0;
  long nonzero = 0;
  int first_failing_point = -1;
  bool passed() const { return nonzero == 0; }
};

inline JacobiReport jacobi_sweep(const PhiMap& phi, int points, int triples, std::uint64_t seed) {
  const Model& m = *phi.model;
  std::mt19937_64 rng(seed);
  JacobiReport r{seed, points, triples, 0, 0, -1};
  for (int k = 0; k < points; ++k) {
    PointState st(phi, random_point(m, rng));
    for (int t = 0; t < triples; ++t) {
      LinearObs f = random_observable(rng, m.dim_g(), m.dim_v());
      LinearObs g = random_observable(rng, m.dim_g(), m.dim_v());
      LinearObs h = random_observable(rng, m.dim_g(), m.dim_v());
      ++r.evaluations;
      if (jacobi_residual(st, f, g, h) != 0) {
        ++r.nonzero;
        if (r.first_failing_point < 0) r.first_failing_point = k;
      }
    }
  }
  return r;
}

struct PointCheck {
  bool admissible = false;  // d phi_p^* satisfies the first Bianchi identity
  bool in_u0 = false;       // d phi_p^* in K_0
  int span_dim = 0;
};

inline PointCheck check_point(const PointState& st) {
  CurvatureElement R = st.dphi_element();
  PointCheck c;
  c.admissible = curv::bianchi_failures(st.model().rep, R) == 0;
  c.span_dim = curv::span_dimension(R);
  c.in_u0 = c.span_dim == R.dim_g;
  return c;
}

/// Antisymmetric structure matrix of the bracket on the 189 coordinate functions.
inline std::vector<SVecQ> structure_matrix(const PointState& st) {
  const Model& m = st.model();
  const int dg = m.dim_g(), n = m.dim_v(), N = dg + n;
  std::vector<SVecQ> rows(N);
  for (int a = 0; a < dg; ++a) {
    Accumulator<Q> acc(N);
    for (int b = 0; b < dg; ++b)
      for (const auto& [c, v] : m.cb.bracket(a, b)) acc.add(b, st.point().p[c] * v);
    for (int i = 0; i < n; ++i)
      for (const auto& [k, v] : m.rep[a].column(i)) acc.add(dg + i, st.point().nu[k] * v);
    rows[a] = acc.take();
  }
  for (int i = 0; i < n; ++i) {
    Accumulator<Q> acc(N);
    for (int a = 0; a < dg; ++a)
      for (const auto& [k, v] : m.rep[a].column(i)) acc.add(a, -st.point().nu[k] * v);
    for (int j = 0; j < n; ++j) acc.add(dg + j, st.phi_matrix()[i][j]);
    rows[dg + i] = acc.take();
  }
  return rows;
}

struct RankResult {
  int rank = 0;
  int symmetry_dim = 0;
  bool antisymmetric = false;
};

inline RankResult poisson_rank(const PointState& st) {
  auto rows = structure_matrix(st);
  const int N = static_cast<int>(rows.size());
  RankResult r;
  r.antisymmetric = true;
  DenseQ d;
  for (const auto& row : rows) d.push_back(to_dense(row, N));
  for (int i = 0; i < N && r.antisymmetric; ++i)
    for (int j = i; j < N; ++j)
      if (d[i][j] != -d[j][i]) {
        r.antisymmetric = false;
        break;
      }
  r.rank = rank_of(rows, N);
  r.symmetry_dim = N - r.rank;
  return r;
}

}  // namespace hol::poisson
