#pragma once

// Bott-Borel-Weil on G/P. Conventions: p = Levi + negative nilradical, so a
// G-dominant character lambda gives H^0(G/P, L_lambda) = V(lambda), and
// TX = g/p has the positive roots with positive crossed coefficient as weights.

#include <hol/lie/characters.hpp>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hol::bbw {

using lie::Character;
using lie::Decomposition;
using lie::RootSystem;
using lie::Subsystem;
using lie::Weight;
using lie::operator+;
using lie::operator-;

struct ParabolicData {
  std::shared_ptr<const RootSystem> rs;
  std::vector<int> crossed;
  Subsystem levi;
  std::vector<int> nilradical;  // positive roots with a positive crossed coefficient
  Character nil_character;      // weights of TX
  Weight omega;                 // sum of crossed fundamental weights (the generator L)

  int dim_x() const { return static_cast<int>(nilradical.size()); }

  /// Abelian nilradical: every crossed node has coefficient 1 in the highest root.
  bool cominuscule() const {
    const auto& top = rs->roots()[rs->highest_root()];
    for (int c : crossed)
      if (top[c] != 1) return false;
    return true;
  }

  /// Sum of crossed simple-root coefficients of omega - mu.
  int depth(const Weight& mu) const {
    auto c = rs->to_root_coords(omega - mu);
    Q d = 0;
    for (int x : crossed) d += c[x];
    if (d.get_den() != 1) throw std::invalid_argument("depth: weight not in the root lattice coset of omega");
    return static_cast<int>(d.get_num().get_si());
  }
};

inline ParabolicData parabolic_from_nodes(const RootSystem& rs_in, std::vector<int> crossed) {
  auto rs = std::make_shared<const RootSystem>(rs_in);
  for (int c : crossed)
    if (c < 0 || c >= rs->rank()) throw std::invalid_argument("parabolic: node out of range");
  ParabolicData p{rs, crossed, Subsystem::levi(*rs, crossed), {}, {}, rs->zero_weight()};
  for (int r = 0; r < rs->num_positive(); ++r) {
    bool positive = false;
    for (int c : crossed)
      if (rs->roots()[r][c] > 0) positive = true;
    if (positive) {
      p.nilradical.push_back(r);
      p.nil_character[rs->root_weight(r)] += 1;
    }
  }
  for (int c : crossed) p.omega = p.omega + rs->fundamental(c);
  return p;
}

/// Maximal parabolic for a single (0-based) node.
inline ParabolicData parabolic_from_node(const RootSystem& rs, int node) { return parabolic_from_nodes(rs, {node}); }

/// Homogeneous bundle whose fiber is a direct sum of Levi-irreducible P-modules.
struct HomogeneousBundle {
  std::string name;
  Decomposition summands;  // Levi-dominant highest weights with multiplicities

  long rank(const ParabolicData& par) const {
    long r = 0;
    for (const auto& [w, m] : summands) r += m * lie::weyl_dimension(par.levi, w).get_si();
    return r;
  }

  Character character(const ParabolicData& par) const {
    Character c;
    for (const auto& [w, m] : summands)
      for (const auto& [mu, k] : lie::weight_multiplicities(par.levi, w)) c[mu] += m * k;
    return c;
  }
};

inline HomogeneousBundle bundle_from_character(const ParabolicData& par, std::string name, const Character& chr) {
  return {std::move(name), lie::decompose_character(par.levi, chr)};
}

inline HomogeneousBundle line_bundle(const ParabolicData& par, const Weight& w) {
  if (!par.levi.is_dominant(w) || lie::weyl_dimension(par.levi, w) != 1)
    throw std::invalid_argument("line_bundle: weight is not a character of P");
  return {"L(" + lie::format_weight(w) + ")", {{w, 1}}};
}

inline HomogeneousBundle tangent_bundle(const ParabolicData& par) {
  return bundle_from_character(par, "TX", par.nil_character);
}

/// Cohomology as G-modules per degree.
struct CohomologyTable {
  std::map<int, Decomposition> degrees;
  bool exact = true;
  std::string method = "kostant";

  Decomposition at(int q) const {
    auto it = degrees.find(q);
    return it == degrees.end() ? Decomposition{} : it->second;
  }

  long dim(const RootSystem& rs, int q) const {
    long d = 0;
    for (const auto& [w, m] : at(q)) d += m * lie::weyl_dimension(rs, w).get_si();
    return d;
  }

  /// Virtual character sum_q (-1)^q [H^q].
  std::map<Weight, long> euler() const {
    std::map<Weight, long> e;
    for (const auto& [q, dec] : degrees)
      for (const auto& [w, m] : dec) e[w] += (q % 2 == 0 ? m : -m);
    for (auto it = e.begin(); it != e.end();) it = it->second == 0 ? e.erase(it) : std::next(it);
    return e;
  }

  long euler_dim(const RootSystem& rs) const {
    long s = 0;
    for (const auto& [w, m] : euler()) s += m * lie::weyl_dimension(rs, w).get_si();
    return s;
  }

  void add(int q, const Weight& w, long m) {
    if (m == 0) return;
    degrees[q][w] += m;
  }
};

/// Kostant: each summand lambda contributes V(w.lambda) in degree l(w), or
/// nothing if lambda + rho is singular.
inline CohomologyTable kostant_cohomology(const ParabolicData& par, const HomogeneousBundle& bundle) {
  CohomologyTable t;
  for (const auto& [w, m] : bundle.summands) {
    if (!par.levi.is_dominant(w)) throw std::invalid_argument("kostant_cohomology: summand not Levi-dominant");
    auto r = lie::rho_shift_resolve(*par.rs, w);
    if (!r.singular) t.add(r.length, r.dominant, m);
  }
  return t;
}

/// Euler characteristic through G/B: every weight nu of the fiber
/// contributes (-1)^l(w) V(w.nu). Independent of the Levi decomposition.
inline std::map<Weight, long> euler_via_borel(const RootSystem& rs, const Character& fiber) {
  std::map<Weight, long> e;
  for (const auto& [nu, m] : fiber) {
    auto r = lie::rho_shift_resolve(rs, nu);
    if (!r.singular) e[r.dominant] += (r.length % 2 == 0 ? m : -m);
  }
  for (auto it = e.begin(); it != e.end();) it = it->second == 0 ? e.erase(it) : std::next(it);
  return e;
}

enum class ConormalVariant {
  kJet,        // N = J^1 L: the bundle whose L-twist has H^0 = g + C
  kEmbedding,  // normal bundle of X in P(V*): rank dim P(V*) - dim X
};

/// Weights of V = V(omega) (the Borel-Weil module of L).
inline Character borel_weil_weights(const ParabolicData& par) { return lie::weight_multiplicities(*par.rs, par.omega); }

/// Fiber of N* by weight arithmetic. Jet: weights -mu over mu of depth <= 1
/// (dual of V / V_{>=2}). Embedding: mu - omega over mu of depth >= 2.
inline Character conormal_character(const ParabolicData& par, ConormalVariant variant) {
  if (!par.cominuscule())
    throw std::invalid_argument("conormal_fiber: parabolic is not cominuscule; fiber need not be completely reducible");
  Character out;
  for (const auto& [mu, m] : borel_weil_weights(par)) {
    int d = par.depth(mu);
    if (variant == ConormalVariant::kJet && d <= 1) out[-mu] += m;
    if (variant == ConormalVariant::kEmbedding && d >= 2) out[mu - par.omega] += m;
  }
  return out;
}

inline HomogeneousBundle conormal_fiber(const ParabolicData& par, ConormalVariant variant) {
  return bundle_from_character(par, variant == ConormalVariant::kJet ? "N*(jet)" : "N*(embedding)",
                               conormal_character(par, variant));
}

/// Graded pieces of L (x) S^k N*, as Levi characters.
inline std::vector<Character> twisted_conormal_pieces(const ParabolicData& par, int k, ConormalVariant variant) {
  if (k < 0 || k > 3) throw std::invalid_argument("twisted_conormal: k must be in 0..3 (plethysm cap)");
  std::vector<Character> pieces;
  if (variant == ConormalVariant::kJet) {
    // N* has graded pieces L* and TX (x) L*, hence
    // L (x) S^k N* = sum_j S^j TX (x) L^{1-k}.
    const Weight shift = lie::scaled(par.omega, 1 - k);
    for (int j = 0; j <= k; ++j)
      pieces.push_back(lie::shift_character(lie::symmetric_power_character(par.nil_character, j), shift));
  } else {
    // S^k N* is graded by total depth; each graded piece is a Levi module.
    Character all = conormal_character(par, variant);
    if (k == 0) return {Character{{par.omega, 1}}};
    if (all.empty()) return {};
    Character sym = lie::shift_character(lie::symmetric_power_character(all, k), par.omega);
    // Split the symmetric power by total depth of the weights.
    std::map<int, Character> split;
    for (const auto& [w, m] : sym) split[par.depth(w)][w] += m;
    for (auto& [d, c] : split) pieces.push_back(c);
  }
  return pieces;
}

/// Graded (E1) cohomology of a filtered bundle: Kostant on every Levi
/// summand of every graded piece.
inline CohomologyTable graded_cohomology(const ParabolicData& par, const std::vector<Character>& pieces) {
  CohomologyTable t;
  t.method = "graded";
  t.exact = false;
  for (const auto& c : pieces) {
    auto piece = kostant_cohomology(par, bundle_from_character(par, "piece", c));
    for (const auto& [q, dec] : piece.degrees)
      for (const auto& [w, m] : dec) t.add(q, w, m);
  }
  return t;
}

/// Exact cohomology from the graded bound: an irreducible appearing in one
/// degree only is exact there (the Euler character is exact). Irreducibles
/// spread over degrees {0, 1} are resolved with an exact H^0 if supplied.
inline CohomologyTable resolve_filtered(const CohomologyTable& graded, const std::optional<Decomposition>& exact_h0) {
  CohomologyTable out;
  out.method = "graded+euler";
  const auto chi = graded.euler();
  std::map<Weight, std::vector<int>> where;
  for (const auto& [q, dec] : graded.degrees)
    for (const auto& [w, m] : dec)
      if (m > 0) where[w].push_back(q);
  for (const auto& [w, qs] : where) {
    if (qs.size() == 1) {
      out.add(qs[0], w, graded.at(qs[0]).at(w));
      continue;
    }
    bool low = true;
    for (int q : qs) low = low && q <= 1;
    if (low && exact_h0) {
      long h0 = exact_h0->count(w) ? exact_h0->at(w) : 0;
      long c = chi.count(w) ? chi.at(w) : 0;
      out.add(0, w, h0);
      out.add(1, w, h0 - c);
      out.method = "graded+euler+frobenius";
      continue;
    }
    for (int q : qs) out.add(q, w, graded.at(q).at(w));
    out.exact = false;
  }
  for (auto it = out.degrees.begin(); it != out.degrees.end();) {
    for (auto jt = it->second.begin(); jt != it->second.end();)
      jt = jt->second == 0 ? it->second.erase(jt) : std::next(jt);
    it = it->second.empty() ? out.degrees.erase(it) : std::next(it);
  }
  return out;
}

/// H^*(X, L (x) S^k N*). `exact_h0` is an independently computed H^0 used
/// only for irreducibles the graded computation cannot pin down.
inline CohomologyTable twisted_conormal_cohomology(const ParabolicData& par, int k, ConormalVariant variant,
                                                   const std::optional<Decomposition>& exact_h0 = std::nullopt) {
  return resolve_filtered(graded_cohomology(par, twisted_conormal_pieces(par, k, variant)), exact_h0);
}

/// Full fiber character of L (x) S^k N*.
inline Character twisted_conormal_character(const ParabolicData& par, int k, ConormalVariant variant) {
  Character c;
  for (const auto& p : twisted_conormal_pieces(par, k, variant))
    for (const auto& [w, m] : p) c[w] += m;
  return c;
}

}  // namespace hol::bbw
