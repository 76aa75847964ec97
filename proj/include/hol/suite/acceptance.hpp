#pragma once

// The acceptance checks, one function per criterion, shared by the command
// line tool and the acceptance runner.

#include <hol/bbw/spencer.hpp>
#include <hol/poisson/jet.hpp>
#include <hol/poisson/schur.hpp>
#include <hol/rep/cache.hpp>
#include <hol/rep/checks.hpp>

#include <json.hpp>

#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hol::suite {

using nlohmann::json;
using rep::Model;

struct Config {
  std::uint64_t seed = 2024;
  Q tau = 0;  // phi = phi2 + tau <.,.> for the base Poisson checks
  int quartic_samples = 100;
  int jacobi_points = 100;
  int jacobi_triples = 20;
  std::vector<Q> taus = {Q(1), Q(-2), Q(1, 3)};
  int u0_points = 3;
  int jet_pairs = 20;
  int jet_triples = 10;
  curv::Caps caps;
  bool corrupted_phi2 = false;  // negative-control fixture for the Poisson checks
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  json details;
  double seconds = 0;
};

/// Model plus lazily built formula data.
class Context {
 public:
  Context(const Model& m, Config cfg) : m_(m), cfg_(std::move(cfg)) {}
  const Model& model() const { return m_; }
  const Config& config() const { return cfg_; }
  const curv::FormulaData& formula() {
    if (!fd_) fd_ = curv::build_formula_data(m_);
    return *fd_;
  }
  /// Wall time of the model construction (or cache load), if measured.
  std::optional<double> build_seconds;

  poisson::PhiMap phi() const { return phi(cfg_.tau); }
  poisson::PhiMap phi(const Q& tau) const {
    poisson::PhiMap p = cfg_.corrupted_phi2 ? poisson::corrupted_phi2(m_) : poisson::PhiMap::phi2(m_);
    p.tau = tau;
    return p;
  }

 private:
  const Model& m_;
  Config cfg_;
  std::optional<curv::FormulaData> fd_;
};

inline json q_json(const Q& q) { return rep::rational_json(q); }

inline CheckResult structure(Context& ctx) {
  const Model& m = ctx.model();
  const auto& rs = m.cb.roots();
  std::set<lie::Weight> distinct(m.rep.weights.begin(), m.rep.weights.end());
  const long jac = m.cb.jacobi_failures();
  const long adj = rep::commutation_failures(m.cb, m.adjoint);
  const long vrep = rep::commutation_failures(m.cb, m.rep);
  CheckResult r{1, "structure build", false, {}, 0};
  r.details = {{"roots", rs.num_roots()},
               {"adjoint_dim", m.adjoint.dim},
               {"rep_dim", m.rep.dim},
               {"distinct_weights", distinct.size()},
               {"jacobi_failures", jac},
               {"adjoint_commutation_failures", adj},
               {"rep_commutation_failures", vrep}};
  if (ctx.build_seconds) r.details["build_seconds"] = *ctx.build_seconds;
  r.passed = (!ctx.build_seconds || *ctx.build_seconds < 120) && rs.num_roots() == 126 && m.adjoint.dim == 133 &&
             m.rep.dim == 56 && distinct.size() == 56 && jac == 0 && adj == 0 && vrep == 0 &&
             rep::weight_basis_consistent(m.cb, m.adjoint) && rep::weight_basis_consistent(m.cb, m.rep);
  return r;
}

inline CheckResult pairing(Context& ctx) {
  const Model& m = ctx.model();
  const auto forms = rep::invariant_bilinear_forms(m.rep, m.gens, false);
  const long fails = rep::pairing_invariance_failures(m.rep, m.pairing);
  CheckResult r{2, "invariant pairing", false, {}, 0};
  r.details = {{"invariant_skew_forms", forms.size()},
               {"invariance_failures", fails},
               {"checked", static_cast<long>(m.dim_g()) * m.dim_v() * m.dim_v()}};
  r.passed = forms.size() == 1 && fails == 0;
  return r;
}

inline CheckResult constants(Context& ctx) {
  const Model& m = ctx.model();
  const Q mu = rep::derive_mu(m.rep, m.pairing, m.circ, m.B);
  const auto rnd = rep::quartic_random(m, m.circ, ctx.config().quartic_samples, ctx.config().seed);
  const auto sweep = rep::quartic_sweep(m, m.circ);
  const auto bad = rep::perturbed_circ(m);
  const long bad_rnd = rep::quartic_random(m, bad, 20, ctx.config().seed).failures;
  const long bad_sweep = rep::quartic_sweep(m, bad).failures;
  CheckResult r{3, "quartic constant", false, {}, 0};
  r.details = {{"mu", q_json(mu)},
               {"lambda", q_json(m.lambda)},
               {"random_tested", rnd.tested},
               {"random_failures", rnd.failures},
               {"sweep_tested", sweep.tested},
               {"sweep_failures", sweep.failures},
               {"perturbed_failures", bad_rnd + bad_sweep}};
  r.passed = mu != 0 && mu == m.mu && rnd.tested >= 100 && rnd.failures == 0 && sweep.tested > 0 &&
             sweep.failures == 0 && bad_rnd > 0 && bad_sweep > 0;
  return r;
}

inline std::vector<int> all_basis(const Model& m) {
  std::vector<int> v(m.dim_g());
  for (int a = 0; a < m.dim_g(); ++a) v[a] = a;
  return v;
}

inline CheckResult curvature_k(Context& ctx) {
  const Model& m = ctx.model();
  const auto& fd = ctx.formula();
  long bianchi = 0;
  for (const auto& R : fd.basis.R) bianchi += curv::bianchi_failures(m.rep, R);
  const int rank = curv::curvature_rank(fd.basis.R);
  const long equiv = curv::equivariance_failures(m, fd.basis, all_basis(m));
  CheckResult r{4, "curvature space K", false, {}, 0};
  curv::SpaceReport sp{"K(e7)", static_cast<long>(m.dim_g()) * curv::num_pairs(m.dim_v()), rank, "formula",
                       {{"bianchi", bianchi == 0}, {"equivariance", equiv == 0}}};
  r.details = {{"bianchi_failures", bianchi}, {"rank", rank}, {"equivariance_failures", equiv}, {"space", sp.to_json()}};
  r.passed = bianchi == 0 && rank == 133 && equiv == 0;
  return r;
}

inline CheckResult curvature_k1(Context& ctx) {
  const Model& m = ctx.model();
  const auto& fd = ctx.formula();
  std::vector<curv::SecondCurvatureElement> S;
  long i2 = 0;
  for (int w = 0; w < m.dim_v(); ++w) {
    S.push_back(curv::e7_second_curvature_element(m, fd.basis, {{w, Q(1)}}));
    i2 += curv::i2_failures(S.back());
  }
  const int rank = curv::second_curvature_rank(S);
  CheckResult r{5, "second curvature space K1", false, {}, 0};
  curv::SpaceReport sp{"K1(e7)", S[0].ambient(), rank, "formula", {{"i2", i2 == 0}}};
  r.details = {{"i2_failures", i2}, {"rank", rank}, {"space", sp.to_json()}};
  r.passed = i2 == 0 && rank == 56;
  return r;
}

inline CheckResult phi2(Context& ctx) {
  const Model& m = ctx.model();
  const auto& fd = ctx.formula();
  const long sym = curv::phi2_symmetry_failures(fd.phi2);
  const auto skew = curv::phi2_skew_check(m, fd.phi2);
  long inv = 0;
  for (long x : curv::phi2_invariance_failures(m, fd.phi2, all_basis(m))) inv += x;
  const int r1 = curv::curvature_rank(fd.prime);
  const auto dp = curv::phi2_double_prime(m, fd.prime);
  long i2 = 0;
  for (const auto& e : dp) i2 += curv::i2_failures(e);
  const int r2 = curv::second_curvature_rank(dp);
  CheckResult r{6, "phi2 normal form", false, {}, 0};
  r.details = {{"nonzeros", fd.phi2.nonzeros()},
               {"symmetry_failures", sym},
               {"skew_failures", skew.skew_failures},
               {"formula_table_mismatches", skew.table_mismatches},
               {"invariance_failures", inv},
               {"prime_rank", r1},
               {"double_prime_rank", r2},
               {"double_prime_i2_failures", i2}};
  r.passed = fd.phi2.nonzeros() > 0 && sym == 0 && skew.skew_failures == 0 && skew.table_mismatches == 0 &&
             inv == 0 && r1 == 133 && r2 == 56 && i2 == 0;
  return r;
}

inline json decomposition_json(const lie::RootSystem& rs, const lie::Decomposition& d) {
  json a = json::array();
  for (const auto& [w, mult] : d)
    a.push_back({{"highest_weight", w}, {"multiplicity", mult}, {"dim", lie::weyl_dimension(rs, w).get_si()}});
  return a;
}

inline json table_json(const lie::RootSystem& rs, const bbw::CohomologyTable& t) {
  json j = {{"exact", t.exact}, {"method", t.method}, {"degrees", json::object()}};
  for (const auto& [q, dec] : t.degrees)
    j["degrees"][std::to_string(q)] = {{"dim", t.dim(rs, q)}, {"summands", decomposition_json(rs, dec)}};
  return j;
}

/// H^*(X, L (x) S^k N*) for the jet variant with an exact H^0 from the
/// explicit fiber.
inline bbw::CohomologyTable twisted(const rep::ChevalleyBasis& cb, const rep::MatrixRep& v,
                                    const bbw::ParabolicData& par, int k) {
  return bbw::twisted_conormal_cohomology(par, k, bbw::ConormalVariant::kJet,
                                          bbw::h0_frobenius(cb.roots(), par, bbw::jet_twisted_module(cb, v, par, k)));
}

inline CheckResult bbw_engine(Context& ctx) {
  const Model& m = ctx.model();
  const auto& rs = m.cb.roots();
  const auto par = bbw::parabolic_from_node(rs, 6);
  auto c1 = twisted(m.cb, m.rep, par, 1), c2 = twisted(m.cb, m.rep, par, 2), c3 = twisted(m.cb, m.rep, par, 3);
  CheckResult r{7, "twisted conormal cohomology", false, {}, 0};
  r.details = {{"k1", table_json(rs, c1)}, {"k2", table_json(rs, c2)}, {"k3", table_json(rs, c3)}};
  const lie::Decomposition adj_plus_center{{rs.zero_weight(), 1}, {rs.fundamental(0), 1}};
  r.passed = c1.exact && c2.exact && c3.exact && c1.dim(rs, 0) == 134 && c1.at(0) == adj_plus_center &&
             c2.dim(rs, 0) == 0 && c2.dim(rs, 1) == 0 && c3.dim(rs, 0) == 0 && c3.dim(rs, 1) == 133 &&
             c3.at(1) == lie::Decomposition{{rs.fundamental(0), 1}};
  return r;
}

inline json spencer_json(const bbw::SpencerCrossCheck& s) {
  return {{"algebra", s.algebra},       {"g_dim", s.g_dim},
          {"h0_L_N", s.h0_l_n},         {"g1_bruteforce", s.g1_bruteforce},
          {"h0_L_S2N", s.h0_s2},        {"K_bruteforce", s.k_bruteforce},
          {"spencer_image", s.spencer_image}, {"h1_L_S3N", s.h1_s3},
          {"cohomology_exact", s.cohomology_exact}, {"containment", s.containment},
          {"passed", s.passed()}};
}

inline CheckResult oracle_equivalence(Context& ctx) {
  auto cb = rep::ChevalleyBasis::of_type("A1");
  CheckResult r{8, "oracle equivalence", true, json::array(), 0};
  for (int k : {2, 3}) {
    auto s = bbw::spencer_cross_check(cb, rep::build_sl2_irrep(cb, k), 0, ctx.config().caps);
    json j = spencer_json(s);
    j["k"] = k;
    r.details.push_back(j);
    r.passed = r.passed && s.passed() && s.prolongation_matches() && s.bound_holds();
  }
  return r;
}

struct PoissonSummary {
  poisson::JacobiReport jacobi;
  std::vector<std::pair<Q, poisson::JacobiReport>> tau_jacobi;
  std::vector<int> ranks;
  bool ranks_even = true;
  bool ranks_antisymmetric = true;
  int min_symmetry = 1 << 30;
  std::set<int> distinct_ranks;
  int admissible = 0;
  int u0_hits = 0;
  int u0_tested = 0;
  std::vector<int> witness_points;
};

inline PoissonSummary poisson_summary(Context& ctx, bool jacobi, bool rank, bool u0) {
  const Model& m = ctx.model();
  const auto& cfg = ctx.config();
  PoissonSummary s;
  if (jacobi) {
    s.jacobi = poisson::jacobi_sweep(ctx.phi(), cfg.jacobi_points, cfg.jacobi_triples, cfg.seed);
    for (const Q& tau : cfg.taus)
      s.tau_jacobi.emplace_back(tau, poisson::jacobi_sweep(ctx.phi(tau), cfg.jacobi_points, cfg.jacobi_triples, cfg.seed));
  }
  if (rank || u0) {
    // the same seeded points as the Jacobi sweep
    std::mt19937_64 rng(cfg.seed);
    for (int k = 0; k < cfg.jacobi_points; ++k) {
      poisson::PointState st(ctx.phi(), poisson::random_point(m, rng));
      for (int t = 0; t < 3 * cfg.jacobi_triples; ++t) poisson::random_observable(rng, m.dim_g(), m.dim_v());
      if (rank) {
        auto rr = poisson::poisson_rank(st);
        s.ranks.push_back(rr.rank);
        s.distinct_ranks.insert(rr.rank);
        s.ranks_even = s.ranks_even && rr.rank % 2 == 0;
        s.ranks_antisymmetric = s.ranks_antisymmetric && rr.antisymmetric;
        s.min_symmetry = std::min(s.min_symmetry, rr.symmetry_dim);
      }
      if (u0 && k < cfg.u0_points) {
        auto c = poisson::check_point(st);
        ++s.u0_tested;
        if (c.admissible) ++s.admissible;
        if (c.admissible && c.in_u0) {
          ++s.u0_hits;
          s.witness_points.push_back(k);
        }
      }
    }
  }
  return s;
}

inline json jacobi_json(const poisson::JacobiReport& j) {
  return {{"points", j.points},       {"triples_per_point", j.triples_per_point}, {"evaluations", j.evaluations},
          {"nonzero", j.nonzero},     {"first_failing_point", j.first_failing_point}, {"seed", j.seed},
          {"passed", j.passed()}};
}

inline CheckResult poisson_suite(Context& ctx) {
  const auto& cfg = ctx.config();
  PoissonSummary s = poisson_summary(ctx, true, true, true);
  CheckResult r{9, "poisson suite", false, {}, 0};
  json taus = json::array();
  bool tau_ok = true;
  for (const auto& [tau, rep] : s.tau_jacobi) {
    json j = jacobi_json(rep);
    j["tau"] = q_json(tau);
    taus.push_back(j);
    tau_ok = tau_ok && rep.passed();
  }
  r.details = {{"seed", cfg.seed},
               {"fixture", cfg.corrupted_phi2 ? "corrupted-phi2" : "phi2"},
               {"jacobi", jacobi_json(s.jacobi)},
               {"jacobi_tau", taus},
               {"rank_points", s.ranks.size()},
               {"ranks_even", s.ranks_even},
               {"distinct_ranks", s.distinct_ranks},
               {"min_symmetry_dim", s.min_symmetry},
               {"u0_tested", s.u0_tested},
               {"admissible", s.admissible},
               {"u0_hits", s.u0_hits},
               {"witness_points", s.witness_points}};
  r.passed = s.jacobi.passed() && tau_ok && s.tau_jacobi.size() >= 3 && s.jacobi.points >= 1 &&
             !s.ranks.empty() && s.ranks_even && s.ranks_antisymmetric && s.min_symmetry >= 1 && s.u0_hits >= 1 &&
             s.admissible == s.u0_tested;
  return r;
}

inline json jet_json(const poisson::JetReport& j) {
  return {{"center_in_u0", j.center_in_u0},
          {"curvature_span", j.curvature_span},
          {"torsion_nonzero", j.torsion_nonzero},
          {"curvature_mismatch", j.curvature_mismatch},
          {"a_equation_order1", j.a_equation_order1},
          {"b_equation_order1", j.b_equation_order1},
          {"a_equation_order2", j.a_equation_order2},
          {"b_equation_order2", j.b_equation_order2},
          {"coframe_jacobi_order2", j.coframe_jacobi_order2},
          {"c_not_tau", j.c_not_tau},
          {"c_not_constant", j.c_not_constant},
          {"sampled_pairs", j.sampled_pairs},
          {"sampled_triples", j.sampled_triples},
          {"seed", j.seed},
          {"passed", j.passed()}};
}

inline CheckResult jet_suite(Context& ctx) {
  const Model& m = ctx.model();
  const auto& cfg = ctx.config();
  std::mt19937_64 rng(cfg.seed + 1);
  const poisson::WPoint center = poisson::random_point(m, rng);
  auto [jet, rep] = poisson::jet_verify(ctx.phi(), ctx.formula(), center, cfg.jet_pairs, cfg.jet_triples, cfg.seed);
  auto [flat, orep] = poisson::jet_verify(ctx.phi(), ctx.formula(), poisson::zero_point(m), 4, 2, cfg.seed);
  CheckResult r{10, "jet suite", false, {}, 0};
  r.details = {{"center", jet_json(rep)}, {"origin", jet_json(orep)}, {"origin_flat", flat.curvature.is_zero()}};
  r.passed = rep.passed() && rep.center_in_u0 && rep.curvature_span == m.dim_g() && orep.passed() &&
             flat.curvature.is_zero();
  return r;
}

inline CheckResult schur(Context& ctx) {
  auto a1 = rep::ChevalleyBasis::of_type("A1");
  auto a2 = rep::ChevalleyBasis::of_type("A2");
  const std::vector<rep::MatrixRep> reps = {rep::build_sl2_irrep(a1, 1), rep::build_sl2_irrep(a1, 2),
                                            rep::build_sl2_irrep(a1, 3), rep::build_minuscule(a2, 0),
                                            rep::build_minuscule(a2, 1), rep::build_adjoint(a2)};
  const std::vector<std::pair<int, int>> pairs = {{0, 0}, {0, 1}, {1, 2}, {3, 3}, {3, 4}, {3, 5}, {5, 5}};
  CheckResult r{11, "schur lemma", false, json::array(), 0};
  int zero = 0;
  for (auto [i, j] : pairs) {
    auto s = poisson::schur_solver(reps[i], reps[j], ctx.config().caps, false, 4, ctx.config().seed);
    r.details.push_back({{"V", reps[i].name},
                         {"W", reps[j].name},
                         {"solution_dim", s.solutions.dim()},
                         {"ambient", s.solutions.ambient},
                         {"basis_pairs", s.pairs},
                         {"redundancy_failures", s.redundancy_failures}});
    if (s.solutions.dim() == 0 && s.redundancy_failures == 0) ++zero;
  }
  r.passed = zero == static_cast<int>(pairs.size()) && zero >= 3;
  return r;
}

using CheckFn = std::function<CheckResult(Context&)>;

struct Criterion {
  int id;
  const char* suite;
  CheckFn fn;
};

/// All criteria with the suite each belongs to.
inline std::vector<Criterion> criteria() {
  return {{1, "invariants", structure},      {2, "invariants", pairing},        {3, "invariants", constants},
          {4, "curvature", curvature_k},     {5, "curvature", curvature_k1},    {6, "curvature", phi2},
          {7, "bbw", bbw_engine},            {8, "bbw", oracle_equivalence},    {9, "poisson", poisson_suite},
          {10, "poisson", jet_suite},        {11, "poisson", schur}};
}

/// Runs one criterion, turning exceptions into failures.
inline CheckResult run(const Criterion& c, Context& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = c.fn(ctx);
  } catch (const std::exception& e) {
    r = {c.id, "criterion " + std::to_string(c.id), false, {{"error", e.what()}}, 0};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline json result_json(const CheckResult& r) {
  return {{"criterion", r.id}, {"name", r.name}, {"status", r.passed ? "pass" : "fail"}, {"details", r.details}};
}

}  // namespace hol::suite
