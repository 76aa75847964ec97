// Command line entry point: build, verify, oracle, bbw, poisson, curvature.
// Exit status: 0 when every executed check passes, 1 on a failed check,
// 2 on usage or configuration errors.

#include <hol/suite/acceptance.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <regex>

namespace {

using namespace hol;
using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Global {
  std::string cache_dir = ".hol-cache";
  std::uint64_t seed = 2024;
  long caps = 20000;
  std::string out;
  bool json_stdout = false;
};

/// Report skeleton. Everything except "run" is deterministic for a fixed
/// configuration and seed.
struct Report {
  json doc;
  bool passed = true;

  Report(const std::string& command, json config) {
    doc = {{"schema_version", kSchemaVersion},
           {"tool", "hol"},
           {"tool_version", kToolVersion},
           {"command", command},
           {"config", std::move(config)},
           {"checks", json::array()},
           {"result", json::object()},
           {"run", json::object()}};
  }

  void check(const std::string& name, bool ok, json values = json::object()) {
    doc["checks"].push_back({{"name", name}, {"status", ok ? "pass" : "fail"}, {"values", std::move(values)}});
    passed = passed && ok;
  }
};

int emit(Report& r, const Global& g, double seconds) {
  r.doc["passed"] = r.passed;
  r.doc["run"]["seconds"] = seconds;
  if (!g.out.empty()) {
    std::ofstream f(g.out);
    if (!f) throw UsageError("cannot write report to " + g.out);
    f << r.doc.dump(2) << "\n";
  }
  if (g.json_stdout) {
    std::cout << r.doc.dump(2) << "\n";
  } else {
    for (const auto& c : r.doc["checks"])
      std::cout << (c["status"] == "pass" ? "PASS  " : "FAIL  ") << c["name"].get<std::string>() << "\n";
    std::cout << (r.passed ? "all checks passed" : "some checks failed") << "\n";
  }
  return r.passed ? 0 : 1;
}

json global_json(const Global& g) { return {{"cache_dir", g.cache_dir}, {"seed", g.seed}, {"caps", g.caps}}; }

Q parse_q(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw UsageError("not a rational number: " + s);
  }
}

rep::CachedModel load_model(const Global& g, const std::string& algebra, int node, bool require_cache) {
  if (require_cache) {
    const auto path = std::filesystem::path(g.cache_dir) / rep::cache_file_name(algebra, node);
    if (!std::filesystem::exists(path))
      throw UsageError("no cached model at " + path.string() + "; run `hol build --cache-dir " + g.cache_dir +
                       "` first");
  }
  auto cm = rep::load_or_build(g.cache_dir, algebra, node);
  if (!cm.warning.empty()) std::cerr << "warning: " << cm.warning << "\n";
  return cm;
}

suite::Config suite_config(const Global& g) {
  suite::Config c;
  c.seed = g.seed;
  c.caps.ambient = g.caps;
  return c;
}

// ---- build

struct BuildArgs {
  std::string algebra = "E7";
  int node = 7;
};

int cmd_build(const Global& g, const BuildArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  if (a.node < 1) throw UsageError("--node is 1-based");
  auto cm = load_model(g, a.algebra, a.node - 1, false);
  const auto& m = cm.model;
  Report r("build", {{"global", global_json(g)}, {"algebra", a.algebra}, {"node", a.node}});
  r.doc["result"] = {{"algebra", a.algebra},
                     {"node", a.node},
                     {"dims", {{"g", m.dim_g()}, {"V", m.dim_v()}}},
                     {"roots", m.cb.roots().num_roots()},
                     {"lambda", rep::rational_json(m.lambda)},
                     {"mu", rep::rational_json(m.mu)},
                     {"cache_file", rep::cache_file_name(a.algebra, a.node - 1)}};
  r.check("adjoint commutation relations", rep::commutation_failures(m.cb, m.adjoint) == 0);
  r.check("representation commutation relations", rep::commutation_failures(m.cb, m.rep) == 0);
  r.check("pairing invariance", rep::pairing_invariance_failures(m.rep, m.pairing) == 0);
  r.doc["run"]["cache"] = rep::to_string(cm.status);
  if (!cm.warning.empty()) r.doc["run"]["warning"] = cm.warning;
  return emit(r, g, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

// ---- verify

struct VerifyArgs {
  std::vector<std::string> suites;
  std::string fixture = "phi2";
  int points = 100;
  int triples = 20;
  int jet_pairs = 20;
  int jet_triples = 10;
};

int cmd_verify(const Global& g, const VerifyArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::set<std::string> known = {"invariants", "curvature", "bbw", "poisson"};
  std::set<std::string> chosen(a.suites.begin(), a.suites.end());
  if (chosen.empty() || chosen.count("all")) chosen = known;
  for (const auto& s : chosen)
    if (!known.count(s)) throw UsageError("unknown suite: " + s);
  if (a.fixture != "phi2" && a.fixture != "corrupted-phi2") throw UsageError("unknown fixture: " + a.fixture);

  auto cm = load_model(g, "E7", 6, true);
  suite::Config cfg = suite_config(g);
  cfg.jacobi_points = a.points;
  cfg.jacobi_triples = a.triples;
  cfg.jet_pairs = a.jet_pairs;
  cfg.jet_triples = a.jet_triples;
  cfg.corrupted_phi2 = a.fixture == "corrupted-phi2";
  suite::Context ctx(cm.model, cfg);

  Report r("verify", {{"global", global_json(g)},
                      {"suites", chosen},
                      {"fixture", a.fixture},
                      {"points", a.points},
                      {"triples", a.triples},
                      {"jet_pairs", a.jet_pairs},
                      {"jet_triples", a.jet_triples}});
  json timing = json::object();
  for (const auto& c : suite::criteria()) {
    if (!chosen.count(c.suite)) continue;
    auto res = suite::run(c, ctx);
    json values = res.details;
    r.check(std::to_string(res.id) + " " + res.name, res.passed, {{"suite", c.suite}, {"details", values}});
    timing[std::to_string(res.id)] = res.seconds;
    if (!g.json_stdout) std::cerr << "criterion " << res.id << " done (" << res.seconds << " s)\n";
  }
  r.doc["run"]["criterion_seconds"] = timing;
  r.doc["run"]["cache"] = rep::to_string(cm.status);
  return emit(r, g, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

// ---- oracle

struct OracleArgs {
  std::vector<std::string> oracles;
};

int cmd_oracle(const Global& g, const OracleArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const curv::Caps caps{g.caps};
  Report r("oracle", {{"global", global_json(g)}, {"oracles", a.oracles}});
  const std::regex sl2(R"(sl2-([0-9]+))"), so(R"(so([0-9]+))");
  json results = json::array();
  bool refused = false;
  for (const auto& name : a.oracles) {
    std::smatch mt;
    try {
      if (std::regex_match(name, mt, sl2)) {
        const int k = std::stoi(mt[1]);
        if (k < 1) throw UsageError("sl2 oracle needs k >= 1");
        auto cb = rep::ChevalleyBasis::of_type("A1");
        auto s = bbw::spencer_cross_check(cb, rep::build_sl2_irrep(cb, k), 0, caps);
        json j = suite::spencer_json(s);
        j["oracle"] = name;
        results.push_back(j);
        r.check(name + ": g = H0(L N*)", s.g_matches());
        r.check(name + ": g1 = H0(L S2N*)", s.prolongation_matches());
        r.check(name + ": K - d(g1 V*) <= H1(L S3N*)", s.bound_holds());
        r.check(name + ": spencer image inside K", s.containment);
      } else if (std::regex_match(name, mt, so)) {
        const int n = std::stoi(mt[1]);
        if (n < 2) throw UsageError("so oracle needs n >= 2");
        auto alg = curv::so_algebra(n);
        auto g1 = curv::prolongation(alg, caps);
        auto K = curv::curvature_space(alg, caps);
        const long closed = static_cast<long>(n) * n * (n * n - 1) / 12;
        results.push_back({{"oracle", name},
                           {"spaces",
                            {curv::SpaceReport{"g1", g1.ambient, g1.dim(), "bruteforce", {{"g1 = 0", g1.dim() == 0}}}
                                 .to_json(),
                             curv::SpaceReport{"K", K.ambient, K.dim(), "bruteforce",
                                               {{"K = n^2(n^2-1)/12", K.dim() == closed}}}
                                 .to_json()}}});
        r.check(name + ": g1 = 0", g1.dim() == 0);
        r.check(name + ": dim K = n^2(n^2-1)/12", K.dim() == closed);
      } else {
        throw UsageError("unknown oracle: " + name + " (expected sl2-<k> or so<n>)");
      }
    } catch (const curv::CapExceeded& e) {
      refused = true;
      results.push_back({{"oracle", name}, {"status", "refused"}, {"reason", e.what()}});
      std::cerr << "refused " << name << ": " << e.what() << "\n";
    }
  }
  r.doc["result"] = {{"oracles", results}};
  if (refused) r.passed = false;
  int code = emit(r, g, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return refused ? 2 : code;
}

// ---- bbw

struct BbwArgs {
  std::string algebra = "E7";
  int node = 7;
  std::string bundle = "L*S^kN";
  int k = 1;
  std::string variant = "jet";
};

int cmd_bbw(const Global& g, const BbwArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rs = lie::RootSystem::of_type(a.algebra);
  if (a.node < 1 || a.node > rs.rank()) throw UsageError("--node out of range");
  if (a.variant != "jet" && a.variant != "embedding") throw UsageError("--variant must be jet or embedding");
  const int node = a.node - 1;
  auto par = bbw::parabolic_from_node(rs, node);
  Report r("bbw", {{"global", global_json(g)},
                   {"algebra", a.algebra},
                   {"node", a.node},
                   {"bundle", a.bundle},
                   {"k", a.k},
                   {"variant", a.variant}});
  bbw::CohomologyTable t;
  json bundle_info;
  if (a.bundle == "L") {
    t = bbw::kostant_cohomology(par, bbw::line_bundle(par, par.omega));
    bundle_info = {{"rank", 1}};
  } else if (a.bundle == "TX") {
    auto b = bbw::tangent_bundle(par);
    t = bbw::kostant_cohomology(par, b);
    bundle_info = {{"rank", b.rank(par)}};
  } else if (a.bundle == "L*S^kN") {
    const auto variant = a.variant == "jet" ? bbw::ConormalVariant::kJet : bbw::ConormalVariant::kEmbedding;
    std::optional<lie::Decomposition> h0;
    std::string h0_route = "none";
    if (variant == bbw::ConormalVariant::kJet) {
      try {
        auto cb = rep::ChevalleyBasis::of_type(a.algebra);
        auto v = rep::build_minuscule(cb, node);
        h0 = bbw::h0_frobenius(rs, par, bbw::jet_twisted_module(cb, v, par, a.k));
        h0_route = "frobenius";
      } catch (const std::invalid_argument& e) {
        h0_route = std::string("unavailable: ") + e.what();
      }
    }
    t = bbw::twisted_conormal_cohomology(par, a.k, variant, h0);
    long rank = 0;
    for (const auto& [w, mult] : bbw::twisted_conormal_character(par, a.k, variant)) rank += mult;
    bundle_info = {{"rank", rank}, {"h0_route", h0_route}};
  } else {
    throw UsageError("unknown bundle: " + a.bundle + " (expected L, TX or L*S^kN)");
  }
  r.doc["result"] = {{"dim_X", par.dim_x()},
                     {"omega", par.omega},
                     {"bundle", bundle_info},
                     {"cohomology", suite::table_json(rs, t)}};
  auto borel = bbw::euler_via_borel(rs, a.bundle == "L*S^kN"
                                            ? bbw::twisted_conormal_character(
                                                  par, a.k,
                                                  a.variant == "jet" ? bbw::ConormalVariant::kJet
                                                                     : bbw::ConormalVariant::kEmbedding)
                                            : (a.bundle == "TX" ? par.nil_character
                                                                : lie::Character{{par.omega, 1}}));
  r.check("euler characteristic agrees with the Borel route", t.euler() == borel);
  r.check("cohomology exact", t.exact);
  return emit(r, g, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

// ---- poisson

struct PoissonArgs {
  std::string tau = "0";
  int points = 10;
  int triples = 20;
  std::vector<std::string> checks;
  std::string fixture = "phi2";
  int jet_pairs = 20;
  int jet_triples = 10;
};

int cmd_poisson(const Global& g, const PoissonArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::set<std::string> known = {"jacobi", "admissible", "rank", "u0", "jet"};
  std::set<std::string> chosen(a.checks.begin(), a.checks.end());
  if (chosen.empty()) chosen = known;
  for (const auto& c : chosen)
    if (!known.count(c)) throw UsageError("unknown check: " + c);
  if (a.points < 1) throw UsageError("--points must be positive");
  if (a.fixture != "phi2" && a.fixture != "corrupted-phi2") throw UsageError("unknown fixture: " + a.fixture);

  auto cm = load_model(g, "E7", 6, false);
  suite::Config cfg = suite_config(g);
  cfg.tau = parse_q(a.tau);
  cfg.taus.clear();
  cfg.jacobi_points = a.points;
  cfg.jacobi_triples = a.triples;
  cfg.u0_points = (chosen.count("admissible") || chosen.count("u0")) ? a.points : 0;
  cfg.jet_pairs = a.jet_pairs;
  cfg.jet_triples = a.jet_triples;
  cfg.corrupted_phi2 = a.fixture == "corrupted-phi2";
  suite::Context ctx(cm.model, cfg);

  Report r("poisson", {{"global", global_json(g)},
                       {"tau", rep::rational_json(cfg.tau)},
                       {"points", a.points},
                       {"triples", a.triples},
                       {"checks", chosen},
                       {"fixture", a.fixture}});
  auto s = suite::poisson_summary(ctx, chosen.count("jacobi") > 0, chosen.count("rank") > 0,
                                  chosen.count("admissible") || chosen.count("u0"));
  json res = {{"seed", g.seed}, {"points", a.points}};
  if (chosen.count("jacobi")) {
    res["jacobi"] = suite::jacobi_json(s.jacobi);
    r.check("jacobi", s.jacobi.passed());
  }
  if (chosen.count("admissible")) {
    res["admissible"] = {{"tested", s.u0_tested}, {"admissible", s.admissible}};
    r.check("admissible", s.admissible == s.u0_tested);
  }
  if (chosen.count("u0")) {
    res["u0"] = {{"tested", s.u0_tested}, {"hits", s.u0_hits}};
    res["witness_points"] = s.witness_points;
    r.check("u0", s.u0_hits >= 1);
  }
  if (chosen.count("rank")) {
    std::map<int, int> freq;
    for (int k : s.ranks) ++freq[k];
    int generic = 0, best = 0;
    for (auto [k, f] : freq)
      if (f > best) best = f, generic = k;
    const int N = cm.model.dim_g() + cm.model.dim_v();
    res["ranks"] = s.ranks;
    res["generic_rank"] = generic;
    res["symmetry_dim"] = N - generic;
    r.check("rank", s.ranks_even && s.ranks_antisymmetric && s.min_symmetry >= 1,
            {{"even", s.ranks_even}, {"min_symmetry_dim", s.min_symmetry}});
  }
  if (chosen.count("jet")) {
    auto j = suite::jet_suite(ctx);
    res["jet"] = j.details;
    r.check("jet", j.passed);
  }
  r.doc["result"] = res;
  return emit(r, g, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

// ---- curvature

struct CurvatureArgs {
  std::string algebra = "e7";
};

curv::MatrixAlgebra matrix_algebra(const std::string& name) {
  std::smatch mt;
  if (std::regex_match(name, mt, std::regex(R"(gl([0-9]+))"))) return curv::gl_algebra(std::stoi(mt[1]));
  if (std::regex_match(name, mt, std::regex(R"(so([0-9]+))"))) return curv::so_algebra(std::stoi(mt[1]));
  if (std::regex_match(name, mt, std::regex(R"(sl2-sym([0-9]+)(\+id)?)"))) {
    auto cb = rep::ChevalleyBasis::of_type("A1");
    return curv::rep_image(rep::build_sl2_irrep(cb, std::stoi(mt[1])), mt[2].matched);
  }
  throw UsageError("unknown algebra: " + name + " (expected e7, gl<n>, so<n>, sl2-sym<k>[+id])");
}

int cmd_curvature(const Global& g, const CurvatureArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  Report r("curvature", {{"global", global_json(g)}, {"algebra", a.algebra}});
  json spaces = json::array();
  if (a.algebra == "e7") {
    auto cm = load_model(g, "E7", 6, false);
    suite::Context ctx(cm.model, suite_config(g));
    for (auto fn : {suite::curvature_k, suite::curvature_k1}) {
      auto res = fn(ctx);
      spaces.push_back(res.details["space"]);
      r.check(res.name, res.passed);
    }
    const auto& fd = ctx.formula();
    const int pr = curv::curvature_rank(fd.prime);
    spaces.push_back(curv::SpaceReport{"phi2'(g*)", static_cast<long>(cm.model.dim_g()) * curv::num_pairs(56), pr,
                                       "formula", {{"rank 133", pr == 133}}}
                         .to_json());
    r.check("phi2' is an isomorphism onto K", pr == 133);
  } else {
    const curv::Caps caps{g.caps};
    auto alg = matrix_algebra(a.algebra);
    auto g1 = curv::prolongation(alg, caps);
    auto K = curv::curvature_space(alg, caps);
    auto sp = curv::spencer_image(alg, g1, K);
    auto K1 = curv::second_curvature(alg, K, caps);
    auto P1 = curv::p1_space(alg, caps);
    const long second_bianchi = curv::p1_second_bianchi_failures(alg, P1);
    spaces.push_back(curv::SpaceReport{"g1", g1.ambient, g1.dim(), "bruteforce", {}}.to_json());
    spaces.push_back(curv::SpaceReport{"K", K.ambient, K.dim(), "bruteforce",
                                       {{"spencer image inside K", sp.contained_in_K}}}
                         .to_json());
    spaces.push_back(curv::SpaceReport{"K1", K1.ambient, K1.dim(), "bruteforce", {}}.to_json());
    spaces.push_back(curv::SpaceReport{"P1", P1.ambient, P1.dim(), "bruteforce",
                                       {{"P1 curvature satisfies Bianchi", second_bianchi == 0}}}
                         .to_json());
    r.doc["result"]["algebra_dim"] = alg.dim();
    r.doc["result"]["spencer_image"] = sp.image_dim;
    r.check("spencer image inside K", sp.contained_in_K);
    r.check("P1 curvature satisfies Bianchi", second_bianchi == 0);
  }
  r.doc["result"]["spaces"] = spaces;
  return emit(r, g, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of the E7 holonomy construction"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--cache-dir", g.cache_dir, "directory for cached models")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for every sampled check")->capture_default_str();
  app.add_option("--caps", g.caps, "brute-force ambient dimension cap")->capture_default_str()->check(
      CLI::PositiveNumber);
  app.add_option("--out", g.out, "write the JSON report to this file");
  app.add_flag("--json", g.json_stdout, "print the JSON report on stdout");

  BuildArgs ba;
  auto* build = app.add_subcommand("build", "construct and cache the E7 data");
  build->add_option("--algebra", ba.algebra)->capture_default_str();
  build->add_option("--node", ba.node, "1-based node of the minuscule representation")->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run acceptance suites on the cached model");
  verify->add_option("--suite", va.suites, "invariants, curvature, bbw, poisson or all (repeatable)");
  verify->add_option("--fixture", va.fixture, "phi2 or corrupted-phi2")->capture_default_str();
  verify->add_option("--points", va.points, "Jacobi and rank sample points")->capture_default_str();
  verify->add_option("--triples", va.triples, "Jacobi triples per point")->capture_default_str();
  verify->add_option("--jet-pairs", va.jet_pairs)->capture_default_str();
  verify->add_option("--jet-triples", va.jet_triples)->capture_default_str();

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "brute force against cohomology on small representations");
  oracle->add_option("--oracles", oa.oracles, "sl2-<k> or so<n>; default sl2-1 sl2-2 sl2-3 so3 so4; give none for an empty run")
                          ->expected(0, -1);

  BbwArgs bb;
  auto* bbwc = app.add_subcommand("bbw", "cohomology of homogeneous bundles");
  bbwc->add_option("--algebra", bb.algebra)->capture_default_str();
  bbwc->add_option("--node", bb.node, "1-based crossed node")->capture_default_str();
  bbwc->add_option("--bundle", bb.bundle, "L, TX or L*S^kN")->capture_default_str();
  bbwc->add_option("--k", bb.k)->capture_default_str();
  bbwc->add_option("--variant", bb.variant, "jet or embedding conormal bundle")->capture_default_str();

  PoissonArgs pa;
  auto* pois = app.add_subcommand("poisson", "checks of the deformed Poisson structure");
  pois->add_option("--tau", pa.tau, "multiple of the invariant 2-form")->capture_default_str();
  pois->add_option("--points", pa.points)->capture_default_str();
  pois->add_option("--triples", pa.triples)->capture_default_str();
  pois->add_option("--check", pa.checks, "jacobi, admissible, rank, u0, jet (repeatable)");
  pois->add_option("--fixture", pa.fixture, "phi2 or corrupted-phi2")->capture_default_str();
  pois->add_option("--jet-pairs", pa.jet_pairs)->capture_default_str();
  pois->add_option("--jet-triples", pa.jet_triples)->capture_default_str();

  CurvatureArgs ca;
  auto* curvc = app.add_subcommand("curvature", "curvature spaces by formula (e7) or brute force");
  curvc->add_option("--algebra", ca.algebra, "e7, gl<n>, so<n>, sl2-sym<k>[+id]")->capture_default_str();

  for (auto* sub : {build, verify, oracle, bbwc, pois, curvc}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) return cmd_build(g, ba);
    if (*verify) return cmd_verify(g, va);
    if (*oracle) {
      const bool flag_given = std::any_of(argv, argv + argc, [](const char* a) { return std::string(a) == "--oracles"; });
      if (!flag_given) oa.oracles = {"sl2-1", "sl2-2", "sl2-3", "so3", "so4"};
      oa.oracles.erase(std::remove(oa.oracles.begin(), oa.oracles.end(), std::string()), oa.oracles.end());
      return cmd_oracle(g, oa);
    }
    if (*bbwc) return cmd_bbw(g, bb);
    if (*pois) return cmd_poisson(g, pa);
    if (*curvc) return cmd_curvature(g, ca);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const curv::CapExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
