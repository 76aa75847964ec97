#pragma once

#include <hol/rep/model.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hol::rep {

inline constexpr int kCacheVersion = 2;

/// {"n": numerator, "d": denominator} as decimal strings.
inline nlohmann::json rational_json(const Q& q) { return {{"n", q.get_num().get_str()}, {"d", q.get_den().get_str()}}; }

inline Q rational_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("d") || !j["n"].is_string() || !j["d"].is_string())
    throw std::runtime_error("malformed rational entry");
  Z n, d;
  if (n.set_str(j["n"].get<std::string>(), 10) != 0 || d.set_str(j["d"].get<std::string>(), 10) != 0 || d == 0)
    throw std::runtime_error("malformed rational entry");
  return rational(n, d);
}

namespace detail {

inline nlohmann::json matrix_json(const SparseMatrix& m) {
  nlohmann::json t = nlohmann::json::array();
  for (int j = 0; j < m.cols(); ++j)
    for (const auto& [i, v] : m.column(j)) t.push_back({i, j, rational_json(v)});
  return t;
}

inline SparseMatrix matrix_from_json(const nlohmann::json& t, int rows, int cols) {
  SparseMatrix m(rows, cols);
  for (const auto& e : t) {
    int i = e.at(0).get<int>(), j = e.at(1).get<int>();
    if (i < 0 || i >= rows || j < 0 || j >= cols) throw std::runtime_error("cache: matrix index out of range");
    m.add(i, j, rational_from_json(e.at(2)));
  }
  m.compress();
  return m;
}

inline nlohmann::json form_json(const BilinearForm& f) {
  nlohmann::json t = nlohmann::json::array();
  for (int i = 0; i < f.n; ++i)
    for (const auto& [j, v] : f.rows[i]) t.push_back({i, j, rational_json(v)});
  return t;
}

}  // namespace detail

/// Versioned JSON document: algebra, roots, structure constants, the
/// minuscule matrices (sparse triplets), the pairing and the constants.
inline nlohmann::json model_to_json(const Model& m, int node) {
  using nlohmann::json;
  const auto& rs = m.cb.roots();
  json j;
  j["version"] = kCacheVersion;
  j["algebra"] = rs.type();
  j["rank"] = rs.rank();
  j["node"] = node + 1;
  j["roots"] = rs.roots();
  json n = json::array();
  for (int a = 0; a < rs.num_roots(); ++a)
    for (int b = 0; b < rs.num_roots(); ++b)
      if (m.cb.N(a, b) != 0) n.push_back({a, b, m.cb.N(a, b)});
  j["n_constants"] = n;
  j["rep"]["dim"] = m.rep.dim;
  j["rep"]["weights"] = m.rep.weights;
  json mats = json::array();
  for (const auto& x : m.rep.mats) mats.push_back(detail::matrix_json(x));
  j["rep"]["matrices"] = mats;
  j["pairing"] = detail::form_json(m.pairing);
  j["lambda"] = rational_json(m.lambda);
  j["mu"] = rational_json(m.mu);
  return j;
}

/// Rebuilds a model from its cache document. The structure constants and the
/// root list must agree with a fresh construction.
inline Model model_from_json(const nlohmann::json& j) {
  if (j.value("version", -1) != kCacheVersion) throw std::runtime_error("cache: unsupported version");
  ChevalleyBasis cb = ChevalleyBasis::of_type(j.at("algebra").get<std::string>());
  const auto& rs = cb.roots();
  if (j.at("rank").get<int>() != rs.rank() || j.at("roots").get<std::vector<lie::RootCoords>>() != rs.roots())
    throw std::runtime_error("cache: root data disagree with the algebra");
  long count = 0;
  for (const auto& e : j.at("n_constants")) {
    if (cb.N(e.at(0).get<int>(), e.at(1).get<int>()) != e.at(2).get<int>())
      throw std::runtime_error("cache: structure constants disagree with the algebra");
    ++count;
  }
  long expected = 0;
  for (int a = 0; a < rs.num_roots(); ++a)
    for (int b = 0; b < rs.num_roots(); ++b) expected += cb.N(a, b) != 0;
  if (count != expected) throw std::runtime_error("cache: structure constant table incomplete");

  Model m{cb, build_adjoint(cb), {}, generator_indices(cb), {}, {}, {}, {}, Q(1), Q(0)};
  const auto& r = j.at("rep");
  m.rep.dim = r.at("dim").get<int>();
  m.rep.name = "minuscule(cached)";
  m.rep.weights = r.at("weights").get<std::vector<lie::Weight>>();
  std::map<lie::Weight, int> seen;
  for (const auto& w : m.rep.weights) m.rep.mult_index.push_back(seen[w]++);
  for (const auto& t : r.at("matrices")) m.rep.mats.push_back(detail::matrix_from_json(t, m.rep.dim, m.rep.dim));
  if (static_cast<int>(m.rep.mats.size()) != cb.dimension()) throw std::runtime_error("cache: wrong matrix count");
  DenseQ B = killing_form(cb);
  m.B = BilinearForm::from_dense(B);
  m.Binv = BilinearForm::from_dense(inverse(B));
  DenseQ w(m.rep.dim, std::vector<Q>(m.rep.dim, Q(0)));
  for (const auto& e : j.at("pairing")) w.at(e.at(0).get<int>()).at(e.at(1).get<int>()) = rational_from_json(e.at(2));
  m.pairing = BilinearForm::from_dense(w);
  m.lambda = rational_from_json(j.at("lambda"));
  m.mu = rational_from_json(j.at("mu"));
  m.circ = circ_product(m.rep, m.Binv, m.pairing, m.lambda);
  return m;
}

/// Keyed by algebra, node and cache version, so a format change never reads old files.
inline std::string cache_file_name(const std::string& type, int node) {
  return type + "_node" + std::to_string(node + 1) + "_v" + std::to_string(kCacheVersion) + ".json";
}

enum class CacheStatus { hit, built, rebuilt, uncached };

struct CachedModel {
  Model model;
  CacheStatus status = CacheStatus::uncached;
  std::string path;
  std::string warning;  // reason for a rebuild
};

inline const char* to_string(CacheStatus s) {
  switch (s) {
    case CacheStatus::hit: return "hit";
    case CacheStatus::built: return "built";
    case CacheStatus::rebuilt: return "rebuilt";
    case CacheStatus::uncached: return "uncached";
  }
  return "?";
}

/// Loads the cached model from `dir` if present and valid, otherwise builds it
/// and (re)writes the file. An unreadable or inconsistent file is replaced.
inline CachedModel load_or_build(const std::string& dir, const std::string& type, int node) {
  namespace fs = std::filesystem;
  auto build = [&] { return build_model(ChevalleyBasis::of_type(type), node); };
  if (dir.empty()) return {build(), CacheStatus::uncached, "", ""};
  const fs::path path = fs::path(dir) / cache_file_name(type, node);
  std::string warning;
  if (fs::exists(path)) {
    try {
      std::ifstream in(path);
      return {model_from_json(nlohmann::json::parse(in)), CacheStatus::hit, path.string(), ""};
    } catch (const std::exception& e) {
      warning = "cache file " + path.string() + " unusable (" + e.what() + "), rebuilding";
    }
  }
  CachedModel out{build(), warning.empty() ? CacheStatus::built : CacheStatus::rebuilt, path.string(), warning};
  fs::create_directories(dir);
  std::ofstream file(path);
  file << model_to_json(out.model, node).dump();
  return out;
}

}  // namespace hol::rep
