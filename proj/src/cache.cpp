#include "wheelperc/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "wheelperc/dynamics.hpp"
#include "wheelperc/matchings.hpp"
#include "wheelperc/qkz.hpp"

namespace wheelperc {

namespace fs = std::filesystem;

std::optional<std::string> cache_dir() {
  const char* d = std::getenv("WHEELPERC_CACHE_DIR");
  if (!d || !*d) return std::nullopt;
  return std::string(d);
}

std::optional<nlohmann::json> cache_load(const std::string& name) {
  auto dir = cache_dir();
  if (!dir) return std::nullopt;
  std::ifstream in(fs::path(*dir) / (name + ".json"));
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("version", "") != kCacheVersion) return std::nullopt;
    return j;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // unreadable entries are recomputed
  }
}

void cache_store(const std::string& name, nlohmann::json doc) {
  auto dir = cache_dir();
  if (!dir) return;
  fs::create_directories(*dir);
  doc["version"] = kCacheVersion;
  // write then rename so a reader never sees half a file
  fs::path target = fs::path(*dir) / (name + ".json");
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << doc.dump() << "\n";
  }
  fs::rename(tmp, target);
}

static nlohmann::json basis_json(int n) {
  nlohmann::json order = nlohmann::json::array();
  for (auto& m : basis(n).list()) order.push_back(m.pairing());
  return order;
}

std::vector<BigInt> cached_alpha(int n) {
  const std::string name = "mu_n" + std::to_string(n);
  if (auto j = cache_load(name)) {
    if ((*j)["n"] == n && (*j)["order"] == basis_json(n)) {
      std::vector<BigInt> alpha;
      for (auto& s : (*j)["alpha"]) alpha.emplace_back(s.get<std::string>());
      if (static_cast<int>(alpha.size()) == basis(n).dim()) return alpha;
    }
  }
  auto alpha = stationary(n).alpha;
  nlohmann::json doc;
  doc["n"] = n;
  doc["order"] = basis_json(n);
  doc["alpha"] = nlohmann::json::array();
  for (auto& a : alpha) doc["alpha"].push_back(a.get_str());
  cache_store(name, doc);
  return alpha;
}

ZMatrix cached_c_matrix(int n, bool tilde) {
  const std::string name = std::string(tilde ? "ctilde_n" : "c_n") + std::to_string(n);
  const int dim = basis(n).dim();
  if (auto j = cache_load(name)) {
    if ((*j)["n"] == n && (*j)["order"] == basis_json(n) && (*j)["rows"].size() == static_cast<size_t>(dim)) {
      ZMatrix m(dim, dim);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = BigInt((*j)["rows"][r][c].get<std::string>());
      return m;
    }
  }
  ZMatrix m = tilde ? c_tilde(n) : c_matrix(n);
  nlohmann::json doc;
  doc["n"] = n;
  doc["order"] = basis_json(n);
  doc["rows"] = nlohmann::json::array();
  for (int r = 0; r < dim; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < dim; ++c) row.push_back(m(r, c).get_str());
    doc["rows"].push_back(row);
  }
  cache_store(name, doc);
  return m;
}

}  // namespace wheelperc
