#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wheelperc/linalg.hpp"
#include "wheelperc/rational.hpp"

namespace wheelperc {

inline constexpr const char* kCacheVersion = "wheelperc-cache/1";

// WHEELPERC_CACHE_DIR, if set and non-empty
std::optional<std::string> cache_dir();

// Returns the stored document when present, readable, and of the current version.
std::optional<nlohmann::json> cache_load(const std::string& name);
void cache_store(const std::string& name, nlohmann::json doc);

// alpha = ASM(n) mu_n in basis(n) order; read from or written to the cache
std::vector<BigInt> cached_alpha(int n);
ZMatrix cached_c_matrix(int n, bool tilde);

}  // namespace wheelperc
