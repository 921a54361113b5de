#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "wheelperc/matchings.hpp"
#include "wheelperc/rational.hpp"

namespace wheelperc {

enum class Backend { Frontier, Plaquette };
Backend parse_backend(const std::string& s);

// Open strands at the current frontier, numbered 1..2n. owner[p-1] > 0 is the
// boundary label carried by the strand at p; owner[p-1] < 0 means the strand
// returns to the frontier at position -owner[p-1].
struct FrontierState {
  int n = 0;
  std::vector<int> owner;
  std::vector<int> matched;  // matched[i-1] = partner of boundary point i, 0 while open
  int open = 0;              // boundary labels still alive
  long layers = 0;

  explicit FrontierState(int order);
  bool done() const { return open == 0; }
  // layer: pairing of 1..4n, nodes 1..2n on the far side, 2n+1..4n on the frontier
  void apply_layer(const std::vector<int>& layer);
  Matching result() const;
};

std::vector<int> e_layer(int n, int k);  // e_k as a layer, k = 2n wraps to 1

struct SamplerOptions {
  Backend backend = Backend::Frontier;
  long step_cap_per_n = 1000000;
};

Matching sample_matching(int n, std::mt19937_64& rng, const SamplerOptions& opt = {});

// Stream for one shard, derived from the master seed.
std::mt19937_64 shard_rng(std::uint64_t seed, std::uint64_t shard);
inline constexpr int kShards = 16;

struct SampleStats {
  int n = 0;
  long samples = 0;
  long hits = 0;
  std::uint64_t seed = 0;
  double estimate = 0;
  double ci_low = 0, ci_high = 0;  // exact binomial 99%
};

std::pair<double, double> clopper_pearson(long hits, long samples, double level = 0.99);

SampleStats estimate_event(int n, const std::function<bool(const Matching&)>& event, long samples,
                           std::uint64_t seed, int threads = 1, const SamplerOptions& opt = {});

// Counts per basis(n) index.
std::vector<long> sample_histogram(int n, long samples, std::uint64_t seed, int threads = 1,
                                   const SamplerOptions& opt = {});
// Histogram of e_k(pi) for sampled pi with an extra uniform k.
std::vector<long> sample_histogram_extra_step(int n, long samples, std::uint64_t seed);

struct ChiSquare {
  double statistic = 0;
  int dof = 0;
  double p_value = 0;
};
ChiSquare chi_square(const std::vector<long>& counts, const std::vector<BigRational>& probs);

// "submatching:[[1,2]]", "anticluster:4", "arc:1,2"
std::function<bool(const Matching&)> parse_event(const std::string& text);

}  // namespace wheelperc
