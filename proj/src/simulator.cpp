#include "wheelperc/simulator.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "wheelperc/dynamics.hpp"

namespace wheelperc {

Backend parse_backend(const std::string& s) {
  if (s == "frontier") return Backend::Frontier;
  if (s == "plaquette") return Backend::Plaquette;
  throw std::invalid_argument("unknown backend: " + s);
}

FrontierState::FrontierState(int order) : n(order), owner(2 * order), matched(2 * order, 0), open(2 * order) {
  if (order < 1) throw std::invalid_argument("FrontierState: n must be positive");
  for (int i = 0; i < 2 * n; ++i) owner[i] = i + 1;
}

void FrontierState::apply_layer(const std::vector<int>& layer) {
  const int m = 2 * n;
  if (static_cast<int>(layer.size()) != 2 * m) throw std::invalid_argument("layer size mismatch");
  // Walk from a frontier node through the layer and old strands until we reach
  // a far-side node (returned as +pos) or a boundary label (returned as -label).
  auto walk = [&](int front) {
    int node = front;  // frontier node index m+1..2m
    for (int guard = 0; guard <= 2 * m; ++guard) {
      int nxt = layer[node - 1];
      if (nxt <= m) return nxt;
      int o = owner[nxt - m - 1];
      if (o > 0) return -o;
      node = m + (-o);
    }
    throw std::logic_error("frontier walk did not terminate");
  };
  std::vector<int> fresh(m, 0);
  // boundary labels: each live label enters the layer at its frontier position
  for (int p = 1; p <= m; ++p) {
    int o = owner[p - 1];
    if (o <= 0) continue;
    int end = walk(m + p);
    if (end < 0) {
      int other = -end;
      if (o < other) {
        matched[o - 1] = other;
        matched[other - 1] = o;
        open -= 2;
      }
    } else {
      fresh[end - 1] = o;
    }
  }
  // far-side nodes not reached from a label: new strands or strands returning
  for (int t = 1; t <= m; ++t) {
    if (fresh[t - 1] != 0) continue;
    int nxt = layer[t - 1];
    int end;
    if (nxt <= m) {
      end = nxt;
    } else {
      int o = owner[nxt - m - 1];
      end = o > 0 ? -o : walk(m + (-o));
      if (end < 0) throw std::logic_error("label reached from an unlabelled strand");
    }
    fresh[t - 1] = -end;
    fresh[end - 1] = -t;
  }
  owner = std::move(fresh);
  ++layers;
}

Matching FrontierState::result() const {
  if (!done()) throw std::logic_error("frontier still has open boundary labels");
  return Matching(matched);
}

std::vector<int> e_layer(int n, int k) {
  const int m = 2 * n;
  if (k < 1 || k > m) throw std::out_of_range("e_layer: k out of range");
  std::vector<int> d(2 * m);
  const int a = k, b = k == m ? 1 : k + 1;
  for (int i = 1; i <= m; ++i) {
    if (i == a || i == b) continue;
    d[i - 1] = m + i;
    d[m + i - 1] = i;
  }
  d[a - 1] = b;
  d[b - 1] = a;
  d[m + a - 1] = m + b;
  d[m + b - 1] = m + a;
  return d;
}

Matching sample_matching(int n, std::mt19937_64& rng, const SamplerOptions& opt) {
  FrontierState st(n);
  const long cap = opt.step_cap_per_n * n;
  std::uniform_int_distribution<int> pick(1, 2 * n);
  std::bernoulli_distribution bit(0.5);
  while (!st.done()) {
    if (st.layers >= cap) {
      std::ostringstream os;
      os << "sampler step cap reached at n=" << n << " after " << st.layers << " layers, open=" << st.open;
      throw std::runtime_error(os.str());
    }
    if (opt.backend == Backend::Frontier) {
      st.apply_layer(e_layer(n, pick(rng)));
    } else {
      PlaquetteRow row(2 * n);
      for (auto& x : row) x = bit(rng);
      st.apply_layer(row_diagram(row));
    }
  }
  return st.result();
}

std::mt19937_64 shard_rng(std::uint64_t seed, std::uint64_t shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard), static_cast<std::uint32_t>(shard >> 32)};
  return std::mt19937_64(seq);
}

std::pair<double, double> clopper_pearson(long hits, long samples, double level) {
  if (samples <= 0 || hits < 0 || hits > samples) throw std::invalid_argument("clopper_pearson: bad counts");
  const double alpha = 1 - level;
  double lo = 0, hi = 1;
  if (hits > 0) lo = boost::math::quantile(boost::math::beta_distribution<>(hits, samples - hits + 1), alpha / 2);
  if (hits < samples)
    hi = boost::math::quantile(boost::math::beta_distribution<>(hits + 1, samples - hits), 1 - alpha / 2);
  return {lo, hi};
}

// Runs f(shard, count, rng) over kShards fixed shards so results do not depend on threads.
static void for_shards(long samples, std::uint64_t seed, int threads,
                       const std::function<void(int, long, std::mt19937_64&)>& f) {
  if (samples < 1) throw std::invalid_argument("samples must be positive");
  threads = std::max(1, std::min(threads, kShards));
  std::vector<std::thread> pool;
  std::mutex mu;
  int next = 0;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      int s;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= kShards || err) return;
        s = next++;
      }
      long count = samples / kShards + (s < samples % kShards ? 1 : 0);
      try {
        auto rng = shard_rng(seed, static_cast<std::uint64_t>(s));
        f(s, count, rng);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

SampleStats estimate_event(int n, const std::function<bool(const Matching&)>& event, long samples,
                           std::uint64_t seed, int threads, const SamplerOptions& opt) {
  std::vector<long> hits(kShards, 0);
  for_shards(samples, seed, threads, [&](int s, long count, std::mt19937_64& rng) {
    for (long i = 0; i < count; ++i) hits[s] += event(sample_matching(n, rng, opt));
  });
  SampleStats st;
  st.n = n;
  st.samples = samples;
  st.seed = seed;
  for (long h : hits) st.hits += h;
  st.estimate = static_cast<double>(st.hits) / static_cast<double>(samples);
  std::tie(st.ci_low, st.ci_high) = clopper_pearson(st.hits, samples);
  return st;
}

std::vector<long> sample_histogram(int n, long samples, std::uint64_t seed, int threads, const SamplerOptions& opt) {
  const Basis& b = basis(n);
  std::vector<std::vector<long>> per(kShards, std::vector<long>(b.dim(), 0));
  for_shards(samples, seed, threads, [&](int s, long count, std::mt19937_64& rng) {
    for (long i = 0; i < count; ++i) ++per[s][b.index(sample_matching(n, rng, opt))];
  });
  std::vector<long> out(b.dim(), 0);
  for (auto& h : per)
    for (int i = 0; i < b.dim(); ++i) out[i] += h[i];
  return out;
}

std::vector<long> sample_histogram_extra_step(int n, long samples, std::uint64_t seed) {
  const Basis& b = basis(n);
  std::vector<long> out(b.dim(), 0);
  std::mutex mu;
  for_shards(samples, seed, 1, [&](int, long count, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(1, 2 * n);
    for (long i = 0; i < count; ++i) {
      Matching p = sample_matching(n, rng);
      int k = pick(rng);
      std::lock_guard<std::mutex> lock(mu);
      ++out[b.index(apply_e(k, p))];
    }
  });
  return out;
}

ChiSquare chi_square(const std::vector<long>& counts, const std::vector<BigRational>& probs) {
  if (counts.size() != probs.size()) throw std::invalid_argument("chi_square: size mismatch");
  long total = 0;
  for (long c : counts) total += c;
  ChiSquare r;
  int cells = 0;
  for (size_t i = 0; i < counts.size(); ++i) {
    double e = probs[i].get_d() * static_cast<double>(total);
    if (e <= 0) {
      if (counts[i] != 0) r.statistic = std::numeric_limits<double>::infinity();
      continue;
    }
    double d = static_cast<double>(counts[i]) - e;
    r.statistic += d * d / e;
    ++cells;
  }
  r.dof = std::max(1, cells - 1);
  r.p_value = std::isinf(r.statistic)
                  ? 0.0
                  : boost::math::cdf(boost::math::complement(boost::math::chi_squared(r.dof), r.statistic));
  return r;
}

std::function<bool(const Matching&)> parse_event(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("event must look like kind:argument");
  std::string kind = text.substr(0, colon), arg = text.substr(colon + 1);
  if (kind == "submatching") {
    Matching pi0 = parse_matching(arg);
    return [pi0](const Matching& p) { return pi0.size() <= p.size() && is_submatching(pi0, p, 1); };
  }
  if (kind == "anticluster") {
    int k = std::stoi(arg);
    return [k](const Matching& p) {
      for (int i = 1; i <= k && i <= p.size(); ++i)
        if (p.partner(i) <= k) return false;
      return true;
    };
  }
  if (kind == "arc") {
    auto comma = arg.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("arc event needs i,j");
    int i = std::stoi(arg.substr(0, comma)), j = std::stoi(arg.substr(comma + 1));
    return [i, j](const Matching& p) { return i <= p.size() && p.partner(i) == j; };
  }
  throw std::invalid_argument("unknown event kind: " + kind);
}

}  // namespace wheelperc
