#pragma once

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <vector>

// Counter-based randomness. Every random quantity in the library is a pure
// function of (seed, coordinates), so weight fields can be re-queried on
// demand by wavefront sweeps and replicas can run concurrently without
// shared state. The mix function is the splitmix64 finalizer applied to a
// keyed chain; results are bit-reproducible for a fixed build of this
// library (statistical agreement, not bit equality, is the cross-
// implementation contract).

namespace kpz {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// keyed hash of one/two/three 64-bit values
inline constexpr std::uint64_t hash2(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a) ^ (b * 0xff51afd7ed558ccdull));
}
inline constexpr std::uint64_t hash3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(hash2(a, b) ^ (c * 0xc4ceb9fe1a85ec53ull));
}

// 53-bit uniform in [0,1)
inline constexpr double to_unit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// deterministic sub-stream seed (replica splitting: seed x index -> fresh stream)
inline constexpr std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
  return hash2(seed, index);
}

// Inverse-transform geometric sampler on {0,1,2,...} with success probability
// alpha: P(k) = alpha (1-alpha)^k. Monotone nonincreasing in alpha for fixed
// u, which is the coupling used by the stochastic-dominance tests.
inline long long geometric_inverse_sample(double alpha, double u) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("geometric_inverse_sample: alpha outside (0,1)");
  if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("geometric_inverse_sample: u outside [0,1)");
  if (u == 0.0) return 0;
  return static_cast<long long>(std::floor(std::log1p(-u) / std::log1p(-alpha)));
}

// CDF thresholds T_k = 1 - (1-alpha)^{k+1}; the sampled value is the first k
// with u < T_k, the same map as the inverse transform. Cached per alpha and
// thread so hot loops skip the log calls.
inline const std::vector<double>& geometric_thresholds(double alpha) {
  thread_local double cached_alpha = -1.0;
  thread_local std::vector<double> table;
  if (alpha != cached_alpha) {
    table.clear();
    double log1m = std::log1p(-alpha);
    for (int k = 0;; k++) {
      double t = -std::expm1(static_cast<double>(k + 1) * log1m);
      table.push_back(t);
      if (t >= 1.0 || k > 5000) break;
    }
    cached_alpha = alpha;
  }
  return table;
}

inline long long geometric_from_table(const std::vector<double>& t, double u) {
  if (u < t[0]) return 0;
  auto it = std::upper_bound(t.begin(), t.end(), u);
  if (it == t.end()) return static_cast<long long>(t.size());  // beyond table: deepest bin
  return static_cast<long long>(it - t.begin());
}

// truncated version: P(r = k) proportional to (1-alpha)^k on {0,...,rmax}
inline long long geometric_from_table_leq(const std::vector<double>& t, double u, long long rmax) {
  double cap = rmax < static_cast<long long>(t.size()) ? t[static_cast<size_t>(rmax)] : 1.0;
  long long r = geometric_from_table(t, u * cap);
  return r > rmax ? rmax : r;
}

// Small sequential generator (splitmix64 walk) for Markov chains and
// parallel-update TASEP in plain mode.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(mix64(seed ^ 0x5bf0f3bd3f7a2dd1ull)) {}

  std::uint64_t next_u64() {
    state += kGolden;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform01() { return to_unit(next_u64()); }
  bool bernoulli(double p) { return uniform01() < p; }
  // geometric on {0,1,...} with success alpha
  long long geometric(double alpha) { return geometric_inverse_sample(alpha, uniform01()); }
  // geometric truncated to {0,...,rmax} (exact conditional)
  long long geometric_leq(double alpha, long long rmax) {
    if (rmax < 0) throw std::logic_error("geometric_leq: empty range");
    double tail = std::pow(1.0 - alpha, static_cast<double>(rmax) + 1.0);
    double u = uniform01() * (1.0 - tail);
    if (u <= 0.0) return 0;
    long long k = static_cast<long long>(std::floor(std::log1p(-u) / std::log1p(-alpha)));
    return k > rmax ? rmax : k;
  }
  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }
};

}  // namespace kpz
