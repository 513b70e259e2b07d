#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kpz/lpp.hpp"
#include "kpz/path.hpp"
#include "kpz/rng.hpp"
#include "kpz/weights.hpp"

// Discrete-time parallel-update TASEP on a finite window, encoded by its
// height function: +-1 increments, h(k) == k (mod 2). Every local minimum
// (a particle with an empty right neighbor) flips to a local maximum
// independently with probability 1-q per step. Window edges are frozen;
// exactness inside the window is guaranteed by the speed-1 influence cone.

namespace kpz {

struct HeightFunction {
  long long k_lo = 0, k_hi = 0;  // inclusive window
  std::vector<long long> h;
  long long t = 0;

  long long at(long long k) const { return h[static_cast<size_t>(k - k_lo)]; }
  long long& at(long long k) { return h[static_cast<size_t>(k - k_lo)]; }
  long long size() const { return k_hi - k_lo + 1; }

  bool valid() const {
    for (long long k = k_lo; k <= k_hi; k++) {
      if (((at(k) % 2) + 2) % 2 != ((k % 2) + 2) % 2) return false;
      if (k > k_lo && std::llabs(at(k) - at(k - 1)) != 1) return false;
    }
    return true;
  }
  void check() const {
    if (!valid()) throw std::invalid_argument("HeightFunction: parity or increment invariant violated");
  }
  // site k occupied iff h(k+1) - h(k) = -1
  bool occupied(long long k) const { return at(k + 1) - at(k) == -1; }
};

enum class InitialCondition { Step, Flat, Bernoulli, WedgeFlat, WedgeBernoulli, FlatBernoulli };

inline InitialCondition initial_condition_from_name(const std::string& s) {
  if (s == "step") return InitialCondition::Step;
  if (s == "flat") return InitialCondition::Flat;
  if (s == "bernoulli") return InitialCondition::Bernoulli;
  if (s == "wedge-flat") return InitialCondition::WedgeFlat;
  if (s == "wedge-bernoulli") return InitialCondition::WedgeBernoulli;
  if (s == "flat-bernoulli") return InitialCondition::FlatBernoulli;
  throw std::invalid_argument("unknown initial condition: " + s);
}

inline HeightFunction make_initial(InitialCondition kind, long long k_lo, long long k_hi,
                                   std::uint64_t seed) {
  if (k_lo >= k_hi) throw std::invalid_argument("make_initial: empty window");
  HeightFunction hf;
  hf.k_lo = k_lo;
  hf.k_hi = k_hi;
  hf.h.assign(static_cast<size_t>(k_hi - k_lo + 1), 0);

  // increment over [s, s+1): +1 empty, -1 occupied
  auto bernoulli_inc = [&](long long s) -> long long {
    return (hash2(seed, static_cast<std::uint64_t>(s)) & 1ull) ? 1 : -1;
  };
  auto inc = [&](long long s) -> long long {
    switch (kind) {
      case InitialCondition::Step: return s >= 0 ? 1 : -1;
      case InitialCondition::Flat: return (((s % 2) + 2) % 2 == 0) ? -1 : 1;
      case InitialCondition::Bernoulli: return bernoulli_inc(s);
      case InitialCondition::WedgeFlat:
        return s >= 0 ? ((((s % 2) + 2) % 2 == 0) ? -1 : 1) : -1;
      case InitialCondition::WedgeBernoulli: return s >= 0 ? bernoulli_inc(s) : -1;
      case InitialCondition::FlatBernoulli:
        return s >= 0 ? bernoulli_inc(s) : ((((s % 2) + 2) % 2 == 0) ? -1 : 1);
    }
    return 1;
  };

  // anchor h(0) = 0 and integrate outward
  std::vector<long long> vals(static_cast<size_t>(k_hi - k_lo + 1));
  long long acc = 0;
  for (long long s = 0; s <= k_hi; s++) {
    if (s >= k_lo) vals[static_cast<size_t>(s - k_lo)] = acc;
    acc += inc(s);
    if (s + 1 >= k_lo && s + 1 <= k_hi) vals[static_cast<size_t>(s + 1 - k_lo)] = acc;
  }
  acc = 0;
  for (long long s = 0; s > k_lo; s--) {
    acc -= inc(s - 1);
    vals[static_cast<size_t>(s - 1 - k_lo)] = acc;
  }
  hf.h = std::move(vals);
  hf.check();
  return hf;
}

// one parallel update computed from the time-t configuration only
inline void step_dynamics(HeightFunction& hf, double q, Rng& rng) {
  std::vector<long long> flip;
  for (long long k = hf.k_lo + 1; k < hf.k_hi; k++)
    if (hf.at(k - 1) == hf.at(k) + 1 && hf.at(k + 1) == hf.at(k) + 1 && rng.bernoulli(1.0 - q))
      flip.push_back(k);
  for (long long k : flip) hf.at(k) += 2;
  hf.t += 1;
}

inline void evolve(HeightFunction& hf, long long t_steps, double q, Rng& rng) {
  for (long long s = 0; s < t_steps; s++) step_dynamics(hf, q, rng);
}

// Waiting-time mode: each local minimum with bottom point (k, v) flips
// exactly w*((v+k)/2, (v-k)/2) steps after it formed, so the trajectory is a
// deterministic function of the one-based weight field. This is the coupling
// linking TASEP to LPP.
struct WaitingTimeTasep {
  HeightFunction hf;
  WeightField field;  // OneBased
  std::vector<long long> rise_time;

  WaitingTimeTasep(HeightFunction init, WeightField star_field)
      : hf(std::move(init)), field(std::move(star_field)) {
    if (field.variant != WeightVariant::OneBased)
      throw std::invalid_argument("WaitingTimeTasep: field must be OneBased");
    if (hf.t != 0) throw std::invalid_argument("WaitingTimeTasep: start at t=0");
    rise_time.assign(static_cast<size_t>(hf.size()), 0);
  }

  long long rise(long long k) const { return rise_time[static_cast<size_t>(k - hf.k_lo)]; }

  void step() {
    std::vector<long long> flip;
    for (long long k = hf.k_lo + 1; k < hf.k_hi; k++) {
      long long v = hf.at(k);
      if (hf.at(k - 1) != v + 1 || hf.at(k + 1) != v + 1) continue;
      long long formed = std::max(rise(k - 1), rise(k + 1));
      long long wait = field.weight_at((v + k) / 2, (v - k) / 2);
      if (hf.t + 1 >= formed + wait) flip.push_back(k);
    }
    for (long long k : flip) {
      hf.at(k) += 2;
      rise_time[static_cast<size_t>(k - hf.k_lo)] = hf.t + 1;
    }
    hf.t += 1;
  }
  void evolve(long long t_steps) {
    for (long long s = 0; s < t_steps; s++) step();
  }
};

// polygonal chain of the initial condition: vertices ((s+h)/2, (h-s)/2),
// restricted to [K1, K2] (leftmost empty site / one plus rightmost occupied),
// truncated to the window when those do not exist in-window.
struct HeightPath {
  DownRightPath path;
  long long K1 = 0, K2 = 0;
  bool K1_truncated = false, K2_truncated = false;
};

inline HeightPath path_from_height(const HeightFunction& hf) {
  hf.check();
  HeightPath out;
  long long K1 = hf.k_hi, K2 = hf.k_lo;
  bool found_empty = false, found_occ = false;
  for (long long k = hf.k_lo; k < hf.k_hi; k++) {
    bool occ = hf.occupied(k);
    if (!occ && !found_empty) { K1 = k; found_empty = true; }
    if (occ) { K2 = k + 1; found_occ = true; }
  }
  out.K1_truncated = !found_empty || K1 == hf.k_lo;
  out.K2_truncated = !found_occ || K2 == hf.k_hi;
  if (!found_empty) K1 = hf.k_lo;
  if (!found_occ) K2 = hf.k_hi;
  out.K1 = K1;
  out.K2 = K2;
  // +1 height increments map to right-steps, -1 increments to down-steps,
  // so ascending s already gives down-right orientation
  for (long long s = K1; s <= K2; s++) {
    long long h = hf.at(s);
    out.path.vertices.push_back({(s + h) / 2, (h - s) / 2});
  }
  out.path.check();
  return out;
}

// Two-route estimate of P(h(j;t) > k) (TASEP dynamics vs LPP with one-based
// weights on the initial chain), with a two-sample z-score.
struct CouplingCheckResult {
  double p_tasep = 0, p_lpp = 0;
  double z = 0;
  long long replicas = 0;
};

inline CouplingCheckResult coupling_check(InitialCondition kind, long long j, long long k,
                                          long long t, long long replicas, double q,
                                          std::uint64_t seed) {
  if ((((j - k) % 2) + 2) % 2 != 0)
    throw std::invalid_argument("coupling_check: j,k must have the same parity");
  long long radius = t + std::llabs(j) + std::llabs(k) + 8;
  {
    // the coupling needs particles entering from the left; reject initial
    // data with an empty left margin rather than guessing its semantics
    HeightFunction probe = make_initial(kind, j - radius, j + radius, seed);
    bool occupied_left = false;
    for (long long s = probe.k_lo; s < probe.k_lo + t + 2 && s < probe.k_hi; s++)
      if (probe.occupied(s)) {
        occupied_left = true;
        break;
      }
    if (!occupied_left)
      throw std::invalid_argument("coupling_check: no particles in the left influence margin");
  }
  long long hits1 = 0, hits2 = 0;
  for (long long r = 0; r < replicas; r++) {
    // TASEP route
    HeightFunction hf = make_initial(kind, j - radius, j + radius, substream(seed, 2 * r));
    if (j - radius > j - t - 1 || j + radius < j + t + 1)
      throw std::invalid_argument("coupling_check: influence cone exceeds window");
    Rng rng(substream(seed, 2 * r + 1));
    evolve(hf, t, q, rng);
    if (hf.at(j) > k) hits1++;

    // LPP route (independent replica of the same law)
    std::uint64_t s2 = substream(seed ^ 0x700db2f7a1cb6e55ull, r);
    HeightFunction init2 = make_initial(kind, j - radius, j + radius, substream(s2, 0));
    HeightPath hp = path_from_height(init2);
    WeightField star{substream(s2, 1), q, WeightVariant::OneBased, std::nullopt};
    auto g = lpp_to_curve(star, {(k + j) / 2, (k - j) / 2}, hp.path);
    long long gstar = g ? g->value : std::numeric_limits<long long>::max();
    if (!g) gstar = 0;  // no dominated vertex: h already above k at t=0
    if (gstar <= t) hits2++;
  }
  CouplingCheckResult res;
  res.replicas = replicas;
  res.p_tasep = static_cast<double>(hits1) / static_cast<double>(replicas);
  res.p_lpp = static_cast<double>(hits2) / static_cast<double>(replicas);
  double pool = 0.5 * (res.p_tasep + res.p_lpp);
  double se = std::sqrt(std::max(pool * (1.0 - pool) * 2.0 / static_cast<double>(replicas), 1e-300));
  res.z = (res.p_tasep - res.p_lpp) / se;
  return res;
}

}  // namespace kpz
