#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "kpz/rng.hpp"

// Multi-layer discrete PNG line ensembles. A configuration holds lines
// h_0 > h_1 > ... > h_{N-1} of integer samples on k in [-2N, 2N-1] (value on
// [k, k+1)), pinned to -i at both ends; lines i >= N are frozen at -i.
// Up-jumps happen at even k, down-jumps at odd k. Strict ordering is the
// two-sided one: at every jump point, max of the lower line's two adjacent
// values stays below min of the upper line's.
//
// The Gibbs probability of a configuration is
//   (1-q)^{N(2N-1)} * (sqrt q)^{sum of all |jumps|},
// the jump sum running over all 4N-1 transitions of lines 0..N-1 including
// the two pinned ends. (The per-transition factor p(k) = sqrt(1-q) sqrt(q)^k
// of the weight definition leaves a constant (1-q)^{N/2} unnormalized; the
// exponent N(2N-1) is fixed by P(ground state) = P(all determining weights
// vanish) and is verified by the enumeration tests at N = 1, 2.)
//
// Under this measure the top line satisfies h_0(2k) ~ LPP over an
// (N+k) x (N-k) grid of sites, jointly in k.

namespace kpz {

struct PNGConfig {
  int n = 1;       // number of free lines
  double q = 0.25;
  // lines[i][k + 2n] = h_i(k), k in [-2n, 2n-1]
  std::vector<std::vector<long long>> lines;

  static PNGConfig ground_state(int n, double q) {
    PNGConfig c;
    c.n = n;
    c.q = q;
    c.lines.assign(static_cast<size_t>(n), {});
    for (int i = 0; i < n; i++) c.lines[static_cast<size_t>(i)].assign(static_cast<size_t>(4 * n), -i);
    return c;
  }

  long long samples_per_line() const { return 4LL * n; }
  long long k_lo() const { return -2LL * n; }      // pinned
  long long k_hi() const { return 2LL * n - 1; }   // pinned

  long long at(int i, long long k) const {
    if (i < 0) return std::numeric_limits<long long>::max() / 2;  // ceiling for line 0
    if (i >= n) return -i;                                        // frozen lines
    return lines[static_cast<size_t>(i)][static_cast<size_t>(k + 2 * n)];
  }
  void set(int i, long long k, long long v) {
    lines[static_cast<size_t>(i)][static_cast<size_t>(k + 2 * n)] = v;
  }

  bool valid(std::string* why = nullptr) const {
    auto fail = [&](const char* m) {
      if (why) *why = m;
      return false;
    };
    for (int i = 0; i < n; i++) {
      if (at(i, k_lo()) != -i || at(i, k_hi()) != -i) return fail("boundary pin violated");
      for (long long k = k_lo() + 1; k <= k_hi(); k++) {
        long long prev = at(i, k - 1), cur = at(i, k);
        bool even = ((k % 2) + 2) % 2 == 0;
        if (even ? cur < prev : cur > prev) return fail("jump parity violated");
      }
      for (long long k = k_lo() + 1; k <= k_hi(); k++) {
        long long lo_max = std::max(at(i + 1, k - 1), at(i + 1, k));
        long long up_min = std::min(at(i, k - 1), at(i, k));
        if (lo_max >= up_min) return fail("strict ordering violated");
      }
    }
    return true;
  }

  long long jump_sum() const {
    long long s = 0;
    for (int i = 0; i < n; i++)
      for (long long k = k_lo() + 1; k <= k_hi(); k++) s += std::llabs(at(i, k) - at(i, k - 1));
    return s;
  }

  // snapshot as CSV: line index, k, value
  template <typename Stream>
  void write_csv(Stream& os) const {
    os << "line,k,value\n";
    for (int i = 0; i < n; i++)
      for (long long k = k_lo(); k <= k_hi(); k++) os << i << "," << k << "," << at(i, k) << "\n";
  }
};

// log of the literal product of per-transition weights p(k) = sqrt(1-q) sqrt(q)^k
inline double png_log_weight(const PNGConfig& c) {
  std::string why;
  if (!c.valid(&why)) throw std::invalid_argument("png_log_weight: " + why);
  double transitions = static_cast<double>(c.n) * static_cast<double>(4 * c.n - 1);
  return 0.5 * transitions * std::log1p(-c.q) +
         0.5 * static_cast<double>(c.jump_sum()) * std::log(c.q);
}

// log of the normalized Gibbs probability
inline double png_log_prob(const PNGConfig& c) {
  std::string why;
  if (!c.valid(&why)) throw std::invalid_argument("png_log_prob: " + why);
  double pairs = static_cast<double>(c.n) * static_cast<double>(2 * c.n - 1);
  return pairs * std::log1p(-c.q) + 0.5 * static_cast<double>(c.jump_sum()) * std::log(c.q);
}

inline double png_log_normalization(int n, double q) {
  return static_cast<double>(n) * static_cast<double>(2 * n - 1) * std::log1p(-q);
}

// admissible interval of h_i(k) given everything else
struct SiteBounds {
  long long lo = 0;
  long long hi = 0;  // hi may be huge for the top line at even sites
  bool unbounded_above = false;
};

inline SiteBounds png_site_bounds(const PNGConfig& c, int i, long long k) {
  if (k <= c.k_lo() || k >= c.k_hi()) throw std::invalid_argument("png_site_bounds: site is pinned");
  bool even = ((k % 2) + 2) % 2 == 0;
  SiteBounds b;
  if (even) {
    // up-jump into k, down-jump out of it: v >= both neighbors on the line
    b.lo = std::max(c.at(i, k - 1), c.at(i, k + 1));
    b.lo = std::max(b.lo, c.at(i + 1, k) + 1);  // lower line peaks at even k
    if (i == 0) {
      b.unbounded_above = true;
      b.hi = std::numeric_limits<long long>::max() / 2;
    } else {
      b.hi = std::min(c.at(i - 1, k - 1), c.at(i - 1, k + 1)) - 1;
    }
  } else {
    // down-jump into k, up-jump out: v <= both neighbors
    b.hi = std::min(c.at(i, k - 1), c.at(i, k + 1));
    if (i > 0) b.hi = std::min(b.hi, c.at(i - 1, k) - 1);
    b.lo = std::max(c.at(i + 1, k - 1), c.at(i + 1, k + 1)) + 1;
  }
  return b;
}

// Exact-conditional heat bath: the single-site conditional is a geometric
// (ratio q per unit, from the two adjacent transitions) truncated to the
// admissible interval. Even sites load from below, odd sites from above.
inline void heat_bath_site_update(PNGConfig& c, int i, long long k, Rng& rng) {
  SiteBounds b = png_site_bounds(c, i, k);
  if (b.lo > b.hi && !b.unbounded_above)
    throw std::logic_error("heat_bath_site_update: empty admissible interval");
  bool even = ((k % 2) + 2) % 2 == 0;
  const auto& tab = geometric_thresholds(1.0 - c.q);
  double u = rng.uniform01();
  long long r = b.unbounded_above ? geometric_from_table(tab, u)
                                  : geometric_from_table_leq(tab, u, b.hi - b.lo);
  c.set(i, k, even ? b.lo + r : b.hi - r);
}

inline void heat_bath_sweep(PNGConfig& c, Rng& rng) {
  for (int i = 0; i < c.n; i++)
    for (long long k = c.k_lo() + 1; k < c.k_hi(); k++) heat_bath_site_update(c, i, k, rng);
}

inline long long png_default_burnin_sweeps(int n) {
  // default site-update budget 50 (4N+1) N, expressed in full sweeps
  double updates = 50.0 * (4.0 * n + 1.0) * n;
  double per_sweep = static_cast<double>(n) * (4.0 * n - 2.0);
  return static_cast<long long>(std::ceil(updates / per_sweep));
}

// systematic-scan chain from the ground state; emits after burn-in at a
// fixed thinning interval
template <typename Visit>
void sample_ensemble(int n, double q, long long n_samples, long long burnin_sweeps,
                     long long thin_sweeps, std::uint64_t seed, Visit&& visit) {
  PNGConfig c = PNGConfig::ground_state(n, q);
  Rng rng(seed);
  for (long long s = 0; s < burnin_sweeps; s++) heat_bath_sweep(c, rng);
  for (long long i = 0; i < n_samples; i++) {
    for (long long s = 0; s < thin_sweeps; s++) heat_bath_sweep(c, rng);
    visit(static_cast<const PNGConfig&>(c));
  }
}

// ------------------------------------------------------------- single-line bridges

// A single PNG trajectory line on [t1, t3], pinned at both ends, optionally
// conditioned to stay strictly above a floor line (two-sided sense). Used by
// the monotone-coupling experiment; the floored chain is the propose-and-
// freeze chain whose coupling with the free chain drives the proof.
struct PNGBridge {
  long long t1 = 0, t3 = 0;
  double q = 0.25;
  std::vector<long long> v;  // v[k - t1] = h(k), k in [t1, t3]; ends pinned

  long long at(long long k) const { return v[static_cast<size_t>(k - t1)]; }
  void set(long long k, long long val) { v[static_cast<size_t>(k - t1)] = val; }
};

// start from the flat admissible bridge at height min(a1, a3)
inline PNGBridge make_bridge(long long t1, long long a1, long long t3, long long a3, double q,
                             const std::function<long long(long long)>& floor_fn) {
  if (((t1 % 2) + 2) % 2 != 0 || ((t3 % 2) + 2) % 2 != 0)
    throw std::invalid_argument("make_bridge: end times must be even");
  PNGBridge b;
  b.t1 = t1;
  b.t3 = t3;
  b.q = q;
  b.v.assign(static_cast<size_t>(t3 - t1 + 1), 0);
  long long h = std::min(a1, a3);
  b.set(t1, a1);
  b.set(t3, a3);
  for (long long k = t1 + 1; k < t3; k++) {
    if (floor_fn && floor_fn(k) >= h)
      throw std::invalid_argument("make_bridge: infeasible endpoint data for this floor");
    b.set(k, h);
  }
  // end parity: first interior site is odd (t1 even), needs v <= a1: h <= a1 ok;
  // last interior site: t3-1 odd, up-jump out: v <= a3 ok.
  return b;
}

// one propose-and-freeze sweep; floor_fn == nullptr means the free chain
inline void bridge_sweep(PNGBridge& b, Rng& rng, const std::function<long long(long long)>& floor_fn) {
  for (long long k = b.t1 + 1; k < b.t3; k++) {
    bool even = ((k % 2) + 2) % 2 == 0;
    long long r = rng.geometric(1.0 - b.q);
    long long prop;
    if (even) prop = std::max(b.at(k - 1), b.at(k + 1)) + r;
    else prop = std::min(b.at(k - 1), b.at(k + 1)) - r;
    if (floor_fn) {
      long long bar = std::max(floor_fn(k - 1), std::max(floor_fn(k), floor_fn(k + 1)));
      if (prop <= bar) continue;  // freeze: stay at the current value
    }
    b.set(k, prop);
  }
}

struct CoupledBridgeEstimate {
  double p_floored = 0, p_free = 0;
  double se_floored = 0, se_free = 0;
  long long samples = 0;
};

// MCMC estimates of P(h(t2) >= a2) for the floored bridge and P(g(t2) >= a2)
// for the free bridge; standard errors by batch means.
inline CoupledBridgeEstimate monotone_coupling_experiment(
    long long t1, long long t2, long long t3, long long a1, long long a2, long long a3,
    const std::function<long long(long long)>& floor_fn, long long samples, double q,
    std::uint64_t seed, long long burnin_sweeps = 2000, long long thin_sweeps = 5) {
  CoupledBridgeEstimate out;
  out.samples = samples;
  const int kBatches = 50;
  auto run = [&](bool floored, double* p, double* se, std::uint64_t sd) {
    PNGBridge b = make_bridge(t1, a1, t3, a3, q, floored ? floor_fn : nullptr);
    Rng rng(sd);
    for (long long s = 0; s < burnin_sweeps; s++) bridge_sweep(b, rng, floored ? floor_fn : nullptr);
    std::vector<double> batch(kBatches, 0.0);
    long long per = (samples + kBatches - 1) / kBatches;
    long long done = 0;
    for (int bt = 0; bt < kBatches && done < samples; bt++) {
      long long cnt = 0, tot = 0;
      for (long long i = 0; i < per && done < samples; i++, done++) {
        for (long long s = 0; s < thin_sweeps; s++) bridge_sweep(b, rng, floored ? floor_fn : nullptr);
        if (b.at(t2) >= a2) cnt++;
        tot++;
      }
      batch[static_cast<size_t>(bt)] = static_cast<double>(cnt) / static_cast<double>(tot);
    }
    double mean = 0;
    for (double x : batch) mean += x;
    mean /= kBatches;
    double var = 0;
    for (double x : batch) var += (x - mean) * (x - mean);
    var /= (kBatches - 1);
    *p = mean;
    *se = std::sqrt(var / kBatches);
  };
  run(true, &out.p_floored, &out.se_floored, substream(seed, 11));
  run(false, &out.p_free, &out.se_free, substream(seed, 12));
  return out;
}

// ------------------------------------------------------------- free-bridge midpoint

// two-sided geometric increment of the even-time skeleton walk:
// P(X = x) proportional to (sqrt q)^{|x|}
// tilted version with rates (p sqrt q) right, (sqrt q / p) left
struct TiltedIncrement {
  double m_plus = 0, m_minus = 0;  // geometric rates on each side
  double p_right_side = 0;         // probability the draw is >= 0

  long long sample(Rng& rng) const {
    if (rng.uniform01() < p_right_side) return rng.geometric(1.0 - m_plus);
    return -1 - rng.geometric(1.0 - m_minus);
  }
};

inline double tilted_mean_of_p(double p, double q) {
  double sq = std::sqrt(q);
  return sq * (p * p - 1.0) / ((1.0 - p * sq) * (p - sq));
}

// solve sqrt(q)(p^2-1)/((1-p sqrt q)(p - sqrt q)) = mu for p in (sqrt q, 1/sqrt q)
inline double solve_tilt(double mu, double q) {
  double sq = std::sqrt(q);
  double lo = sq + 1e-12, hi = 1.0 / sq - 1e-12;
  for (int it = 0; it < 200; it++) {
    double mid = 0.5 * (lo + hi);
    if (tilted_mean_of_p(mid, q) < mu) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline TiltedIncrement make_tilted_increment(double p, double q) {
  double sq = std::sqrt(q);
  TiltedIncrement t;
  t.m_plus = p * sq;
  t.m_minus = sq / p;
  double zr = 1.0 / (1.0 - t.m_plus);
  double zl = t.m_minus / (1.0 - t.m_minus);
  t.p_right_side = zr / (zr + zl);
  return t;
}

struct MidpointEstimate {
  double probability = 0;
  double se = 0;
  double a2 = 0;        // collinear midpoint value
  double tilt_p = 1.0;  // change-of-measure parameter used
  long long accepted = 0;
  long long proposals = 0;
};

// P(g(t2) >= a2) for the free bridge from (t1,a1) to (t3,a3), a2 the
// collinear value; exact sampling of the even-time skeleton by tilting the
// two-sided geometric walk to mean slope and rejecting on the endpoint.
inline MidpointEstimate midpoint_probability(long long t1, long long t2, long long t3, long long a1,
                                             long long a3, long long samples, double q,
                                             std::uint64_t seed) {
  if (((t1 % 2) + 2) % 2 != 0 || ((t2 % 2) + 2) % 2 != 0 || ((t3 % 2) + 2) % 2 != 0)
    throw std::invalid_argument("midpoint_probability: times must be even");
  if (!(t1 < t2 && t2 < t3)) throw std::invalid_argument("midpoint_probability: need t1 < t2 < t3");
  long long T = (t3 - t1) / 2, T2 = (t2 - t1) / 2;
  long long A = a3 - a1;
  MidpointEstimate out;
  out.a2 = static_cast<double>(a1) +
           static_cast<double>(t2 - t1) * static_cast<double>(A) / static_cast<double>(t3 - t1);
  double mu = static_cast<double>(A) / static_cast<double>(T);
  out.tilt_p = solve_tilt(mu, q);
  TiltedIncrement inc = make_tilted_increment(out.tilt_p, q);
  Rng rng(seed);
  long long hits = 0, acc = 0, prop = 0;
  while (acc < samples) {
    prop++;
    if (prop > samples * 100000ll)
      throw std::runtime_error("midpoint_probability: rejection sampler stalled");
    long long s = 0, mid = 0;
    for (long long i = 1; i <= T; i++) {
      s += inc.sample(rng);
      if (i == T2) mid = s;
    }
    if (s != A) continue;
    acc++;
    if (static_cast<double>(a1 + mid) >= out.a2) hits++;
  }
  out.accepted = acc;
  out.proposals = prop;
  out.probability = static_cast<double>(hits) / static_cast<double>(acc);
  out.se = std::sqrt(std::max(out.probability * (1.0 - out.probability) / static_cast<double>(acc), 1e-300));
  return out;
}

}  // namespace kpz
