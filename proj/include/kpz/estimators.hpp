#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "kpz/lpp.hpp"
#include "kpz/parallel.hpp"
#include "kpz/scaling.hpp"
#include "kpz/stats.hpp"

// Estimators that turn the limit theorems into testable statistics.

namespace kpz {

// ------------------------------------------------------- slow decorrelation

struct SlowDecorrResult {
  double exceedance = 0;   // fraction of replicas with max-gap >= delta
  double ci_half = 0;      // binomial 95% half-width
  double mean_max_gap = 0;
  long long replicas = 0;
};

// P(max_{|s|<=M} |H_N(s) - H~_N(s)| >= delta) with the displaced process
// H~ built from ell_n(s) N^alpha on the same weight field.
template <typename EllNFn>
SlowDecorrResult slow_decorr_statistic(double q, long long N, double alpha, EllNFn&& ell_n,
                                       double M_window, double delta, long long replicas,
                                       std::uint64_t seed) {
  ScalingParams sp = scaling_constants(q);
  double n13 = std::cbrt(static_cast<double>(N));
  double c0n23 = sp.c0 * n13 * n13;
  double na = std::pow(static_cast<double>(N), alpha);
  long long k_half = static_cast<long long>(std::ceil(M_window * c0n23));

  // both diagonals collected in a single triangle sweep per replica
  std::vector<DisplacedCell> cells;
  std::vector<long long> ms;
  for (long long k = -k_half; k <= k_half; k++) cells.push_back({k, 0});
  for (long long k = -k_half; k <= k_half; k++) {
    double s = static_cast<double>(k) / c0n23;
    long long m = llround(ell_n(s) * na);
    cells.push_back({k, m});
    ms.push_back(m);
  }

  auto gaps = parallel_replicas(replicas, [&](long long r) {
    WeightField f{substream(seed, static_cast<std::uint64_t>(r)), q, WeightVariant::ZeroBased,
                  std::nullopt};
    std::vector<long long> vals = antidiagonal_sweep(f, N, cells);
    size_t half = static_cast<size_t>(2 * k_half + 1);
    double b0n13 = sp.b0 * n13;
    double worst = 0;
    for (size_t i = 0; i < half; i++) {
      double h = (static_cast<double>(vals[i]) - sp.a0 * static_cast<double>(N)) / b0n13;
      double ht = (static_cast<double>(vals[half + i]) -
                   sp.a0 * (static_cast<double>(N) + static_cast<double>(ms[i]))) /
                  b0n13;
      worst = std::max(worst, std::fabs(h - ht));
    }
    return worst;
  });

  SlowDecorrResult res;
  res.replicas = replicas;
  long long hits = 0;
  double acc = 0;
  for (double g : gaps) {
    if (g >= delta) hits++;
    acc += g;
  }
  res.exceedance = static_cast<double>(hits) / static_cast<double>(replicas);
  res.mean_max_gap = acc / static_cast<double>(replicas);
  res.ci_half = 1.96 * std::sqrt(std::max(res.exceedance * (1.0 - res.exceedance), 0.25 / replicas) /
                                 static_cast<double>(replicas));
  return res;
}

// ------------------------------------------------------- variational sampler

struct VariationalSample {
  double value = 0;
  long long argmax_k = 0;
  bool argmax_on_edge = false;
};

struct VariationalResult {
  std::vector<double> samples;
  double edge_fraction = 0;  // warning when > 1%: window too small
};

// Per replica: max over the lattice s-grid of H_N^sigma(s) + ell(s), the
// sigma shift realized by moving the target along the antidiagonal. The
// parabola -(s-sigma)^2 is carried by the profile itself.
inline VariationalResult variational_rhs_sampler(double q, long long N,
                                                 const std::function<double(double)>& ell,
                                                 double sigma, double window, long long replicas,
                                                 std::uint64_t seed) {
  ScalingParams sp = scaling_constants(q);
  double n13 = std::cbrt(static_cast<double>(N));
  double c0n23 = sp.c0 * n13 * n13;
  double b0n13 = sp.b0 * n13;
  long long shift = llround(sigma * c0n23);
  LatticePoint target{N + shift, N - shift};
  long long k_half = static_cast<long long>(std::ceil(window * c0n23));
  long long k_lo = std::max(-k_half, -target.y);
  long long k_hi = std::min(k_half, target.x);

  auto rows = parallel_replicas(replicas, [&](long long r) {
    WeightField f{substream(seed, static_cast<std::uint64_t>(r)), q, WeightVariant::ZeroBased,
                  std::nullopt};
    std::vector<long long> prof = sawtooth_point_profile(f, target, k_lo, k_hi);
    VariationalSample out;
    double best = -std::numeric_limits<double>::infinity();
    for (long long k = k_lo; k <= k_hi; k++) {
      double s = static_cast<double>(k) / c0n23;
      double v = (static_cast<double>(prof[static_cast<size_t>(k - k_lo)]) -
                  sp.a0 * static_cast<double>(N)) /
                     b0n13 +
                 ell(s);
      if (v > best) {
        best = v;
        out.argmax_k = k;
      }
    }
    out.value = best;
    out.argmax_on_edge = out.argmax_k == k_lo || out.argmax_k == k_hi;
    return out;
  });

  VariationalResult res;
  long long edges = 0;
  for (const auto& s : rows) {
    res.samples.push_back(s.value);
    if (s.argmax_on_edge) edges++;
  }
  res.edge_fraction = static_cast<double>(edges) / static_cast<double>(replicas);
  return res;
}

}  // namespace kpz
