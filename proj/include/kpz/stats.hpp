#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "kpz/rng.hpp"
#include "kpz/stats_fit.hpp"

// Empirical distribution machinery: ECDF, one- and two-sample KS, the DKW
// envelope, chi-square goodness of fit, and a percentile bootstrap.

namespace kpz {

struct EmpiricalDistribution {
  std::vector<double> sorted;

  static EmpiricalDistribution from_samples(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("EmpiricalDistribution: empty sample set");
    std::sort(xs.begin(), xs.end());
    return {std::move(xs)};
  }
  size_t n() const { return sorted.size(); }
  // right-continuous step function: (# samples <= x) / n
  double eval(double x) const {
    auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
  }
  double mean() const {
    double s = 0;
    for (double v : sorted) s += v;
    return s / static_cast<double>(sorted.size());
  }
  double variance() const {
    double m = mean(), s = 0;
    for (double v : sorted) s += (v - m) * (v - m);
    return s / static_cast<double>(sorted.size() - 1);
  }
};

// sup-norm distance to a reference CDF, evaluated at the jump points from
// both sides
inline double ks_distance(const EmpiricalDistribution& d, const std::function<double(double)>& cdf) {
  double n = static_cast<double>(d.n());
  double best = 0;
  for (size_t i = 0; i < d.n(); i++) {
    double F = cdf(d.sorted[i]);
    best = std::max(best, std::fabs(static_cast<double>(i + 1) / n - F));
    best = std::max(best, std::fabs(static_cast<double>(i) / n - F));
  }
  return best;
}

// sup-norm distance to a reference CDF supported on the integers: both
// functions are right-continuous steps jumping only at integers, so the sup
// is attained there (the continuous-reference form above would wrongly pair
// the lower rank with F(v) instead of F(v-1) at repeated values)
inline double ks_distance_integer(const EmpiricalDistribution& d,
                                  const std::function<double(long long)>& cdf_at) {
  long long lo = static_cast<long long>(std::floor(d.sorted.front())) - 1;
  long long hi = static_cast<long long>(std::floor(d.sorted.back()));
  double best = 0;
  for (long long v = lo; v <= hi; v++)
    best = std::max(best, std::fabs(d.eval(static_cast<double>(v)) - cdf_at(v)));
  return best;
}

// two-sample KS on the union of sample points
inline double ks_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  size_t i = 0, j = 0;
  double na = static_cast<double>(a.n()), nb = static_cast<double>(b.n());
  double best = 0;
  while (i < a.n() || j < b.n()) {
    double x = (j >= b.n() || (i < a.n() && a.sorted[i] <= b.sorted[j])) ? a.sorted[i] : b.sorted[j];
    while (i < a.n() && a.sorted[i] <= x) i++;
    while (j < b.n() && b.sorted[j] <= x) j++;
    best = std::max(best, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

// DKW envelope: with probability 1-alpha, sup |F_n - F| <= eps
inline double dkw_bound(size_t n, double alpha) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

// ---------------------------------------------------------------- chi-square

namespace special {
// regularized incomplete gamma Q(a,x) (series / continued fraction)
inline double gamma_q(double a, double x) {
  if (x < 0 || a <= 0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0) return 1.0;
  if (x < a + 1.0) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; i++) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; i++) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}
}  // namespace special

struct ChiSquareResult {
  double statistic = 0;
  int dof = 0;
  double p_value = 0;
};

// goodness of fit of integer samples against Geom(alpha): bins 0..B-1 plus a
// lumped tail, expected counts kept >= 5 by shrinking B
inline ChiSquareResult chi_square_geometric(const std::vector<long long>& samples, double alpha) {
  size_t n = samples.size();
  int B = 1;
  while (true) {
    double tail_mass = std::pow(1.0 - alpha, B + 1);
    if (tail_mass * static_cast<double>(n) < 5.0 || B > 200) break;
    B++;
  }
  std::vector<double> obs(static_cast<size_t>(B) + 1, 0.0);
  for (long long s : samples) obs[static_cast<size_t>(std::min<long long>(s, B))] += 1.0;
  double stat = 0;
  for (int k = 0; k <= B; k++) {
    double p = k < B ? alpha * std::pow(1.0 - alpha, k) : std::pow(1.0 - alpha, B);
    double e = p * static_cast<double>(n);
    stat += (obs[static_cast<size_t>(k)] - e) * (obs[static_cast<size_t>(k)] - e) / e;
  }
  ChiSquareResult r;
  r.statistic = stat;
  r.dof = B;  // B+1 bins, parameters fixed a priori
  r.p_value = special::gamma_q(0.5 * r.dof, 0.5 * stat);
  return r;
}

// ---------------------------------------------------------------- bootstrap

struct BootstrapCI {
  double lo = 0, hi = 0, point = 0;
};

inline BootstrapCI bootstrap_ci(const std::vector<double>& samples,
                                const std::function<double(const std::vector<double>&)>& stat,
                                int B, double alpha, std::uint64_t seed) {
  BootstrapCI ci;
  ci.point = stat(samples);
  std::vector<double> reps(static_cast<size_t>(B));
  Rng rng(seed);
  std::vector<double> re(samples.size());
  for (int b = 0; b < B; b++) {
    for (size_t i = 0; i < samples.size(); i++)
      re[i] = samples[rng.below(samples.size())];
    reps[static_cast<size_t>(b)] = stat(re);
  }
  std::sort(reps.begin(), reps.end());
  auto quant = [&](double p) {
    double idx = p * (B - 1);
    size_t i0 = static_cast<size_t>(idx);
    double fr = idx - static_cast<double>(i0);
    return reps[i0] * (1 - fr) + reps[std::min(i0 + 1, reps.size() - 1)] * fr;
  };
  ci.lo = quant(alpha / 2);
  ci.hi = quant(1 - alpha / 2);
  return ci;
}

}  // namespace kpz
