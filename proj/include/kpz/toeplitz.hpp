#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kpz/fredholm.hpp"
#include "kpz/scaling.hpp"
#include "kpz/stats_fit.hpp"

// Exact finite-size CDF of geometric LPP over an M x N grid of sites:
//   P(G <= n) = (1-q)^{MN} D_n(phi),  phi(z) = (1+sqrt q z)^M (1+sqrt q / z)^N,
// with D_n the n-th Toeplitz determinant of phi. (In the reversed-time
// notation of the profile code, G over M x N sites is G_check(M-1, N-1);
// only this identification makes P(G <= 0) = (1-q)^{MN}.)
//
// Two evaluation routes:
//  - direct: LU of the n x n Toeplitz matrix in long double. The entries
//    span e^{(M+N) log(1+sqrt q)}; beyond ~45 nats of spread the end pivots
//    drown in roundoff, so the direct route is gated on small M+N.
//  - gcbo: det(I - K_n) on l^2{n, n+1, ...} with K_n = U V read off from
//    Laurent coefficients of (1-sqrt q/z)^N (1-sqrt q z)^{-M}, extracted by
//    DFT on a balanced circle. Entries are O(1); tiny determinants come out
//    of LU pivots, near-unit ones out of a trace expansion.

namespace kpz {

inline long double log_binomial(long long n, long long k) {
  if (k < 0 || k > n) return -std::numeric_limits<long double>::infinity();
  return std::lgammal(static_cast<long double>(n) + 1) - std::lgammal(static_cast<long double>(k) + 1) -
         std::lgammal(static_cast<long double>(n - k) + 1);
}

// c_m = sum_l C(M, m+l) C(N, l) q^{(m+2l)/2}
inline long double toeplitz_coeff(long long M, long long N, double q, long long m) {
  long double lq = 0.5L * std::log(static_cast<long double>(q));
  long double acc = 0;
  long long l_lo = std::max(0ll, -m);
  long long l_hi = std::min(N, M - m);
  for (long long l = l_lo; l <= l_hi; l++) {
    long double lg = log_binomial(M, m + l) + log_binomial(N, l) +
                     static_cast<long double>(m + 2 * l) * lq;
    acc += expl(lg);
  }
  return acc;
}

enum class ToeplitzRoute { Auto, DirectLU, Gcbo };

// ------------------------------------------------------------ direct route

inline double toeplitz_log_cdf_direct(long long M, long long N, double q, long long n) {
  if (n <= 0) return static_cast<double>(M * N) * std::log1p(-q);  // D_0 = 1
  std::vector<long double> coeff(static_cast<size_t>(2 * n - 1));
  for (long long m = -(n - 1); m <= n - 1; m++)
    coeff[static_cast<size_t>(m + n - 1)] = toeplitz_coeff(M, N, q, m);
  std::vector<long double> a(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (long long j = 0; j < n; j++)
    for (long long k = 0; k < n; k++)
      a[static_cast<size_t>(j) * static_cast<size_t>(n) + static_cast<size_t>(k)] =
          coeff[static_cast<size_t>(j - k + n - 1)];
  auto [logdet, sign] = logdet_lu(a, static_cast<int>(n));
  if (sign <= 0)
    throw std::runtime_error("toeplitz_log_cdf_direct: determinant lost positivity (pivot underflow)");
  return static_cast<double>(static_cast<long double>(M * N) * std::log1p(-static_cast<long double>(q)) + logdet);
}

// ------------------------------------------------------------ GCBO route

struct GcboResult {
  double log_cdf = 0;        // log P(G <= n)
  double log_upper = 0;      // log P(G > n)
  double trace = 0;          // tr K_n
  int dim = 0;               // truncation of the l^2 indices
  int k_cut = 0;             // truncation of the inner sum
};

namespace gcbo_detail {

struct Coeffs {
  // balanced Laurent coefficients: gamma~_m = gamma_m rho^m of
  // g(z) = (1 - sqrt q / z)^N (1 - sqrt q z)^{-M}, and nu~ of 1/g.
  std::vector<double> g_pos;  // index m - (m_lo)
  std::vector<double> v_pos;
  long long m_lo = 0;
};

inline Coeffs extract(long long M, long long N, double q, long long m_lo, long long m_hi) {
  double sq = std::sqrt(q);
  double gamma = static_cast<double>(M) / static_cast<double>(N);
  double rho = (1.0 + std::sqrt(gamma * q)) / (std::sqrt(gamma) + sq);
  rho = std::min(std::max(rho, sq * 1.05), 0.95 / sq);

  const int P = 16384;
  std::vector<std::complex<double>> gs(P), vs(P);
  for (int p = 0; p < P; p++) {
    std::complex<double> z = std::polar(rho, 2.0 * M_PI * p / P);
    std::complex<double> lg = static_cast<double>(N) * std::log(1.0 - sq / z) -
                              static_cast<double>(M) * std::log(1.0 - sq * z);
    gs[static_cast<size_t>(p)] = std::exp(lg);
    vs[static_cast<size_t>(p)] = std::exp(-lg);
  }
  Coeffs c;
  c.m_lo = m_lo;
  c.g_pos.resize(static_cast<size_t>(m_hi - m_lo + 1));
  c.v_pos.resize(static_cast<size_t>(m_hi - m_lo + 1));
  for (long long m = m_lo; m <= m_hi; m++) {
    std::complex<double> accg = 0, accv = 0;
    std::complex<double> w = std::polar(1.0, -2.0 * M_PI * static_cast<double>(m) / P);
    std::complex<double> ph = 1.0;
    for (int p = 0; p < P; p++) {
      accg += gs[static_cast<size_t>(p)] * ph;
      accv += vs[static_cast<size_t>(p)] * std::conj(ph);  // coefficient at -m
      ph *= w;
    }
    // balanced values: gamma_m rho^m = DFT/P ; nu_{-m} rho^{-m} = conj-DFT/P
    c.g_pos[static_cast<size_t>(m - m_lo)] = accg.real() / P;
    c.v_pos[static_cast<size_t>(m - m_lo)] = accv.real() / P;
  }
  return c;
}

}  // namespace gcbo_detail

inline GcboResult gcbo_cdf(long long M, long long N, double q, long long n, int dim = 0) {
  if (n <= 0) {
    GcboResult r;
    r.log_cdf = static_cast<double>(M * N) * std::log1p(-q);
    r.log_upper = std::log1p(-std::exp(r.log_cdf));
    return r;
  }
  if (dim <= 0) {
    // cover from n up past the bulk edge plus an O(N^{1/3}) fluctuation window
    double n13 = std::cbrt(static_cast<double>(std::min(M, N)));
    ScalingParams sp = scaling_constants(q);
    double mean_est = sp.a0_of(static_cast<double>(M) / static_cast<double>(N)) *
                      static_cast<double>(N);
    double beyond = std::max(0.0, mean_est - static_cast<double>(n));
    dim = std::max(60, static_cast<int>(beyond + 12.0 * n13) + 40);
    if (dim > 3000) throw std::invalid_argument("gcbo_cdf: n too deep below the bulk");
  }
  int k_cut = dim + 220;

  gcbo_detail::Coeffs co = gcbo_detail::extract(M, N, q, n + 1, n + dim + k_cut + 1);
  auto gam = [&](long long m) { return co.g_pos[static_cast<size_t>(m - co.m_lo)]; };
  auto nu = [&](long long m) { return co.v_pos[static_cast<size_t>(m - co.m_lo)]; };

  // K(a,b) = sum_{k>=1} gamma~(n+a+k) nu~(n+b+k)  (diagonal similarity by rho absorbed)
  std::vector<long double> K(static_cast<size_t>(dim) * static_cast<size_t>(dim), 0.0L);
  for (int a = 0; a < dim; a++)
    for (int b = 0; b < dim; b++) {
      long double acc = 0;
      for (int k = 1; k <= k_cut - std::max(a, b); k++)
        acc += static_cast<long double>(gam(n + a + k)) * static_cast<long double>(nu(n + b + k));
      K[static_cast<size_t>(a) * static_cast<size_t>(dim) + static_cast<size_t>(b)] = acc;
    }

  GcboResult res;
  res.dim = dim;
  res.k_cut = k_cut;
  long double tr = 0;
  for (int a = 0; a < dim; a++) tr += K[static_cast<size_t>(a) * static_cast<size_t>(dim) + static_cast<size_t>(a)];
  res.trace = static_cast<double>(tr);

  if (res.trace < 0.2) {
    // deep upper tail: log det(I-K) = -sum_m tr(K^m)/m, then P(G>n) = -expm1(logdet)
    std::vector<long double> pw = K, nxt(K.size());
    long double logdet = -tr;
    long double tm_prev = tr;
    for (int m_i = 2; m_i <= 40; m_i++) {
      for (int a = 0; a < dim; a++)
        for (int b = 0; b < dim; b++) {
          long double acc = 0;
          for (int c = 0; c < dim; c++)
            acc += pw[static_cast<size_t>(a) * static_cast<size_t>(dim) + static_cast<size_t>(c)] *
                   K[static_cast<size_t>(c) * static_cast<size_t>(dim) + static_cast<size_t>(b)];
          nxt[static_cast<size_t>(a) * static_cast<size_t>(dim) + static_cast<size_t>(b)] = acc;
        }
      pw.swap(nxt);
      long double tm = 0;
      for (int a = 0; a < dim; a++) tm += pw[static_cast<size_t>(a) * static_cast<size_t>(dim) + static_cast<size_t>(a)];
      logdet -= tm / m_i;
      if (std::fabs(static_cast<double>(tm)) < 1e-19 * std::fabs(static_cast<double>(tm_prev)) ||
          std::fabs(static_cast<double>(tm)) < 1e-300)
        break;
      tm_prev = tm;
    }
    res.log_cdf = static_cast<double>(logdet);
    double upper = -std::expm1(static_cast<double>(logdet));
    res.log_upper = std::log(std::max(upper, 1e-300));
  } else {
    std::vector<long double> A(K.size());
    for (int a = 0; a < dim; a++)
      for (int b = 0; b < dim; b++) {
        long double v = -K[static_cast<size_t>(a) * static_cast<size_t>(dim) + static_cast<size_t>(b)];
        if (a == b) v += 1.0L;
        A[static_cast<size_t>(a) * static_cast<size_t>(dim) + static_cast<size_t>(b)] = v;
      }
    auto [logdet, sign] = logdet_lu(A, dim);
    if (sign <= 0) throw std::runtime_error("gcbo_cdf: det(I-K) lost positivity");
    res.log_cdf = static_cast<double>(logdet);
    double upper = -std::expm1(res.log_cdf);
    res.log_upper = std::log(std::max(upper, 1e-300));
  }
  return res;
}

// ------------------------------------------------------------ public surface

inline double toeplitz_log_cdf(long long M, long long N, double q, long long n,
                               ToeplitzRoute route = ToeplitzRoute::Auto) {
  if (M < 1 || N < 1 || !(q > 0.0 && q < 1.0))
    throw std::invalid_argument("toeplitz_log_cdf: bad parameters");
  if (n < 0) return -std::numeric_limits<double>::infinity();
  if (route == ToeplitzRoute::Auto)
    route = (static_cast<double>(M + N) * std::log1p(std::sqrt(q)) < 12.0 && n <= 500)
                ? ToeplitzRoute::DirectLU
                : ToeplitzRoute::Gcbo;
  if (route == ToeplitzRoute::DirectLU) {
    if (n > 500) throw std::invalid_argument("toeplitz_log_cdf: n too large for the direct route");
    return toeplitz_log_cdf_direct(M, N, q, n);
  }
  return gcbo_cdf(M, N, q, n).log_cdf;
}

inline double toeplitz_cdf(long long M, long long N, double q, long long n,
                           ToeplitzRoute route = ToeplitzRoute::Auto) {
  return std::exp(toeplitz_log_cdf(M, N, q, n, route));
}

// log P(G > n), stable near both ends
inline double toeplitz_log_upper(long long M, long long N, double q, long long n,
                                 ToeplitzRoute route = ToeplitzRoute::Auto) {
  if (n < 0) return 0.0;
  if (route == ToeplitzRoute::Auto)
    route = (static_cast<double>(M + N) * std::log1p(std::sqrt(q)) < 12.0 && n <= 500)
                ? ToeplitzRoute::DirectLU
                : ToeplitzRoute::Gcbo;
  if (route == ToeplitzRoute::DirectLU) {
    double c = toeplitz_cdf(M, N, q, n, route);
    return std::log(std::max(1.0 - c, 1e-300));
  }
  return gcbo_cdf(M, N, q, n).log_upper;
}

// quantile scan (small sizes): least n with CDF >= p
inline long long toeplitz_quantile(long long M, long long N, double q, double p) {
  for (long long n = 0; n <= 100000; n++)
    if (toeplitz_cdf(M, N, q, n) >= p) return n;
  throw std::runtime_error("toeplitz_quantile: not reached");
}

// ------------------------------------------------------------ tail exponents

struct TailReport {
  std::vector<double> x;
  std::vector<double> lower_log;  // log P(G_check(gamma N, N) <= a0 N - x b0 N^{1/3})
  std::vector<double> upper_log;  // log P(... >= a0 N + x b0 N^{1/3})
  double lower_exponent = 0;      // fitted d log(-log P)/d log x
  double upper_exponent = 0;
  bool monotone = true;
  bool window_warning = false;  // grid beyond the moderate-deviation window
};

inline TailReport tail_checks(double q, double gamma, long long N, const std::vector<double>& xs) {
  ScalingParams sp = scaling_constants(q);
  double a0 = sp.a0_of(gamma), b0 = sp.b0_of(gamma);
  double n13 = std::cbrt(static_cast<double>(N));
  long long M_sites = static_cast<long long>(std::llround(gamma * static_cast<double>(N))) + 1;
  long long N_sites = N + 1;
  TailReport rep;
  rep.x = xs;
  std::vector<double> lx, lly, uly;
  for (double x : xs) {
    if (x > 1.5 * n13) rep.window_warning = true;
    long long n_lo = static_cast<long long>(std::llround(a0 * static_cast<double>(N) - x * b0 * n13));
    long long n_hi = static_cast<long long>(std::llround(a0 * static_cast<double>(N) + x * b0 * n13));
    double lo = toeplitz_log_cdf(M_sites, N_sites, q, n_lo);
    double hi = toeplitz_log_upper(M_sites, N_sites, q, n_hi - 1);  // P(G >= n_hi)
    rep.lower_log.push_back(lo);
    rep.upper_log.push_back(hi);
    lx.push_back(std::log(x));
    lly.push_back(std::log(-lo));
    uly.push_back(std::log(-hi));
  }
  for (size_t i = 1; i < rep.lower_log.size(); i++) {
    if (rep.lower_log[i] > rep.lower_log[i - 1]) rep.monotone = false;
    if (rep.upper_log[i] > rep.upper_log[i - 1]) rep.monotone = false;
  }
  rep.lower_exponent = linear_fit(lx, lly).slope;
  rep.upper_exponent = linear_fit(lx, uly).slope;
  return rep;
}

}  // namespace kpz
