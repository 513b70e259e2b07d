#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

// Nystrom machinery for Fredholm determinants det(I - K) on (x, infinity):
// Gauss-Legendre nodes mapped through an algebraic transform, kernel sampled
// with sqrt-weight symmetrization, determinant by LU in long double.

namespace kpz {

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre on [-1,1] by Newton iteration on P_m
inline Quadrature gauss_legendre(int m) {
  static std::map<int, Quadrature> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> g(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  Quadrature q;
  q.nodes.resize(static_cast<size_t>(m));
  q.weights.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; i++) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; it++) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; k++) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = m * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= m; k++) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = m * (x * p1 - p0) / (x * x - 1.0);
    q.nodes[static_cast<size_t>(m - 1 - i)] = x;
    q.weights[static_cast<size_t>(m - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  {
    std::lock_guard<std::mutex> g(mu);
    cache[m] = q;
  }
  return q;
}

// nodes on (a, infinity): u = a + L t/(1-t), t in (0,1)
inline Quadrature half_line_quadrature(double a, int m, double scale) {
  Quadrature gl = gauss_legendre(m);
  Quadrature q;
  q.nodes.resize(gl.nodes.size());
  q.weights.resize(gl.nodes.size());
  for (size_t i = 0; i < gl.nodes.size(); i++) {
    double t = 0.5 * (gl.nodes[i] + 1.0);
    double w = 0.5 * gl.weights[i];
    q.nodes[i] = a + scale * t / (1.0 - t);
    q.weights[i] = w * scale / ((1.0 - t) * (1.0 - t));
  }
  return q;
}

// log|det| and sign by LU with partial pivoting (long double accumulation)
inline std::pair<long double, int> logdet_lu(std::vector<long double>& a, int n) {
  long double logdet = 0;
  int sign = 1;
  for (int k = 0; k < n; k++) {
    int piv = k;
    long double best = std::fabs((double)a[static_cast<size_t>(k) * n + k]);
    for (int r = k + 1; r < n; r++) {
      long double v = std::fabs((double)a[static_cast<size_t>(r) * n + k]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0L) return {-std::numeric_limits<long double>::infinity(), 0};
    if (piv != k) {
      for (int c = 0; c < n; c++) std::swap(a[static_cast<size_t>(piv) * n + c], a[static_cast<size_t>(k) * n + c]);
      sign = -sign;
    }
    long double pk = a[static_cast<size_t>(k) * n + k];
    logdet += std::log(std::fabs(static_cast<double>(pk)));
    if (pk < 0) sign = -sign;
    for (int r = k + 1; r < n; r++) {
      long double f = a[static_cast<size_t>(r) * n + k] / pk;
      if (f == 0.0L) continue;
      for (int c = k + 1; c < n; c++) a[static_cast<size_t>(r) * n + c] -= f * a[static_cast<size_t>(k) * n + c];
    }
  }
  return {logdet, sign};
}

// det(I - W^{1/2} K W^{1/2}) with K sampled on quad nodes
inline double fredholm_det(const std::function<double(double, double)>& kernel,
                           const Quadrature& quad) {
  const int n = static_cast<int>(quad.nodes.size());
  std::vector<long double> a(static_cast<size_t>(n) * n);
  std::vector<double> sw(static_cast<size_t>(n));
  for (int i = 0; i < n; i++) sw[static_cast<size_t>(i)] = std::sqrt(quad.weights[static_cast<size_t>(i)]);
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      double kij = kernel(quad.nodes[static_cast<size_t>(i)], quad.nodes[static_cast<size_t>(j)]);
      long double v = -static_cast<long double>(kij) * sw[static_cast<size_t>(i)] * sw[static_cast<size_t>(j)];
      if (i == j) v += 1.0L;
      a[static_cast<size_t>(i) * n + j] = v;
    }
  auto [logdet, sign] = logdet_lu(a, n);
  if (sign <= 0) return 0.0;  // determinant collapsed below double range
  return static_cast<double>(std::exp(logdet));
}

}  // namespace kpz
