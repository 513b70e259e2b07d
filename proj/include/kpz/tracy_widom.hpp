#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "kpz/airy.hpp"
#include "kpz/fredholm.hpp"

// Tracy-Widom GUE / GOE distribution functions as Fredholm determinants:
//   F2(x) = det(I - K_Ai) on L^2(x, inf), K_Ai the Airy kernel
//   F1(x) = det(I - B)    on L^2(x, inf), B(u,v) = Ai((u+v)/2) / 2
// plus the two-time extended-Airy-kernel joint probability.

namespace kpz {

inline double airy_kernel(double x, double y) {
  if (std::fabs(x - y) < 1e-7) {
    double m = 0.5 * (x + y);
    double ai = airy_ai_unbounded(m), aip = airy_ai_prime_unbounded(m);
    return aip * aip - m * ai * ai;
  }
  return (airy_ai_unbounded(x) * airy_ai_prime_unbounded(y) -
          airy_ai_prime_unbounded(x) * airy_ai_unbounded(y)) /
         (x - y);
}

struct TwEval {
  double value = 0;
  int nodes = 0;
  double doubling_delta = 0;  // |F(m) - F(m/2)| at the accepted node count
};

// Airy-kernel determinant with the Ai/Ai' node values cached once
inline double f2_det_at(double x, int m) {
  Quadrature q = half_line_quadrature(x, m, 10.0);
  std::vector<double> ai(static_cast<size_t>(m)), aip(static_cast<size_t>(m)), sw(static_cast<size_t>(m));
  for (int i = 0; i < m; i++) {
    ai[static_cast<size_t>(i)] = airy_ai_unbounded(q.nodes[static_cast<size_t>(i)]);
    aip[static_cast<size_t>(i)] = airy_ai_prime_unbounded(q.nodes[static_cast<size_t>(i)]);
    sw[static_cast<size_t>(i)] = std::sqrt(q.weights[static_cast<size_t>(i)]);
  }
  std::vector<long double> a(static_cast<size_t>(m) * static_cast<size_t>(m));
  for (int i = 0; i < m; i++)
    for (int j = 0; j < m; j++) {
      double kij;
      if (i == j) {
        double u = q.nodes[static_cast<size_t>(i)];
        kij = aip[static_cast<size_t>(i)] * aip[static_cast<size_t>(i)] -
              u * ai[static_cast<size_t>(i)] * ai[static_cast<size_t>(i)];
      } else {
        kij = (ai[static_cast<size_t>(i)] * aip[static_cast<size_t>(j)] -
               aip[static_cast<size_t>(i)] * ai[static_cast<size_t>(j)]) /
              (q.nodes[static_cast<size_t>(i)] - q.nodes[static_cast<size_t>(j)]);
      }
      long double v = -static_cast<long double>(kij) * sw[static_cast<size_t>(i)] * sw[static_cast<size_t>(j)];
      if (i == j) v += 1.0L;
      a[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(j)] = v;
    }
  auto [logdet, sign] = logdet_lu(a, m);
  if (sign <= 0) return 0.0;
  return static_cast<double>(std::exp(logdet));
}

inline TwEval f2_cdf_eval(double x, int m_start = 60, double tol = 1e-9) {
  double prev = -1;
  TwEval out;
  for (int m = m_start; m <= 960; m *= 2) {
    double v = f2_det_at(x, m);
    if (prev >= 0 && std::fabs(v - prev) < tol) {
      out.value = v;
      out.nodes = m;
      out.doubling_delta = std::fabs(v - prev);
      return out;
    }
    prev = v;
  }
  throw std::runtime_error("f2_cdf_eval: Nystrom quadrature did not converge");
}

inline TwEval f1_cdf_eval(double x, int m_start = 60, double tol = 1e-9) {
  auto kernel = [](double u, double v) { return 0.5 * airy_ai_unbounded(0.5 * (u + v)); };
  double prev = -1;
  TwEval out;
  for (int m = m_start; m <= 960; m *= 2) {
    Quadrature q = half_line_quadrature(x, m, 10.0);
    double v = fredholm_det(kernel, q);
    if (prev >= 0 && std::fabs(v - prev) < tol) {
      out.value = v;
      out.nodes = m;
      out.doubling_delta = std::fabs(v - prev);
      return out;
    }
    prev = v;
  }
  throw std::runtime_error("f1_cdf_eval: Nystrom quadrature did not converge");
}

inline double tracy_widom_gue_cdf(double x) {
  if (!(x >= -12.0 && x <= 8.0)) throw std::domain_error("tracy_widom_gue_cdf: x outside [-12, 8]");
  if (x >= 8.0) return 1.0;
  return f2_cdf_eval(x).value;
}

inline double tracy_widom_goe_cdf(double x) {
  if (!(x >= -12.0 && x <= 8.0)) throw std::domain_error("tracy_widom_goe_cdf: x outside [-12, 8]");
  return f1_cdf_eval(x).value;
}

// Dense cached table with monotone cubic-Hermite interpolation, for code
// that evaluates the CDF at thousands of sample points (KS references,
// inverse-transform sampling).
class CachedCdf {
 public:
  CachedCdf(std::function<double(double)> f, double lo, double hi, double step)
      : lo_(lo), step_(step) {
    int n = static_cast<int>(std::ceil((hi - lo) / step)) + 1;
    ys_.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) ys_[static_cast<size_t>(i)] = f(lo + i * step);
  }

  double operator()(double x) const {
    if (x <= lo_) return ys_.front();  // ~1e-80 at the table edge
    size_t n = ys_.size();
    double hi = lo_ + step_ * static_cast<double>(n - 1);
    if (x >= hi) return ys_.back();
    double u = (x - lo_) / step_;
    size_t i = std::min(static_cast<size_t>(u), n - 2);
    double t = u - static_cast<double>(i);
    double y0 = ys_[i], y1 = ys_[i + 1];
    double d0 = i > 0 ? 0.5 * (ys_[i + 1] - ys_[i - 1]) : ys_[i + 1] - ys_[i];
    double d1 = i + 2 < n ? 0.5 * (ys_[i + 2] - ys_[i]) : ys_[i + 1] - ys_[i];
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 + (-2 * t3 + 3 * t2) * y1 +
           (t3 - t2) * d1;
  }

  // inverse by bisection (the table is monotone)
  double inverse(double p) const {
    double a = lo_, b = lo_ + step_ * static_cast<double>(ys_.size() - 1);
    for (int it = 0; it < 100; it++) {
      double m = 0.5 * (a + b);
      if ((*this)(m) < p) a = m;
      else b = m;
    }
    return 0.5 * (a + b);
  }

 private:
  double lo_, step_;
  std::vector<double> ys_;
};

inline const CachedCdf& f2_table() {
  static const CachedCdf t([](double x) { return f2_cdf_eval(x).value; }, -13.0, 8.0, 0.05);
  return t;
}
inline const CachedCdf& f1_table() {
  static const CachedCdf t([](double x) { return f1_cdf_eval(x).value; }, -13.0, 8.0, 0.05);
  return t;
}

// mean and sd by integrating the CDF: E X = -int_{-inf}^0 F + int_0^inf (1-F),
// E X^2 = -2 int_{-inf}^0 x F + 2 int_0^inf x (1-F)
struct MomentResult {
  double mean = 0;
  double sd = 0;
};

inline MomentResult cdf_moments(const std::function<double(double)>& F, double lo = -10.0,
                                double hi = 7.0, int m = 96) {
  Quadrature gl = gauss_legendre(m);
  double m1 = 0, m2 = 0;
  auto seg = [&](double a, double b, auto&& fn) {
    double acc = 0;
    for (size_t i = 0; i < gl.nodes.size(); i++) {
      double x = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
      acc += 0.5 * (b - a) * gl.weights[i] * fn(x);
    }
    return acc;
  };
  m1 -= seg(lo, 0.0, [&](double x) { return F(x); });
  m1 += seg(0.0, hi, [&](double x) { return 1.0 - F(x); });
  m2 += seg(lo, 0.0, [&](double x) { return -2.0 * x * F(x); });
  m2 += seg(0.0, hi, [&](double x) { return 2.0 * x * (1.0 - F(x)); });
  MomentResult r;
  r.mean = m1;
  r.sd = std::sqrt(m2 - m1 * m1);
  return r;
}

// ------------------------------------------------------- two-time joint law

// P(A(t1) <= x1, A(t2) <= x2) = det(I - f^{1/2} K_ext f^{1/2}) over
// {t1,t2} x R. Blocks:
//   equal time: Airy kernel
//   t >= t':  int_0^inf e^{-L dt} Ai(xi+L) Ai(xi'+L) dL
//   t < t' : -int_0^inf e^{-u dt'} Ai(xi-u) Ai(xi'-u) du   (dt' = t'-t)
inline double extended_airy_joint(double t1, double x1, double t2, double x2, int m = 60) {
  if (t1 > t2) throw std::invalid_argument("extended_airy_joint: need t1 <= t2");
  double dt = t2 - t1;
  if (dt == 0.0) return tracy_widom_gue_cdf(std::min(x1, x2));
  if (dt < 0.25) throw std::domain_error("extended_airy_joint: supported gaps are 0 or >= 0.25");

  Quadrature q1 = half_line_quadrature(x1, m, 10.0);
  Quadrature q2 = half_line_quadrature(x2, m, 10.0);

  // lambda-quadratures for the off-diagonal blocks
  int ml = 160;
  Quadrature gl = gauss_legendre(ml);
  double span_down = std::min(40.0 / dt, 160.0);  // e^{-u dt} damping
  double span_up = 45.0;                          // Airy decay

  // B21(xi in q2, xi' in q1) = int_0^span_up e^{-L dt} Ai(xi+L)Ai(xi'+L) dL >= rank-ml product
  // B12(xi in q1, xi' in q2) = -int_0^span_down e^{-u dt} Ai(xi-u)Ai(xi'-u) du
  const int n = m;
  std::vector<double> a21(static_cast<size_t>(n) * ml), b21(static_cast<size_t>(n) * ml);
  std::vector<double> a12(static_cast<size_t>(n) * ml), b12(static_cast<size_t>(n) * ml);
  for (int w = 0; w < ml; w++) {
    double Lu = 0.5 * span_up * (gl.nodes[static_cast<size_t>(w)] + 1.0);
    double wu = 0.5 * span_up * gl.weights[static_cast<size_t>(w)] * std::exp(-Lu * dt);
    double Ud = 0.5 * span_down * (gl.nodes[static_cast<size_t>(w)] + 1.0);
    double wd = 0.5 * span_down * gl.weights[static_cast<size_t>(w)] * std::exp(-Ud * dt);
    for (int i = 0; i < n; i++) {
      a21[static_cast<size_t>(i) * ml + w] =
          airy_ai_unbounded(q2.nodes[static_cast<size_t>(i)] + Lu) * wu;
      b21[static_cast<size_t>(i) * ml + w] = airy_ai_unbounded(q1.nodes[static_cast<size_t>(i)] + Lu);
      a12[static_cast<size_t>(i) * ml + w] =
          airy_ai_unbounded(q1.nodes[static_cast<size_t>(i)] - Ud) * wd;
      b12[static_cast<size_t>(i) * ml + w] = airy_ai_unbounded(q2.nodes[static_cast<size_t>(i)] - Ud);
    }
  }

  const int dim = 2 * n;
  std::vector<long double> A(static_cast<size_t>(dim) * dim, 0.0L);
  auto put = [&](int r, int c, double kv, double wr, double wc) {
    long double v = -static_cast<long double>(kv) * std::sqrt(wr) * std::sqrt(wc);
    if (r == c) v += 1.0L;
    A[static_cast<size_t>(r) * dim + c] = v;
  };
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++) {
      // block (1,1): time t1 with itself
      put(i, j, airy_kernel(q1.nodes[static_cast<size_t>(i)], q1.nodes[static_cast<size_t>(j)]),
          q1.weights[static_cast<size_t>(i)], q1.weights[static_cast<size_t>(j)]);
      // block (2,2)
      put(n + i, n + j,
          airy_kernel(q2.nodes[static_cast<size_t>(i)], q2.nodes[static_cast<size_t>(j)]),
          q2.weights[static_cast<size_t>(i)], q2.weights[static_cast<size_t>(j)]);
      // block (1,2): K_ext(t1, xi; t2, xi') with t1 < t2
      double k12 = 0;
      for (int w = 0; w < ml; w++)
        k12 += a12[static_cast<size_t>(i) * ml + w] * b12[static_cast<size_t>(j) * ml + w];
      put(i, n + j, -k12, q1.weights[static_cast<size_t>(i)], q2.weights[static_cast<size_t>(j)]);
      // block (2,1): K_ext(t2, xi; t1, xi') with t2 > t1
      double k21 = 0;
      for (int w = 0; w < ml; w++)
        k21 += a21[static_cast<size_t>(i) * ml + w] * b21[static_cast<size_t>(j) * ml + w];
      put(n + i, j, k21, q2.weights[static_cast<size_t>(i)], q1.weights[static_cast<size_t>(j)]);
    }
  auto [logdet, sign] = logdet_lu(A, dim);
  if (sign <= 0) return 0.0;
  double v = std::exp(static_cast<double>(logdet));
  return std::min(1.0, std::max(0.0, v));
}

}  // namespace kpz
