#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

// Airy function Ai and its derivative, |relative| error ~1e-12 or better on
// [-40, 40] (measured against the long-double Maclaurin series where it is
// exact and against the defining ODE elsewhere). Four regimes:
//   x in [-7.25, 4.5]   Maclaurin series in long double
//   x in (4.5, 8.5)     Taylor marching of y'' = xy from an anchor at x = 12
//   x >= 8.5            exponential asymptotic series
//   x <= -7.25          oscillatory asymptotic series (valid for any x -> -oo)

namespace kpz {
namespace airy_detail {

struct AiPair {
  long double ai = 0;
  long double aip = 0;
};

inline AiPair maclaurin(long double x) {
  const long double c1 = 0.35502805388781723926006318600418L;  // Ai(0)  = 3^{-2/3}/Gamma(2/3)
  const long double c2 = 0.25881940379280679840518356018920L;  // -Ai'(0) = 3^{-1/3}/Gamma(1/3)
  if (x == 0.0L) return {c1, -c2};
  long double x3 = x * x * x;
  long double f = 1.0L, g = x;        // term_k of F and G
  long double F = f, G = g;
  long double Fp = 0.0L, Gp = 1.0L;   // derivatives accumulate k-weighted terms
  for (int k = 0; k < 400; k++) {
    long double f_next = f * x3 / ((3.0L * k + 2) * (3.0L * k + 3));
    long double g_next = g * x3 / ((3.0L * k + 3) * (3.0L * k + 4));
    F += f_next;
    G += g_next;
    Fp += f_next * (3.0L * (k + 1)) / x;
    Gp += g_next * (3.0L * (k + 1) + 1.0L) / x;
    f = f_next;
    g = g_next;
    if (std::fabs((double)f) < 1e-30L * std::fabs((double)F) &&
        std::fabs((double)g) < 1e-30L * std::fabs((double)G))
      break;
  }
  return {c1 * F - c2 * G, c1 * Fp - c2 * Gp};
}

// u_k / v_k coefficients of the asymptotic series
inline const std::array<long double, 40>& u_coeffs() {
  static const std::array<long double, 40> u = [] {
    std::array<long double, 40> a{};
    a[0] = 1.0L;
    for (int k = 1; k < 40; k++)
      a[k] = a[k - 1] * (6.0L * k - 5) * (6.0L * k - 3) * (6.0L * k - 1) /
             ((2.0L * k - 1) * 216.0L * k);
    return a;
  }();
  return u;
}
inline const std::array<long double, 40>& v_coeffs() {
  static const std::array<long double, 40> v = [] {
    std::array<long double, 40> a{};
    const auto& u = u_coeffs();
    a[0] = 1.0L;
    for (int k = 1; k < 40; k++) a[k] = u[k] * (6.0L * k + 1) / (1.0L - 6.0L * k);
    return a;
  }();
  return v;
}

inline AiPair asymptotic_pos(long double x) {
  const long double sqrt_pi = 1.77245385090551602729816748334L;
  long double zeta = 2.0L / 3.0L * x * std::sqrt(x);
  const auto& u = u_coeffs();
  const auto& v = v_coeffs();
  long double su = 0, sv = 0, zp = 1.0L, prev = 1e30L;
  for (int k = 0; k < 40; k++) {
    long double tu = u[k] / zp;  // zp = zeta^k with alternating sign applied below
    if (std::fabs((double)tu) > (double)prev) break;  // divergent tail reached
    prev = std::fabs((double)tu);
    long double sgn = (k % 2 == 0) ? 1.0L : -1.0L;
    su += sgn * u[k] / zp;
    sv += sgn * v[k] / zp;
    zp *= zeta;
  }
  long double x14 = std::pow(x, 0.25L);
  long double e = std::exp(-zeta);
  return {e / (2.0L * sqrt_pi * x14) * su, -x14 * e / (2.0L * sqrt_pi) * sv};
}

inline AiPair asymptotic_neg(long double x) {
  const long double sqrt_pi = 1.77245385090551602729816748334L;
  long double t = -x;
  long double zeta = 2.0L / 3.0L * t * std::sqrt(t);
  const auto& u = u_coeffs();
  const auto& v = v_coeffs();
  long double ce = 0, se = 0, cpe = 0, spe = 0;  // even/odd sums for Ai and Ai'
  long double z2 = zeta * zeta, zp = 1.0L, prev = 1e30L;
  for (int k = 0; 2 * k + 1 < 40; k++) {
    long double tu = u[2 * k] / zp;
    if (std::fabs((double)tu) > (double)prev) break;
    prev = std::fabs((double)tu);
    long double sgn = (k % 2 == 0) ? 1.0L : -1.0L;
    ce += sgn * u[2 * k] / zp;
    se += sgn * u[2 * k + 1] / (zp * zeta);
    cpe += sgn * v[2 * k] / zp;
    spe += sgn * v[2 * k + 1] / (zp * zeta);
    zp *= z2;
  }
  long double phase = zeta - 0.78539816339744830961566084582L;  // zeta - pi/4
  long double c = std::cos(phase), s = std::sin(phase);
  long double t14 = std::pow(t, 0.25L);
  return {(c * ce + s * se) / (sqrt_pi * t14), t14 / sqrt_pi * (s * cpe - c * spe)};
}

// Taylor anchors on [4, 8.5], built by marching y'' = xy down from x = 12
struct OdeTable {
  static constexpr double x_top = 12.0;
  static constexpr double x_bot = 4.0;
  static constexpr double step = 0.125;
  std::vector<AiPair> anchors;  // anchors[i] at x = x_top - i*step

  static AiPair taylor_step(const AiPair& y0, long double x0, long double h) {
    // coefficients of the local Taylor series: c[n+2] = (x0 c[n] + c[n-1]) / ((n+1)(n+2))
    constexpr int T = 28;
    long double c[T + 2];
    c[0] = y0.ai;
    c[1] = y0.aip;
    for (int n = 0; n + 2 <= T + 1; n++) {
      long double prev = (n == 0) ? 0.0L : c[n - 1];
      c[n + 2] = (x0 * c[n] + prev) / ((n + 1.0L) * (n + 2.0L));
    }
    long double val = 0, der = 0;
    for (int n = T + 1; n >= 1; n--) {
      val = val * h + c[n];
      der = der * h + c[n] * static_cast<long double>(n);
    }
    val = val * h + c[0];  // val = sum c_n h^n ; der = sum n c_n h^{n-1}
    return {val, der};
  }

  OdeTable() {
    int count = static_cast<int>((x_top - x_bot) / step + 0.5) + 1;
    anchors.resize(static_cast<size_t>(count));
    anchors[0] = asymptotic_pos(static_cast<long double>(x_top));
    for (int i = 1; i < count; i++) {
      long double x0 = x_top - (i - 1) * step;
      anchors[static_cast<size_t>(i)] =
          taylor_step(anchors[static_cast<size_t>(i - 1)], x0, -static_cast<long double>(step));
    }
  }

  AiPair eval(long double x) const {
    double idx = (x_top - static_cast<double>(x)) / step;
    int i = static_cast<int>(std::floor(idx + 0.5));
    i = std::max(0, std::min(i, static_cast<int>(anchors.size()) - 1));
    long double x0 = x_top - i * step;
    return taylor_step(anchors[static_cast<size_t>(i)], x0, x - x0);
  }
};

inline const OdeTable& ode_table() {
  static const OdeTable t;
  return t;
}

// unrestricted negative side (the oscillatory series is valid for any x -> -oo)
inline AiPair eval_any(long double x) {
  if (x < -7.25L) return asymptotic_neg(x);
  if (x <= 4.5L) return maclaurin(x);
  if (x < 8.5L) return ode_table().eval(x);
  return asymptotic_pos(x);
}

}  // namespace airy_detail

inline double airy_ai(double x) {
  if (!(x >= -40.0 && x <= 40.0)) throw std::domain_error("airy_ai: x outside [-40, 40]");
  return static_cast<double>(airy_detail::eval_any(static_cast<long double>(x)).ai);
}

inline double airy_ai_prime(double x) {
  if (!(x >= -40.0 && x <= 40.0)) throw std::domain_error("airy_ai_prime: x outside [-40, 40]");
  return static_cast<double>(airy_detail::eval_any(static_cast<long double>(x)).aip);
}

// internal: no domain cap above -inf (kernels integrate far down the axis);
// clamps the superexponentially small positive tail to 0 beyond x = 40
inline double airy_ai_unbounded(double x) {
  if (x > 40.0) return 0.0;
  return static_cast<double>(airy_detail::eval_any(static_cast<long double>(x)).ai);
}
inline double airy_ai_prime_unbounded(double x) {
  if (x > 40.0) return 0.0;
  return static_cast<double>(airy_detail::eval_any(static_cast<long double>(x)).aip);
}

}  // namespace kpz
