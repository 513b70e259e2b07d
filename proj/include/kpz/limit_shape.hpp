#pragma once

#include <cmath>
#include <stdexcept>

#include "kpz/scaling.hpp"

// Limit shapes of the two LPP variants. L_check lives in the first quadrant
// (the a0-level set of (x,y) -> y a0(x/y)); L is its reflection through
// (1/2,1/2). The starred versions belong to the one-based weights.

namespace kpz {

enum class ShapeVariant { L, Lstar };

// polar radius of L_check (or L_check^*) at angle theta in (0, pi/2)
inline double limit_shape_radius(double theta, const ScalingParams& p,
                                 ShapeVariant variant = ShapeVariant::L) {
  if (!(theta > 0.0 && theta < M_PI / 2.0))
    throw std::invalid_argument("limit_shape_radius: theta outside (0, pi/2)");
  double c = std::cos(theta), s = std::sin(theta);
  if (variant == ShapeVariant::L)
    return 2.0 * (1.0 + p.sqrt_q) / ((c + s) * p.sqrt_q + 2.0 * std::sqrt(c * s));
  return 2.0 * (1.0 + p.sqrt_q) / ((c + s) + 2.0 * std::sqrt(c * s * p.q));
}

// signed location of (x,y) relative to L_check: y a0(x/y) - a0(1).
// Zero on the curve, negative strictly inside (toward the origin).
inline double on_limit_shape(double x, double y, const ScalingParams& p,
                             ShapeVariant variant = ShapeVariant::L) {
  double level = variant == ShapeVariant::L ? p.a0 : p.a0_star;
  if (y <= 0.0) {
    if (x <= 0.0) return -level;  // third quadrant: strictly inside
    // y -> 0+ limit of y a0(x/y): x q/(1-q) (or x(1+q)... for starred: x*lim a0*(g)/g)
    double slope = variant == ShapeVariant::L ? p.q / (1.0 - p.q) : 1.0 / (1.0 - p.q);
    return x * slope - level;
  }
  double gamma = x / y;
  if (gamma <= 0.0) return y * (variant == ShapeVariant::L ? p.q / (1.0 - p.q) : 1.0 / (1.0 - p.q)) - level;
  double a = variant == ShapeVariant::L ? p.a0_of(gamma) : p.a0_star_of(gamma);
  return y * a - level;
}

// Euclidean distance from a point in the closed first quadrant's ambient
// plane to the curve L_check scaled by `scale`, via golden-section search
// over theta (the curve is smooth and strictly convex in the quadrant).
inline double distance_to_limit_shape(double px, double py, const ScalingParams& p, double scale,
                                      ShapeVariant variant = ShapeVariant::L, double tol = 1e-8) {
  auto dist2 = [&](double theta) {
    double r = limit_shape_radius(theta, p, variant) * scale;
    double dx = px - r * std::cos(theta);
    double dy = py - r * std::sin(theta);
    return dx * dx + dy * dy;
  };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 1e-9, hi = M_PI / 2.0 - 1e-9;
  double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
  double f1 = dist2(x1), f2 = dist2(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - invphi * (hi - lo); f1 = dist2(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + invphi * (hi - lo); f2 = dist2(x2);
    }
  }
  return std::sqrt(dist2(0.5 * (lo + hi)));
}

// Distance to the reflected curve L (points (x,y) with (1-y,1-x) on L_check),
// both scaled by `scale`.
inline double distance_to_L(double px, double py, const ScalingParams& p, double scale,
                            ShapeVariant variant = ShapeVariant::L, double tol = 1e-8) {
  // reflect the query point: distance is preserved by the affine map
  return distance_to_limit_shape(scale - py, scale - px, p, scale, variant, tol);
}

}  // namespace kpz
