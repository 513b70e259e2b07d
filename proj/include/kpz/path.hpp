#pragma once

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "kpz/scaling.hpp"

// Down-right lattice paths: unit steps right (1,0) or down (0,-1),
// x nondecreasing, y nonincreasing. These are the "initial data" of
// point-to-curve LPP.

namespace kpz {

struct LatticePoint {
  long long x = 0;
  long long y = 0;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

struct DownRightPath {
  std::vector<LatticePoint> vertices;

  bool valid() const {
    for (size_t k = 1; k < vertices.size(); k++) {
      long long dx = vertices[k].x - vertices[k - 1].x;
      long long dy = vertices[k].y - vertices[k - 1].y;
      bool right = (dx == 1 && dy == 0);
      bool down = (dx == 0 && dy == -1);
      if (!right && !down) return false;
    }
    return true;
  }
  void check() const {
    if (!valid()) throw std::invalid_argument("DownRightPath: not a down-right lattice path");
  }

  void write_csv(std::ostream& os) const {
    os << "x,y\n";
    for (const auto& v : vertices) os << v.x << "," << v.y << "\n";
  }
};

// Saw-tooth profile l0: 1-periodic tent, l0(k) = 0, l0(k + 1/2) = -1/2.
inline double sawtooth_l0(double s) {
  double k = std::floor(s);
  double frac = s - k;
  return frac <= 0.5 ? -frac : frac - 1.0;
}

// The saw-tooth staircase through the origin: points (-l0(s)+s, -l0(s)-s).
// Anchors at integer s are (k,-k); half-integers give the corners (k+1,-k).
inline DownRightPath sawtooth_path(long long k_min, long long k_max) {
  DownRightPath p;
  for (long long k = k_min; k < k_max; k++) {
    p.vertices.push_back({k, -k});
    p.vertices.push_back({k + 1, -k});
  }
  p.vertices.push_back({k_max, -k_max});
  return p;
}

enum class HypVariant { Hyp, HypStar };

struct ProfilePath {
  DownRightPath path;
  // anchor bookkeeping: anchor k -> vertex index of (k - m_k, -k - m_k)
  long long k_min = 0, k_max = 0;
  std::vector<long long> m;          // diagonal offsets per anchor
  std::vector<size_t> anchor_index;  // into path.vertices
  double max_abs_l_n = 0;            // rounding discrepancy, units of the ell scale
  double scale = 0;                  // d0 N^{1/3} (or starred)
  double c0n23 = 0;                  // c0 N^{2/3}
  double s_of_anchor(long long k) const { return static_cast<double>(k) / c0n23; }
};

// Realize the central part of a scaled profile ell(s) (+ optional l_n(s)) as
// a lattice staircase: anchor vertices (k - m_k, -k - m_k) with
// m_k = round((ell + l_n)(s_k) d0 N^{1/3}), s_k = k / (c0 N^{2/3}).
// The residual absorbed into l_n by rounding is reported; it is at most
// half a lattice unit over the d0 N^{1/3} scale.
template <typename EllFn, typename LnFn>
ProfilePath path_from_profile(EllFn&& ell, LnFn&& l_n, long long N, const ScalingParams& params,
                              HypVariant variant, double s_min, double s_max) {
  if (N < 1) throw std::invalid_argument("path_from_profile: N < 1");
  ProfilePath out;
  double n13 = std::cbrt(static_cast<double>(N));
  out.scale = (variant == HypVariant::HypStar ? params.d0_star : params.d0) * n13;
  out.c0n23 = params.c0 * n13 * n13;
  out.k_min = static_cast<long long>(std::ceil(s_min * out.c0n23));
  out.k_max = static_cast<long long>(std::floor(s_max * out.c0n23));
  if (out.k_max <= out.k_min) throw std::invalid_argument("path_from_profile: N too small for interval");

  out.m.reserve(static_cast<size_t>(out.k_max - out.k_min + 1));
  for (long long k = out.k_min; k <= out.k_max; k++) {
    double s = out.s_of_anchor(k);
    double target = (ell(s) + l_n(s)) * out.scale;
    long long mk = llround(target);
    out.m.push_back(mk);
    double resid = std::fabs(static_cast<double>(mk) - target) / out.scale;
    if (resid > out.max_abs_l_n) out.max_abs_l_n = resid;
  }
  // steeper than one lattice unit per anchor cannot be realized as a staircase
  for (size_t a = 1; a < out.m.size(); a++)
    if (std::llabs(out.m[a] - out.m[a - 1]) > 1)
      throw std::invalid_argument("path_from_profile: N too small, profile too steep on the lattice");

  auto& v = out.path.vertices;
  for (size_t a = 0; a < out.m.size(); a++) {
    long long k = out.k_min + static_cast<long long>(a);
    LatticePoint anchor{k - out.m[a], -k - out.m[a]};
    if (a == 0) {
      out.anchor_index.push_back(0);
      v.push_back(anchor);
    } else {
      // connect previous anchor: dm in {-1,0,1} -> (right x (1-dm), down x (1+dm))
      long long dm = out.m[a] - out.m[a - 1];
      LatticePoint cur = v.back();
      for (long long r = 0; r < 1 - dm; r++) v.push_back({++cur.x, cur.y});
      for (long long d = 0; d < 1 + dm; d++) v.push_back({cur.x, --cur.y});
      out.anchor_index.push_back(v.size() - 1);
    }
  }
  out.path.check();
  return out;
}

// Read the realized profile back: (ell + l_n)(s_k) as seen by the lattice.
inline double profile_read_back(const ProfilePath& p, size_t anchor) {
  return static_cast<double>(p.m[anchor]) / p.scale;
}

}  // namespace kpz
