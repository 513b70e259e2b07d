#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "kpz/path.hpp"
#include "kpz/scaling.hpp"
#include "kpz/weights.hpp"

// Dynamic-programming engines for the LPP variants. All sweeps are wavefront
// (one slice of state); weights are re-derived from the pure field, never
// stored. Values that are -infinity by convention (target does not dominate
// the source) are returned as empty optionals.

namespace kpz {

// ---------------------------------------------------------------- point to point

// G_{(to)}(from) for lattice endpoints: -infinity unless from <= to coordinatewise.
inline std::optional<long long> lpp_point(const WeightField& f, LatticePoint from, LatticePoint to) {
  if (to.x < from.x || to.y < from.y) return std::nullopt;
  const long long W = to.x - from.x, H = to.y - from.y;
  std::vector<long long> col(static_cast<size_t>(H) + 1, 0);
  for (long long x = 0; x <= W; x++) {
    for (long long y = 0; y <= H; y++) {
      long long w = f.weight_at(from.x + x, from.y + y);
      long long best;
      if (x == 0 && y == 0) best = 0;
      else if (x == 0) best = col[static_cast<size_t>(y - 1)];
      else if (y == 0) best = col[0];
      else best = std::max(col[static_cast<size_t>(y)], col[static_cast<size_t>(y - 1)]);
      col[static_cast<size_t>(y)] = w + best;
    }
  }
  return col[static_cast<size_t>(H)];
}

// reversed LPP: G_check(x, y) = G_{(x,y)}(0,0)
inline std::optional<long long> lpp_check(const WeightField& f, long long x, long long y) {
  return lpp_point(f, {0, 0}, {x, y});
}

// Linear interpolation when exactly one coordinate of `from` is non-integer.
inline std::optional<double> lpp_point_interp(const WeightField& f, double fx, double fy,
                                              LatticePoint to) {
  auto is_int = [](double v) { return v == std::floor(v); };
  if (is_int(fx) && is_int(fy)) {
    auto v = lpp_point(f, {static_cast<long long>(fx), static_cast<long long>(fy)}, to);
    if (!v) return std::nullopt;
    return static_cast<double>(*v);
  }
  if (!is_int(fx) && !is_int(fy))
    throw std::invalid_argument("lpp_point_interp: both coordinates non-integer");
  long long ix, iy;
  double frac;
  bool along_y = is_int(fx);
  if (along_y) {
    ix = static_cast<long long>(fx);
    iy = static_cast<long long>(std::floor(fy));
    frac = fy - std::floor(fy);
  } else {
    ix = static_cast<long long>(std::floor(fx));
    iy = static_cast<long long>(fy);
    frac = fx - std::floor(fx);
  }
  auto lo = lpp_point(f, {ix, iy}, to);
  auto hi = lpp_point(f, along_y ? LatticePoint{ix, iy + 1} : LatticePoint{ix + 1, iy}, to);
  if (!lo || !hi) return std::nullopt;
  return (1.0 - frac) * static_cast<double>(*lo) + frac * static_cast<double>(*hi);
}

// ---------------------------------------------------------------- point to curve

struct CurveLppResult {
  long long value = 0;
  size_t argmax_vertex = 0;  // leftmost (smallest path parameter) on ties
};

// Max over the path's lattice vertices dominated by `to` of the point-to-point
// value; single sweep over the staircase region between path and target.
inline std::optional<CurveLppResult> lpp_to_curve(const WeightField& f, LatticePoint to,
                                                  const DownRightPath& path) {
  if (path.vertices.empty()) throw std::invalid_argument("lpp_to_curve: empty path");
  path.check();

  // dominated vertices, in path order
  std::vector<std::pair<LatticePoint, size_t>> sources;
  for (size_t i = 0; i < path.vertices.size(); i++) {
    const auto& v = path.vertices[i];
    if (v.x <= to.x && v.y <= to.y) sources.push_back({v, i});
  }
  if (sources.empty()) return std::nullopt;

  long long x_lo = sources.front().first.x;
  for (auto& s : sources) x_lo = std::min(x_lo, s.first.x);

  // per-column lower y bound: staircase floor induced by the dominated vertices
  // (path is down-right, so the minimal y among vertices with vx <= x)
  const long long W = to.x - x_lo;
  std::vector<long long> floor_y(static_cast<size_t>(W) + 1, std::numeric_limits<long long>::max());
  std::map<std::pair<long long, long long>, size_t> vertex_at;  // (x,y) -> first path index
  for (auto& [v, idx] : sources) {
    auto key = std::make_pair(v.x, v.y);
    auto it = vertex_at.find(key);
    if (it == vertex_at.end()) vertex_at[key] = idx;
  }
  {
    long long cur = std::numeric_limits<long long>::max();
    size_t si = 0;
    std::vector<std::pair<LatticePoint, size_t>> sorted = sources;  // already x-nondecreasing
    for (long long x = x_lo; x <= to.x; x++) {
      while (si < sorted.size() && sorted[si].first.x <= x) {
        cur = std::min(cur, sorted[si].first.y);
        si++;
      }
      floor_y[static_cast<size_t>(x - x_lo)] = cur;
    }
  }

  const long long kNone = std::numeric_limits<long long>::min();
  struct Cell {
    long long v = std::numeric_limits<long long>::min();
    size_t origin = 0;
  };
  std::vector<Cell> col, prev;
  auto y_count = [&](long long x) { return to.y - floor_y[static_cast<size_t>(x - x_lo)] + 1; };

  for (long long x = x_lo; x <= to.x; x++) {
    long long fy = floor_y[static_cast<size_t>(x - x_lo)];
    col.assign(static_cast<size_t>(y_count(x)), Cell{});
    for (long long y = fy; y <= to.y; y++) {
      long long w = f.weight_at(x, y);
      Cell best{kNone, 0};
      auto consider = [&](long long val, size_t origin) {
        if (val == kNone) return;
        if (val > best.v || (val == best.v && origin < best.origin)) best = {val, origin};
      };
      if (x > x_lo) {
        long long pfy = floor_y[static_cast<size_t>(x - 1 - x_lo)];
        if (y >= pfy) {
          const Cell& c = prev[static_cast<size_t>(y - pfy)];
          consider(c.v, c.origin);
        }
      }
      if (y > fy) {
        const Cell& c = col[static_cast<size_t>(y - 1 - fy)];
        consider(c.v, c.origin);
      }
      auto vit = vertex_at.find({x, y});
      if (vit != vertex_at.end()) consider(0, vit->second);
      if (best.v == kNone)
        col[static_cast<size_t>(y - fy)] = Cell{kNone, 0};
      else
        col[static_cast<size_t>(y - fy)] = Cell{best.v + w, best.origin};
    }
    prev.swap(col);
  }
  const Cell& res = prev[static_cast<size_t>(to.y - floor_y[static_cast<size_t>(W)])];
  if (res.v == kNone) return std::nullopt;
  return CurveLppResult{res.v, res.origin};
}

// One-based weights: G* satisfies G* - G = x'+y'-x-y+1 on coupled fields.
inline std::optional<long long> lpp_star(const WeightField& f, LatticePoint from, LatticePoint to) {
  if (f.variant != WeightVariant::OneBased)
    throw std::invalid_argument("lpp_star: field must be OneBased");
  return lpp_point(f, from, to);
}

// ---------------------------------------------------------------- profiles

struct AntidiagonalProfile {
  long long N = 0;
  long long k_min = 0;
  std::vector<long long> values;  // G_check(N+k, N-k) for k = k_min..k_max
  ScalingParams params;

  long long k_max() const { return k_min + static_cast<long long>(values.size()) - 1; }
  long long at(long long k) const { return values[static_cast<size_t>(k - k_min)]; }
};

// displaced request: value of G_check(N+m+k, N+m-k) for per-entry offsets m
struct DisplacedCell {
  long long k = 0;
  long long m = 0;
};

// Single triangle sweep over antidiagonals x+y = 0..2*max(N+m); collects the
// requested cells as their diagonal is passed. O(slice) memory.
inline std::vector<long long> antidiagonal_sweep(const WeightField& f, long long N,
                                                 const std::vector<DisplacedCell>& cells) {
  long long d_max = 0;
  for (const auto& c : cells) {
    if (std::llabs(c.k) > N + c.m) throw std::invalid_argument("antidiagonal_sweep: |k| > N+m");
    d_max = std::max(d_max, 2 * (N + c.m));
  }
  std::map<long long, std::vector<std::pair<long long, size_t>>> by_diag;  // diag -> (x, out idx)
  for (size_t i = 0; i < cells.size(); i++)
    by_diag[2 * (N + cells[i].m)].push_back({N + cells[i].m + cells[i].k, i});

  std::vector<long long> out(cells.size(), 0);
  std::vector<long long> cur, prev;
  cur.reserve(static_cast<size_t>(d_max) + 1);
  prev.reserve(static_cast<size_t>(d_max) + 1);
  for (long long d = 0; d <= d_max; d++) {
    cur.assign(static_cast<size_t>(d) + 1, 0);
    for (long long x = 0; x <= d; x++) {
      long long w = f.weight_at(x, d - x);
      long long best = 0;
      if (d > 0) {
        if (x == 0) best = prev[0];                                       // only (0, d-1)
        else if (x == d) best = prev[static_cast<size_t>(d - 1)];         // only (d-1, 0)
        else best = std::max(prev[static_cast<size_t>(x - 1)], prev[static_cast<size_t>(x)]);
      }
      cur[static_cast<size_t>(x)] = w + best;
    }
    auto it = by_diag.find(d);
    if (it != by_diag.end())
      for (auto& [x, idx] : it->second) out[idx] = cur[static_cast<size_t>(x)];
    prev.swap(cur);
  }
  return out;
}

inline AntidiagonalProfile antidiagonal_profile(const WeightField& f, long long N, long long k_min,
                                                long long k_max) {
  if (k_min > k_max || std::llabs(k_min) > N || std::llabs(k_max) > N)
    throw std::invalid_argument("antidiagonal_profile: bad k range");
  std::vector<DisplacedCell> cells;
  for (long long k = k_min; k <= k_max; k++) cells.push_back({k, 0});
  AntidiagonalProfile p;
  p.N = N;
  p.k_min = k_min;
  p.values = antidiagonal_sweep(f, N, cells);
  p.params = scaling_constants(f.q);
  return p;
}

// ---------------------------------------------------------------- rescaling

// Sampled rescaled process on the natural grid s_k = k / (c0 N^{2/3});
// linear interpolation between grid points.
struct RescaledProcess {
  long long N = 0;
  long long k_min = 0;
  double c0n23 = 0;
  double b0n13 = 0;
  std::vector<double> values;  // H(s_k)

  double s_at(long long k) const { return static_cast<double>(k) / c0n23; }
  double s_min() const { return s_at(k_min); }
  double s_max() const { return s_at(k_min + static_cast<long long>(values.size()) - 1); }
  double at_k(long long k) const { return values[static_cast<size_t>(k - k_min)]; }
  double eval(double s) const {
    double ks = s * c0n23;
    long long k0 = static_cast<long long>(std::floor(ks));
    if (k0 < k_min || k0 + 1 > k_min + static_cast<long long>(values.size()) - 1)
      throw std::out_of_range("RescaledProcess::eval: s outside sampled window");
    double frac = ks - static_cast<double>(k0);
    return (1.0 - frac) * at_k(k0) + frac * at_k(k0 + 1);
  }
};

// H_N from a computed profile: H_N(s_k) = (G_check(N+k,N-k) - a0 N)/(b0 N^{1/3}).
inline RescaledProcess rescale_H(const AntidiagonalProfile& p) {
  RescaledProcess r;
  r.N = p.N;
  r.k_min = p.k_min;
  double n13 = std::cbrt(static_cast<double>(p.N));
  r.c0n23 = p.params.c0 * n13 * n13;
  r.b0n13 = p.params.b0 * n13;
  r.values.reserve(p.values.size());
  for (long long v : p.values)
    r.values.push_back((static_cast<double>(v) - p.params.a0 * static_cast<double>(p.N)) / r.b0n13);
  return r;
}

// H~_N: profile displaced diagonally by ell_n(s) N^alpha, sharing the weight
// field with rescale_H for paired slow-decorrelation statistics. Centering
// uses the realized lattice offsets m_k.
template <typename EllNFn>
RescaledProcess rescale_H_general(const WeightField& f, long long N, double alpha, EllNFn&& ell_n,
                                  long long k_min, long long k_max) {
  ScalingParams sp = scaling_constants(f.q);
  double n13 = std::cbrt(static_cast<double>(N));
  double na = std::pow(static_cast<double>(N), alpha);
  double c0n23 = sp.c0 * n13 * n13;

  std::vector<DisplacedCell> cells;
  std::vector<long long> ms;
  for (long long k = k_min; k <= k_max; k++) {
    double s = static_cast<double>(k) / c0n23;
    long long m = llround(ell_n(s) * na);
    cells.push_back({k, m});
    ms.push_back(m);
  }
  std::vector<long long> vals = antidiagonal_sweep(f, N, cells);

  RescaledProcess r;
  r.N = N;
  r.k_min = k_min;
  r.c0n23 = c0n23;
  r.b0n13 = sp.b0 * n13;
  r.values.reserve(vals.size());
  for (size_t i = 0; i < vals.size(); i++) {
    double center = sp.a0 * (static_cast<double>(N) + static_cast<double>(ms[i]));
    r.values.push_back((static_cast<double>(vals[i]) - center) / r.b0n13);
  }
  return r;
}

// Passage times from every saw-tooth anchor (k,-k), k in [k_min, k_max], to a
// single target, in one reverse sweep over the staircase-bounded region.
// R(k) dominates the staircase corner (k+1,-k), so max_k R(k) equals the
// point-to-curve value against the full saw-tooth.
inline std::vector<long long> sawtooth_point_profile(const WeightField& f, LatticePoint target,
                                                     long long k_min, long long k_max) {
  if (k_min > k_max) throw std::invalid_argument("sawtooth_point_profile: empty range");
  if (k_max > target.x || -k_min > target.y)
    throw std::invalid_argument("sawtooth_point_profile: anchor not dominated by target");
  std::vector<long long> out(static_cast<size_t>(k_max - k_min + 1), 0);
  // the column floor max(-x, -k_max) is nonincreasing in x, so the right
  // neighbor (from the previously computed column) always exists
  auto floor_y = [&](long long x) { return std::max(-x, -k_max); };
  std::vector<long long> col, right;
  for (long long x = target.x; x >= k_min; x--) {
    long long fy = floor_y(x);
    col.assign(static_cast<size_t>(target.y - fy + 1), 0);
    for (long long y = target.y; y >= fy; y--) {
      long long w = f.weight_at(x, y);
      long long best = 0;
      if (x < target.x) best = right[static_cast<size_t>(y - floor_y(x + 1))];
      if (y < target.y) best = std::max(best, col[static_cast<size_t>(y - fy + 1)]);
      col[static_cast<size_t>(y - fy)] = w + best;
    }
    if (x <= k_max) out[static_cast<size_t>(x - k_min)] = col[0];  // anchor (x,-x) is the column floor
    right.swap(col);
  }
  return out;
}

// ---------------------------------------------------------------- boundary-modified LPP

enum class BoundaryAxis { Vertical, Corner };

struct BoundaryLppResult {
  double value = 0;
  LatticePoint argmax;
  bool argmax_on_window_edge = false;  // warning: window may be too small
};

// Reverse DP from `target`: R(x,y) = LPP from (x,y) to target, for all (x,y)
// on the requested axis range, in one sweep; then max of R - f.
// Vertical: L = {(0,y) : y in [y_lo, min(y_hi, target.y)]}, maximize R(0,y) - f(y).
// Corner:   L = {(0,y): y>=0} u {(x,0): x>=0}, f(y) on the vertical arm and
//           f(-x) on the horizontal arm.
inline std::optional<BoundaryLppResult> lpp_with_boundary(const WeightField& f, LatticePoint target,
                                                          BoundaryAxis axis,
                                                          const std::function<double(long long)>& fn,
                                                          long long y_lo, long long y_hi) {
  if (target.x < 0 || target.y < 0) throw std::invalid_argument("lpp_with_boundary: target in quadrant");
  long long lo = axis == BoundaryAxis::Corner ? 0 : y_lo;
  long long hi = std::min(y_hi, target.y);
  if (lo > hi) throw std::invalid_argument("lpp_with_boundary: empty domain");

  // reverse sweep, columns from target.x down to 0; slice over y in [lo, target.y]
  const size_t H = static_cast<size_t>(target.y - lo + 1);
  std::vector<long long> col(H, 0), right(H, 0);
  std::vector<long long> bottom_row;  // R(x, 0) for the corner variant
  if (axis == BoundaryAxis::Corner) bottom_row.assign(static_cast<size_t>(target.x) + 1, 0);

  for (long long x = target.x; x >= 0; x--) {
    for (long long y = target.y; y >= lo; y--) {
      size_t yi = static_cast<size_t>(y - lo);
      long long w = f.weight_at(x, y);
      long long best;
      if (x == target.x && y == target.y) best = 0;
      else if (x == target.x) best = col[yi + 1];
      else if (y == target.y) best = right[yi];
      else best = std::max(right[yi], col[yi + 1]);
      col[yi] = w + best;
    }
    if (axis == BoundaryAxis::Corner && lo == 0) bottom_row[static_cast<size_t>(x)] = col[0];
    right = col;
  }

  BoundaryLppResult res;
  double best = -std::numeric_limits<double>::infinity();
  bool found = false;
  auto consider = [&](double v, LatticePoint p, bool edge) {
    if (!std::isfinite(v)) return;
    if (!found || v > best) {
      best = v;
      res.argmax = p;
      res.argmax_on_window_edge = edge;
      found = true;
    }
  };
  for (long long y = lo; y <= hi; y++) {
    double pen = fn(y);
    if (!std::isfinite(pen)) continue;
    consider(static_cast<double>(right[static_cast<size_t>(y - lo)]) - pen, {0, y},
             y == y_lo || y == y_hi);
  }
  if (axis == BoundaryAxis::Corner) {
    for (long long x = 1; x <= std::min(target.x, -y_lo); x++) {
      double pen = fn(-x);
      if (!std::isfinite(pen)) continue;
      consider(static_cast<double>(bottom_row[static_cast<size_t>(x)]) - pen, {x, 0}, x == -y_lo);
    }
  }
  if (!found) return std::nullopt;
  res.value = best;
  return res;
}

}  // namespace kpz
