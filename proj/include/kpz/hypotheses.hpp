#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "kpz/limit_shape.hpp"
#include "kpz/path.hpp"
#include "kpz/scaling.hpp"

// Executable validators for the growth-and-shape hypotheses on LPP initial
// data. Finite N-lists only; each condition reports a boolean and a margin.

namespace kpz {

enum class HypKind { Hyp, HypStar, HypVert, HypCorner };

struct HypothesisParams {
  double C = 1.0;
  double c1 = 0.5;   // in (0,1)
  double c2 = 0.2;   // in (0,1/3)
  double c3 = -0.5;  // range depends on variant
  double a_inf = -std::numeric_limits<double>::infinity();
  double b_inf = std::numeric_limits<double>::infinity();
  std::function<double(long long)> m_n = [](long long N) { return 10.0 / std::cbrt(static_cast<double>(N)); };
  double sigma = 0.0;
  HypKind variant = HypKind::Hyp;
};

struct ConditionResult {
  std::string name;
  bool ok = false;
  double margin = 0;  // positive = satisfied with room
};

struct HypReportPerN {
  long long N = 0;
  std::vector<ConditionResult> conditions;
  bool pass = false;
};

struct ValidationReport {
  std::vector<HypReportPerN> per_n;
  bool pass = false;
};

namespace detail {

inline bool in_region_D(double x, double y, double c3, const ScalingParams& p, ShapeVariant sv,
                        double* violation) {
  double v = 0;
  v = std::max(v, x - 1.0);
  v = std::max(v, y - 1.0);
  v = std::max(v, c3 - x);
  v = std::max(v, c3 - y);
  v = std::max(v, on_limit_shape(1.0 - y, 1.0 - x, p, sv));
  *violation = v;
  return v <= 1e-12;
}

}  // namespace detail

// Hyp / Hyp*: validate a concrete down-right path against (ell, params) at one N.
inline HypReportPerN validate_hyp_path(const DownRightPath& path,
                                       const std::function<double(double)>& ell,
                                       const HypothesisParams& hp, const ScalingParams& sp,
                                       long long N) {
  HypReportPerN rep;
  rep.N = N;
  path.check();
  double n13 = std::cbrt(static_cast<double>(N));
  double n23 = n13 * n13;
  double d_scale = (hp.variant == HypKind::HypStar ? sp.d0_star : sp.d0) * n13;
  ShapeVariant sv = hp.variant == HypKind::HypStar ? ShapeVariant::Lstar : ShapeVariant::L;
  double central_halfwidth = 2.0 * sp.c0 * std::pow(static_cast<double>(N), 2.0 / 3.0 + hp.c2);

  // (i) quadratic envelope on ell over the central s-range
  {
    double smax = std::pow(static_cast<double>(N), hp.c2);
    double margin = std::numeric_limits<double>::infinity();
    for (int g = -400; g <= 400; g++) {
      double s = smax * g / 400.0;
      if (s < hp.a_inf || s > hp.b_inf) continue;
      margin = std::min(margin, hp.C + hp.c1 * s * s - std::fabs(ell(s)));
    }
    rep.conditions.push_back({"quadratic_envelope", margin > 0, margin});
  }

  // (ii) central-part reconstruction residual max |l_N|
  {
    double max_resid = 0;
    bool any = false;
    for (const auto& v : path.vertices) {
      double anti = static_cast<double>(v.x - v.y);
      if (std::fabs(anti) >= central_halfwidth) continue;
      if ((v.x - v.y) % 2 != 0) continue;  // anchors only; staircase corners carry the half-step
      double s = anti / (2.0 * sp.c0 * n23);
      if (s < hp.a_inf || s > hp.b_inf) continue;
      double implied = -static_cast<double>(v.x + v.y) / (2.0 * d_scale);
      max_resid = std::max(max_resid, std::fabs(implied - ell(s)));
      any = true;
    }
    double bound = hp.m_n(N);
    rep.conditions.push_back({"central_residual", any && max_resid <= bound, bound - max_resid});
  }

  // (iii) non-central part inside region D (scaled by N)
  // (iv) Euclidean distance from non-central part to N * L exceeds N^{1/3+2c2}
  {
    double worst_violation = 0;
    double min_dist = std::numeric_limits<double>::infinity();
    for (const auto& v : path.vertices) {
      double anti = static_cast<double>(v.x - v.y);
      if (std::fabs(anti) < central_halfwidth) continue;
      if (v.x > N || v.y > N) continue;
      double viol;
      detail::in_region_D(static_cast<double>(v.x) / N, static_cast<double>(v.y) / N, hp.c3, sp, sv,
                          &viol);
      worst_violation = std::max(worst_violation, viol);
      min_dist = std::min(min_dist, distance_to_L(static_cast<double>(v.x),
                                                  static_cast<double>(v.y), sp,
                                                  static_cast<double>(N), sv));
    }
    rep.conditions.push_back({"region_D", worst_violation <= 1e-12, -worst_violation});
    double required = std::pow(static_cast<double>(N), 1.0 / 3.0 + 2.0 * hp.c2);
    bool dist_ok = min_dist > required;  // vacuously true if no non-central vertices
    rep.conditions.push_back(
        {"limit_shape_distance",
         dist_ok || min_dist == std::numeric_limits<double>::infinity(),
         min_dist == std::numeric_limits<double>::infinity() ? 0.0 : min_dist - required});
  }

  rep.pass = true;
  for (const auto& c : rep.conditions) rep.pass = rep.pass && c.ok;
  return rep;
}

// Hyp^| / Hyp^屋-corner: validate a boundary-penalty function f_N at one N.
// f_n is evaluated on the lattice scale: f_n(y) for y in D_N.
inline HypReportPerN validate_hyp_boundary(const std::function<double(double)>& f_n,
                                           const std::function<double(double)>& ell,
                                           const HypothesisParams& hp, const ScalingParams& sp,
                                           long long N) {
  HypReportPerN rep;
  rep.N = N;
  double n13 = std::cbrt(static_cast<double>(N));
  double n23 = n13 * n13;
  bool corner = hp.variant == HypKind::HypCorner;

  // (i) one-sided quadratic envelope
  {
    double smax = std::pow(static_cast<double>(N), hp.c2);
    double margin = std::numeric_limits<double>::infinity();
    for (int g = -400; g <= 400; g++) {
      double s = smax * g / 400.0;
      if (s < hp.a_inf || s > hp.b_inf) continue;
      margin = std::min(margin, hp.C + hp.c1 * s * s - ell(s));
    }
    rep.conditions.push_back({"quadratic_envelope", margin > 0, margin});
  }

  // (ii) central characterization: f_N(2 s c0 N^{2/3}) =
  //      a0 N - |s| a0 c0 N^{2/3} - (ell + l_N) d0 N^{1/3}   (|s| only for corner)
  {
    double smax = std::pow(static_cast<double>(N), hp.c2);
    double max_resid = 0;
    for (int g = -400; g <= 400; g++) {
      double s = smax * g / 400.0;
      if (s < hp.a_inf || s > hp.b_inf) continue;
      double y = 2.0 * s * sp.c0 * n23;
      double drift = corner ? std::fabs(s) : s;
      double implied = (sp.a0 * N - drift * sp.a0 * sp.c0 * n23 - f_n(y)) / (sp.d0 * n13);
      max_resid = std::max(max_resid, std::fabs(implied - ell(s)));
    }
    double bound = hp.m_n(N);
    rep.conditions.push_back({"central_residual", max_resid <= bound, bound - max_resid});
  }

  // (iii) growth condition outside the central window:
  //  f_N(yN)/N > max(a0 - a0|y|/2 - c1 d0 (y/(2c0))^2, a0(1-|y|) + c3|y|)
  {
    double s_edge = std::pow(static_cast<double>(N), hp.c2);
    double y_edge = 2.0 * s_edge * sp.c0 * n23 / static_cast<double>(N);
    double margin = std::numeric_limits<double>::infinity();
    for (int g = -600; g <= 600; g++) {
      double y = 2.0 * g / 600.0;  // y in [-2, 2]; clip below
      if (y > 1.0) continue;
      if (std::fabs(y) <= y_edge) continue;           // central window excluded
      if (!corner && y > 0 && y * N > N) continue;    // vertical variant: D_N cap
      double yy = corner ? std::fabs(y) : y;
      double para = sp.a0 - sp.a0 * yy / 2.0 -
                    hp.c1 * sp.d0 * (y / (2.0 * sp.c0)) * (y / (2.0 * sp.c0));
      double lln = sp.a0_of(1.0 - yy) + hp.c3 * std::fabs(y);
      double rhs = std::max(para, lln);
      margin = std::min(margin, f_n(y * N) / N - rhs);
    }
    rep.conditions.push_back({"outer_growth", margin > 0, margin});
  }

  rep.pass = true;
  for (const auto& c : rep.conditions) rep.pass = rep.pass && c.ok;
  return rep;
}

template <typename PerNFn>
ValidationReport validate_over_n(const std::vector<long long>& n_list, PerNFn&& fn) {
  ValidationReport out;
  out.pass = true;
  for (long long N : n_list) {
    out.per_n.push_back(fn(N));
    out.pass = out.pass && out.per_n.back().pass;
  }
  return out;
}

}  // namespace kpz
