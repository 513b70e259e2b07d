#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>

#include "kpz/lpp.hpp"
#include "kpz/rng.hpp"
#include "kpz/tasep.hpp"

using namespace kpz;

namespace {

// oracle: enumerate all up-right paths recursively (tiny grids only)
long long brute_lpp(const WeightField& f, LatticePoint from, LatticePoint to) {
  if (from.x == to.x && from.y == to.y) return f.weight_at(to.x, to.y);
  long long best = std::numeric_limits<long long>::min();
  if (from.x < to.x) best = std::max(best, brute_lpp(f, {from.x + 1, from.y}, to));
  if (from.y < to.y) best = std::max(best, brute_lpp(f, {from.x, from.y + 1}, to));
  return best + f.weight_at(from.x, from.y);
}

// oracle: memoized recursion (checks the wavefront sweep independently)
long long memo_lpp(const WeightField& f, LatticePoint from, LatticePoint to,
                   std::map<std::pair<long long, long long>, long long>& memo) {
  if (to.x < from.x || to.y < from.y) return std::numeric_limits<long long>::min() / 4;
  auto key = std::make_pair(to.x, to.y);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  long long best = 0;
  if (to.x > from.x || to.y > from.y)
    best = std::max<long long>(0, std::max(memo_lpp(f, from, {to.x - 1, to.y}, memo),
                                           memo_lpp(f, from, {to.x, to.y - 1}, memo)));
  long long v = f.weight_at(to.x, to.y) + best;
  memo[key] = v;
  return v;
}

}  // namespace

TEST_CASE("point-to-point basics") {
  WeightField f{5, 0.25, WeightVariant::ZeroBased, std::nullopt};
  CHECK(lpp_point(f, {0, 0}, {0, 0}).value() == f.weight_at(0, 0));
  // 2x2 grid against explicit two-path formula
  long long expect =
      f.weight_at(0, 0) + std::max(f.weight_at(1, 0), f.weight_at(0, 1)) + f.weight_at(1, 1);
  CHECK(lpp_point(f, {0, 0}, {1, 1}).value() == expect);
  // -infinity convention
  CHECK_FALSE(lpp_point(f, {3, 0}, {2, 5}).has_value());
  CHECK_FALSE(lpp_point(f, {0, 3}, {5, 2}).has_value());
}

TEST_CASE("wavefront equals memoized recursion and brute force on small grids") {
  for (std::uint64_t seed = 0; seed < 100; seed++) {
    WeightField f{seed, seed % 2 ? 0.25 : 0.6, WeightVariant::ZeroBased, std::nullopt};
    long long W = 1 + static_cast<long long>(seed % 6), H = 1 + static_cast<long long>((seed / 7) % 6);
    std::map<std::pair<long long, long long>, long long> memo;
    long long a = lpp_point(f, {0, 0}, {W, H}).value();
    long long b = memo_lpp(f, {0, 0}, {W, H}, memo);
    CHECK(a == b);
    if (W <= 4 && H <= 4) CHECK(a == brute_lpp(f, {0, 0}, {W, H}));
  }
}

TEST_CASE("interpolated source") {
  WeightField f{17, 0.25, WeightVariant::ZeroBased, std::nullopt};
  LatticePoint to{6, 6};
  // integer input equals lpp_point exactly
  CHECK(lpp_point_interp(f, 2.0, 3.0, to).value() ==
        static_cast<double>(lpp_point(f, {2, 3}, to).value()));
  // midpoint is the arithmetic mean of the neighbors
  double g0 = static_cast<double>(lpp_point(f, {2, 3}, to).value());
  double g1 = static_cast<double>(lpp_point(f, {2, 4}, to).value());
  CHECK(lpp_point_interp(f, 2.0, 3.5, to).value() == doctest::Approx(0.5 * (g0 + g1)));
  // three collinear query points
  double mid = lpp_point_interp(f, 2.0, 3.3, to).value();
  CHECK(mid == doctest::Approx(0.7 * g0 + 0.3 * g1));
  CHECK_THROWS(lpp_point_interp(f, 2.5, 3.5, to));
}

TEST_CASE("point-to-curve: single vertex, step degenerate, brute comparison") {
  WeightField f{23, 0.25, WeightVariant::ZeroBased, std::nullopt};
  DownRightPath single;
  single.vertices.push_back({0, 0});
  auto r = lpp_to_curve(f, {4, 4}, single);
  CHECK(r->value == lpp_point(f, {0, 0}, {4, 4}).value());
  CHECK(r->argmax_vertex == 0);

  // step initial data degenerates to the corner point
  HeightFunction step = make_initial(InitialCondition::Step, -10, 10, 0);
  HeightPath hp = path_from_height(step);
  REQUIRE(hp.path.vertices.size() == 1);
  CHECK(hp.path.vertices[0] == LatticePoint{0, 0});
  CHECK(hp.K1 == 0);
  CHECK(hp.K2 == 0);

  // 5-vertex path on a 6x6 grid: equals max of per-vertex point values
  DownRightPath p5;
  p5.vertices = {{0, 2}, {1, 2}, {1, 1}, {2, 1}, {2, 0}};
  auto rc = lpp_to_curve(f, {5, 5}, p5);
  long long best = std::numeric_limits<long long>::min();
  size_t barg = 0;
  for (size_t i = 0; i < p5.vertices.size(); i++) {
    long long v = lpp_point(f, p5.vertices[i], {5, 5}).value();
    if (v > best) {
      best = v;
      barg = i;
    }
  }
  CHECK(rc->value == best);
  CHECK(rc->argmax_vertex == barg);
}

TEST_CASE("point-to-curve on random paths equals per-vertex maximum") {
  Rng rng(99);
  for (int trial = 0; trial < 40; trial++) {
    WeightField f{rng.next_u64(), 0.3, WeightVariant::ZeroBased, std::nullopt};
    DownRightPath p;
    LatticePoint cur{-static_cast<long long>(rng.below(4)), static_cast<long long>(rng.below(4))};
    p.vertices.push_back(cur);
    for (int s = 0; s < 10; s++) {
      if (rng.bernoulli(0.5)) cur.x++;
      else cur.y--;
      p.vertices.push_back(cur);
    }
    LatticePoint to{7, 7};
    auto rc = lpp_to_curve(f, to, p);
    long long best = std::numeric_limits<long long>::min();
    bool any = false;
    for (auto& v : p.vertices)
      if (v.x <= to.x && v.y <= to.y) {
        any = true;
        best = std::max(best, lpp_point(f, v, to).value());
      }
    REQUIRE(any == rc.has_value());
    if (any) CHECK(rc->value == best);
  }
}

TEST_CASE("no dominated vertex gives -infinity") {
  WeightField f{1, 0.25, WeightVariant::ZeroBased, std::nullopt};
  DownRightPath p;
  p.vertices = {{5, 9}, {6, 9}};
  CHECK_FALSE(lpp_to_curve(f, {3, 3}, p).has_value());
}

TEST_CASE("starred LPP identity on coupled fields") {
  Rng rng(31);
  for (int trial = 0; trial < 20; trial++) {
    WeightField f{rng.next_u64(), 0.25, WeightVariant::ZeroBased, std::nullopt};
    WeightField g = f.with_variant(WeightVariant::OneBased);
    LatticePoint from{static_cast<long long>(rng.below(3)), static_cast<long long>(rng.below(3))};
    LatticePoint to{from.x + 1 + static_cast<long long>(rng.below(8)),
                    from.y + 1 + static_cast<long long>(rng.below(8))};
    long long gs = lpp_star(g, from, to).value();
    long long gz = lpp_point(f, from, to).value();
    CHECK(gs - gz == to.x + to.y - from.x - from.y + 1);
  }
  WeightField g{2, 0.25, WeightVariant::OneBased, std::nullopt};
  CHECK(lpp_star(g, {0, 0}, {0, 0}).value() == g.weight_at(0, 0));
  CHECK(lpp_star(g, {0, 0}, {3, 2}).value() >= 6);  // six sites, each weight >= 1
  WeightField z{2, 0.25, WeightVariant::ZeroBased, std::nullopt};
  CHECK_THROWS(lpp_star(z, {0, 0}, {1, 1}));
}

TEST_CASE("path concatenation inequality on 4x4 grids") {
  // for x0>=x>=x', y0>=y>=y':
  //   G_{(x0,y0)}(x,y) + G_{(x,y)}(x',y') <= G_{(x0,y0)}(x',y') + w(x,y)
  for (std::uint64_t seed = 0; seed < 25; seed++) {
    WeightField f{seed * 13 + 1, 0.4, WeightVariant::ZeroBased, std::nullopt};
    for (long long x0 = 0; x0 <= 3; x0++)
      for (long long y0 = 0; y0 <= 3; y0++)
        for (long long x = 0; x <= x0; x++)
          for (long long y = 0; y <= y0; y++)
            for (long long xp = 0; xp <= x; xp++)
              for (long long yp = 0; yp <= y; yp++) {
                long long lhs = lpp_point(f, {x, y}, {x0, y0}).value() +
                                lpp_point(f, {xp, yp}, {x, y}).value();
                long long rhs = lpp_point(f, {xp, yp}, {x0, y0}).value() + f.weight_at(x, y);
                CHECK(lhs <= rhs);
              }
  }
}

TEST_CASE("monotonicity in weights via coupled drifted fields") {
  InhomogeneitySpec up, dn;
  up.kind = dn.kind = PerturbKind::Columns;
  up.first_index = dn.first_index = 2;
  up.n_scale = dn.n_scale = 200;
  up.drifts = {-0.8};  // smaller alpha -> larger weights
  dn.drifts = {+0.8};
  WeightField fhi{11, 0.25, WeightVariant::ZeroBased, up};
  WeightField flo{11, 0.25, WeightVariant::ZeroBased, dn};
  for (int trial = 0; trial < 30; trial++) {
    LatticePoint to{5 + trial % 4, 6 - trial % 3};
    CHECK(lpp_point(fhi, {0, 0}, to).value() >= lpp_point(flo, {0, 0}, to).value());
  }
}

TEST_CASE("antidiagonal profile agrees with individual point computations") {
  WeightField f{77, 0.25, WeightVariant::ZeroBased, std::nullopt};
  long long N = 30;
  AntidiagonalProfile p = antidiagonal_profile(f, N, -10, 10);
  for (long long k = -10; k <= 10; k++)
    CHECK(p.at(k) == lpp_point(f, {0, 0}, {N + k, N - k}).value());
  // max over a window dominates the center value
  long long mx = std::numeric_limits<long long>::min();
  for (long long k = -10; k <= 10; k++) mx = std::max(mx, p.at(k));
  CHECK(mx >= p.at(0));
  CHECK_THROWS(antidiagonal_profile(f, 5, -6, 6));
}

TEST_CASE("rescale_H at s=0 matches the definition") {
  WeightField f{123, 0.25, WeightVariant::ZeroBased, std::nullopt};
  long long N = 50;
  AntidiagonalProfile p = antidiagonal_profile(f, N, -5, 5);
  RescaledProcess H = rescale_H(p);
  double n13 = std::cbrt(static_cast<double>(N));
  double expect = (static_cast<double>(p.at(0)) - p.params.a0 * N) / (p.params.b0 * n13);
  CHECK(H.at_k(0) == doctest::Approx(expect));
  CHECK(H.eval(0.0) == doctest::Approx(expect));
  // linear interpolation between grid points
  double s_half = 0.5 * (H.s_at(0) + H.s_at(1));
  CHECK(H.eval(s_half) == doctest::Approx(0.5 * (H.at_k(0) + H.at_k(1))));
}

TEST_CASE("displaced profile: zero displacement reproduces rescale_H exactly") {
  WeightField f{321, 0.25, WeightVariant::ZeroBased, std::nullopt};
  long long N = 60;
  AntidiagonalProfile p = antidiagonal_profile(f, N, -8, 8);
  RescaledProcess H = rescale_H(p);
  RescaledProcess Ht = rescale_H_general(f, N, 1.0 / 3.0, [](double) { return 0.0; }, -8, 8);
  for (long long k = -8; k <= 8; k++) CHECK(H.at_k(k) == doctest::Approx(Ht.at_k(k)));
}

TEST_CASE("displaced profile: constant displacement lands on the shifted diagonal") {
  WeightField f{55, 0.25, WeightVariant::ZeroBased, std::nullopt};
  long long N = 40;
  double alpha = 1.0 / 3.0;
  RescaledProcess Ht = rescale_H_general(f, N, alpha, [](double) { return 1.0; }, -3, 3);
  long long m = llround(std::pow(static_cast<double>(N), alpha));
  ScalingParams sp = scaling_constants(0.25);
  for (long long k = -3; k <= 3; k++) {
    long long raw = lpp_point(f, {0, 0}, {N + m + k, N + m - k}).value();
    double expect = (static_cast<double>(raw) - sp.a0 * static_cast<double>(N + m)) /
                    (sp.b0 * std::cbrt(static_cast<double>(N)));
    CHECK(Ht.at_k(k) == doctest::Approx(expect));
  }
}

TEST_CASE("boundary-modified LPP") {
  WeightField f{88, 0.25, WeightVariant::ZeroBased, std::nullopt};
  LatticePoint target{8, 8};
  double inf = std::numeric_limits<double>::infinity();

  // f = 0 on {0} only: point-to-point
  auto r1 = lpp_with_boundary(f, target, BoundaryAxis::Vertical,
                              [&](long long y) { return y == 0 ? 0.0 : inf; }, -20, 8);
  CHECK(r1->value == doctest::Approx(static_cast<double>(lpp_point(f, {0, 0}, target).value())));
  CHECK(r1->argmax == LatticePoint{0, 0});

  // two finite sites: max of the two point values
  auto r2 = lpp_with_boundary(f, target, BoundaryAxis::Vertical,
                              [&](long long y) { return (y == 0 || y == 1) ? 0.0 : inf; }, -20, 8);
  double m2 = std::max(static_cast<double>(lpp_point(f, {0, 0}, target).value()),
                       static_cast<double>(lpp_point(f, {0, 1}, target).value()));
  CHECK(r2->value == doctest::Approx(m2));

  // corner variant with f = 0 everywhere reduces to the corner-to-point LPP
  auto r3 = lpp_with_boundary(f, target, BoundaryAxis::Corner, [](long long) { return 0.0; },
                              -8, 8);
  CHECK(r3->value == doctest::Approx(static_cast<double>(lpp_point(f, {0, 0}, target).value())));
}

TEST_CASE("spiked-column LPP law reproduced through the boundary-penalty route") {
  // route A: inhomogeneous field (one drifted column), plain corner-to-corner LPP
  // route B: homogeneous block plus the drifted column folded into a boundary
  //          penalty f(y) = -prefix(y), evaluated by lpp_with_boundary
  const long long N = 300;
  const double q = 0.25;
  const long long reps = 2000;
  InhomogeneitySpec spec;
  spec.kind = PerturbKind::Columns;
  spec.first_index = 0;
  spec.drifts = {0.0};  // w1 = 0: alpha = 1 - sqrt(q) on the spiked column
  spec.n_scale = N;

  std::vector<double> route_a, route_b;
  for (long long r = 0; r < reps; r++) {
    WeightField fa{substream(606, static_cast<std::uint64_t>(r)), q, WeightVariant::ZeroBased, spec};
    route_a.push_back(static_cast<double>(lpp_point(fa, {0, 0}, {N, N}).value()));

    // independent replica: drifted column sampled from one field, homogeneous
    // block from another; the block from (1,y) to (N,N) is relabeled to a
    // (N-1) x N target so the boundary sits on the x = 0 axis
    WeightField fcol{substream(707, static_cast<std::uint64_t>(r)), q, WeightVariant::ZeroBased, spec};
    WeightField fblk{substream(808, static_cast<std::uint64_t>(r)), q, WeightVariant::ZeroBased,
                     std::nullopt};
    std::vector<double> neg_prefix(static_cast<size_t>(N) + 1);
    long long acc = 0;
    for (long long y = 0; y <= N; y++) {
      acc += fcol.weight_at(0, y);
      neg_prefix[static_cast<size_t>(y)] = -static_cast<double>(acc);
    }
    auto res = lpp_with_boundary(fblk, {N - 1, N}, BoundaryAxis::Vertical,
                                 [&](long long y) { return neg_prefix[static_cast<size_t>(y)]; },
                                 0, N);
    route_b.push_back(res->value);
  }
  std::sort(route_a.begin(), route_a.end());
  std::sort(route_b.begin(), route_b.end());
  double ks = 0;
  size_t i = 0, j = 0;
  while (i < route_a.size() || j < route_b.size()) {
    double x = (j >= route_b.size() || (i < route_a.size() && route_a[i] <= route_b[j]))
                   ? route_a[i]
                   : route_b[j];
    while (i < route_a.size() && route_a[i] <= x) i++;
    while (j < route_b.size() && route_b[j] <= x) j++;
    ks = std::max(ks, std::fabs(static_cast<double>(i) / reps - static_cast<double>(j) / reps));
  }
  CHECK(ks <= 0.05);
}

TEST_CASE("spiked-column decomposition is exact pathwise on a shared field") {
  // any up-right path to (N,N) crosses the column-0 / column-1 boundary once
  long long N = 40;
  InhomogeneitySpec spec;
  spec.kind = PerturbKind::Columns;
  spec.first_index = 0;
  spec.drifts = {0.7};
  spec.n_scale = N;
  WeightField f{2024, 0.25, WeightVariant::ZeroBased, spec};

  long long routeA = lpp_point(f, {0, 0}, {N, N}).value();
  long long best = std::numeric_limits<long long>::min();
  long long prefix = 0;
  for (long long y = 0; y <= N; y++) {
    prefix += f.weight_at(0, y);  // LPP within the single perturbed column
    long long rest = lpp_point(f, {1, y}, {N, N}).value();
    best = std::max(best, prefix + rest);
  }
  CHECK(routeA == best);
}
