#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kpz/parallel.hpp"
#include "kpz/rng.hpp"
#include "kpz/tasep.hpp"

using namespace kpz;

TEST_CASE("initial conditions realize the defining formulas") {
  HeightFunction step = make_initial(InitialCondition::Step, -6, 6, 0);
  for (long long s = -6; s <= 6; s++) CHECK(step.at(s) == std::llabs(s));

  HeightFunction flat = make_initial(InitialCondition::Flat, -6, 6, 0);
  CHECK(flat.at(0) == 0);
  CHECK(flat.at(1) == -1);
  CHECK(flat.at(2) == 0);
  CHECK(flat.at(-1) == -1);

  HeightFunction wf = make_initial(InitialCondition::WedgeFlat, -6, 6, 0);
  for (long long s = -6; s < 0; s++) CHECK(wf.at(s) == -s);
  CHECK(wf.at(1) == -1);
  CHECK(wf.at(2) == 0);

  HeightFunction b = make_initial(InitialCondition::Bernoulli, -50, 50, 7);
  CHECK(b.at(0) == 0);
  CHECK(b.valid());
  HeightFunction wb = make_initial(InitialCondition::WedgeBernoulli, -50, 50, 7);
  for (long long s = -50; s < 0; s++) CHECK(wb.at(s) == -s);
  CHECK(wb.valid());
  HeightFunction fb = make_initial(InitialCondition::FlatBernoulli, -50, 50, 7);
  for (long long s = -50; s < 0; s++) CHECK(fb.at(s) == ((((s % 2) + 2) % 2 == 0) ? 0 : -1));
  CHECK(fb.valid());
}

TEST_CASE("Bernoulli initial data behaves like a fair walk") {
  // mean of h(s)/sqrt(s) over dyadic s within 3 sigma of 0
  const int reps = 400;
  double acc = 0;
  int cnt = 0;
  for (int r = 0; r < reps; r++) {
    HeightFunction b = make_initial(InitialCondition::Bernoulli, -2, 4000, 1000 + r);
    for (long long s : {1000ll, 2000ll, 4000ll}) {
      acc += static_cast<double>(b.at(s)) / std::sqrt(static_cast<double>(s));
      cnt++;
    }
  }
  double mean = acc / cnt;  // summands are ~N(0,1), correlated within a replica
  CHECK(std::fabs(mean) < 3.0 * std::sqrt(3.0) / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("single local minimum flips with probability 1-q") {
  const double q = 0.25;
  const long long trials = 100000;
  long long flips = 0;
  for (long long t = 0; t < trials; t++) {
    HeightFunction hf = make_initial(InitialCondition::Step, -5, 5, 0);
    Rng rng(substream(42, static_cast<std::uint64_t>(t)));
    step_dynamics(hf, q, rng);
    if (hf.at(0) == 2) flips++;
    CHECK(hf.valid());
  }
  double p = static_cast<double>(flips) / trials;
  CHECK(std::fabs(p - 0.75) < 0.005);
}

TEST_CASE("configuration with no local minimum is frozen") {
  // all particles packed to the left: h strictly decreasing then increasing? no:
  // monotone height (all +1 increments) has no local minimum
  HeightFunction hf;
  hf.k_lo = -4;
  hf.k_hi = 4;
  hf.h = {-4, -3, -2, -1, 0, 1, 2, 3, 4};
  hf.t = 0;
  Rng rng(3);
  HeightFunction before = hf;
  evolve(hf, 10, 0.25, rng);
  for (long long k = -4; k <= 4; k++) CHECK(hf.at(k) == before.at(k));
}

TEST_CASE("two adjacent minima update independently") {
  // flat initial data has minima at odd sites; compare the joint law of
  // (h(-1), h(1)) after one step with the 4-outcome product law
  const double q = 0.25;
  const long long trials = 100000;
  long long n00 = 0, n01 = 0, n10 = 0, n11 = 0;
  for (long long t = 0; t < trials; t++) {
    HeightFunction hf = make_initial(InitialCondition::Flat, -5, 5, 0);
    Rng rng(substream(91, static_cast<std::uint64_t>(t)));
    step_dynamics(hf, q, rng);
    bool a = hf.at(-1) == 1, b = hf.at(1) == 1;
    if (a && b) n11++;
    else if (a) n10++;
    else if (b) n01++;
    else n00++;
  }
  auto frac = [&](long long n) { return static_cast<double>(n) / trials; };
  CHECK(std::fabs(frac(n11) - 0.75 * 0.75) < 0.006);
  CHECK(std::fabs(frac(n10) - 0.75 * 0.25) < 0.006);
  CHECK(std::fabs(frac(n01) - 0.25 * 0.75) < 0.006);
  CHECK(std::fabs(frac(n00) - 0.25 * 0.25) < 0.006);
}

TEST_CASE("height is nondecreasing with increments in {0,2}; parity preserved") {
  HeightFunction hf = make_initial(InitialCondition::Bernoulli, -40, 40, 5);
  Rng rng(6);
  for (int t = 0; t < 30; t++) {
    HeightFunction prev = hf;
    step_dynamics(hf, 0.25, rng);
    CHECK(hf.valid());
    for (long long k = -40; k <= 40; k++) {
      long long d = hf.at(k) - prev.at(k);
      CHECK((d == 0 || d == 2));
    }
  }
}

TEST_CASE("particle number over the frozen-edge window is conserved exactly") {
  // with both edge heights frozen, sum of occupancies over [k_lo, k_hi) equals
  // (h(k_lo) - h(k_hi) + (k_hi - k_lo)) / 2 and cannot change
  HeightFunction hf = make_initial(InitialCondition::Bernoulli, -30, 30, 12);
  Rng rng(8);
  auto count = [&](const HeightFunction& h) {
    long long c = 0;
    for (long long k = h.k_lo; k < h.k_hi; k++)
      if (h.occupied(k)) c++;
    return c;
  };
  long long before = count(hf);
  long long edge_lo = hf.at(-30), edge_hi = hf.at(30);
  evolve(hf, 50, 0.25, rng);
  CHECK(count(hf) == before);
  CHECK(hf.at(-30) == edge_lo);  // frozen edges never move
  CHECK(hf.at(30) == edge_hi);
}

TEST_CASE("hydrodynamic speed at q = 1/4: h(0;t)/t near 1/2") {
  // step initial data: h(0; a0* N) ~ 2N with a0* = 4
  const long long t = 2000;
  const int reps = 8;
  auto vals = parallel_replicas(reps, [&](long long r) {
    HeightFunction hf = make_initial(InitialCondition::Step, -t - 4, t + 4, 0);
    Rng rng(substream(1234, static_cast<std::uint64_t>(r)));
    evolve(hf, t, 0.25, rng);
    return static_cast<double>(hf.at(0)) / static_cast<double>(t);
  });
  double mean = 0;
  for (double v : vals) mean += v;
  mean /= reps;
  CHECK(std::fabs(mean - 0.5) < 0.03);
}

TEST_CASE("waiting-time mode reproduces the plain-mode flip law") {
  // single minimum: flip time of the step corner is w*(0,0) ~ Geom_{>=1}(1-q)
  const long long trials = 40000;
  long long flip_at_1 = 0, flip_at_2 = 0;
  for (long long r = 0; r < trials; r++) {
    WeightField star{substream(777, static_cast<std::uint64_t>(r)), 0.25, WeightVariant::OneBased,
                     std::nullopt};
    WaitingTimeTasep wt(make_initial(InitialCondition::Step, -8, 8, 0), star);
    wt.evolve(2);
    if (wt.hf.at(0) >= 2) flip_at_2++;
    WaitingTimeTasep wt1(make_initial(InitialCondition::Step, -8, 8, 0), star);
    wt1.evolve(1);
    if (wt1.hf.at(0) == 2) flip_at_1++;
  }
  CHECK(std::fabs(static_cast<double>(flip_at_1) / trials - 0.75) < 0.01);
  CHECK(std::fabs(static_cast<double>(flip_at_2) / trials - (1.0 - 0.25 * 0.25)) < 0.01);
}

TEST_CASE("monotone coupling in initial data under the shared waiting-time field") {
  Rng rng(17);
  for (int trial = 0; trial < 15; trial++) {
    WeightField star{rng.next_u64(), 0.25, WeightVariant::OneBased, std::nullopt};
    // h1 >= h2 pointwise: flat sits above...? build h2 = flat, h1 = flat + 2 at a plateau
    HeightFunction h2 = make_initial(InitialCondition::Bernoulli, -20, 20, rng.next_u64());
    HeightFunction h1 = h2;
    // raise a random local minimum by 2 to get strictly-higher initial data
    for (long long k = -19; k < 20; k++)
      if (h1.at(k - 1) == h1.at(k) + 1 && h1.at(k + 1) == h1.at(k) + 1) {
        h1.at(k) += 2;
        break;
      }
    WaitingTimeTasep w1(h1, star), w2(h2, star);
    for (int t = 0; t < 12; t++) {
      w1.step();
      w2.step();
      for (long long k = -20; k <= 20; k++) CHECK(w1.hf.at(k) >= w2.hf.at(k));
    }
  }
}

TEST_CASE("coupling check: exact hand values at t <= 1") {
  // step, j=0, k=0, t=1: both routes give 1-q exactly in expectation
  auto r = coupling_check(InitialCondition::Step, 0, 0, 1, 40000, 0.25, 3001);
  CHECK(std::fabs(r.p_tasep - 0.75) < 0.01);
  CHECK(std::fabs(r.p_lpp - 0.75) < 0.01);
  CHECK(std::fabs(r.z) < 4.0);

  // t=0, k >= h(j;0): probability 0 on both sides
  auto r0 = coupling_check(InitialCondition::Step, 0, 2, 0, 2000, 0.25, 3002);
  CHECK(r0.p_tasep == 0.0);
  CHECK(r0.p_lpp == 0.0);
}

TEST_CASE("coupling check: flat initial data, t=3") {
  auto r = coupling_check(InitialCondition::Flat, 0, 0, 3, 100000, 0.25, 3003);
  double pool = 0.5 * (r.p_tasep + r.p_lpp);
  double se = std::sqrt(pool * (1.0 - pool) * 2.0 / 100000.0);
  CHECK(std::fabs(r.p_tasep - r.p_lpp) <= 3.0 * se);
}

TEST_CASE("parity mismatch is rejected") {
  CHECK_THROWS(coupling_check(InitialCondition::Step, 0, 1, 2, 10, 0.25, 1));
}

TEST_CASE("path from height: all-empty window maps to a horizontal segment") {
  HeightFunction hf;
  hf.k_lo = 0;
  hf.k_hi = 4;
  hf.h = {0, 1, 2, 3, 4};
  hf.t = 0;
  HeightPath hp = path_from_height(hf);
  CHECK(hp.K2_truncated);  // no occupied site in-window
  for (auto& v : hp.path.vertices) CHECK(v.y == 0);
  for (size_t i = 1; i < hp.path.vertices.size(); i++)
    CHECK(hp.path.vertices[i].x == hp.path.vertices[i - 1].x + 1);
}

TEST_CASE("flat initial data maps to the saw-tooth staircase") {
  HeightFunction flat = make_initial(InitialCondition::Flat, -8, 8, 0);
  HeightPath hp = path_from_height(flat);
  // vertices ((s+h)/2, (h-s)/2) with h in {0,-1}: staircase through the origin
  for (auto& v : hp.path.vertices) {
    long long anti = v.x - v.y;  // = s
    long long diag = v.x + v.y;  // = h
    CHECK((diag == 0 || diag == -1));
    (void)anti;
  }
  CHECK(hp.path.valid());
}
