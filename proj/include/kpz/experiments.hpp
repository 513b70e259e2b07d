#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kpz/estimators.hpp"
#include "kpz/hypotheses.hpp"
#include "kpz/io.hpp"
#include "kpz/lpp.hpp"
#include "kpz/parallel.hpp"
#include "kpz/png.hpp"
#include "kpz/stats.hpp"
#include "kpz/tasep.hpp"
#include "kpz/toeplitz.hpp"
#include "kpz/tracy_widom.hpp"

// Named experiments binding the modules together. Each returns an
// ExperimentResult with per-check verdicts; the CLI and the acceptance suite
// both run these functions, so a passing acceptance line and a passing CLI
// run are the same computation.

namespace kpz {

struct RunConfig {
  double q = 0.25;
  long long N = 1000;
  long long samples = 1000;
  std::uint64_t seed = 1;
  double sigma = 0.0;
  std::string init = "flat";
  double window = 1.0;
  double delta = 0.3;
  std::string ell = "neg-abs";  // zero | neg-abs
  double w1 = 1.0;
  double tolerance = 0.0;  // 0 = experiment default
};

namespace detail_exp {
inline void add_param(ExperimentResult& r, const std::string& k, const std::string& v) {
  r.params.push_back({k, v});
}
inline void add_param(ExperimentResult& r, const std::string& k, double v) {
  r.params.push_back({k, format_double(v)});
}
inline void add_param(ExperimentResult& r, const std::string& k, long long v) {
  r.params.push_back({k, std::to_string(v)});
}
inline std::function<double(double)> ell_by_name(const std::string& name) {
  if (name == "zero") return [](double) { return 0.0; };
  if (name == "neg-abs") return [](double s) { return -std::fabs(s); };
  if (name == "neg-square") return [](double s) { return -s * s; };
  throw std::invalid_argument("unknown ell profile: " + name);
}
}  // namespace detail_exp

// ---------------------------------------------------------------- lln

inline ExperimentResult exp_lln(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "lln";
  r.claim = "mean of G_check(N,N)/N approaches 2 sqrt(q)/(1-sqrt(q)) = 2 at q=1/4";
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "N", cfg.N);
  detail_exp::add_param(r, "samples", cfg.samples);
  detail_exp::add_param(r, "seed", static_cast<long long>(cfg.seed));
  ScalingParams sp = scaling_constants(cfg.q);
  auto vals = parallel_replicas(cfg.samples, [&](long long i) {
    WeightField f{substream(cfg.seed, static_cast<std::uint64_t>(i)), cfg.q,
                  WeightVariant::ZeroBased, std::nullopt};
    return static_cast<double>(lpp_point(f, {0, 0}, {cfg.N, cfg.N}).value()) /
           static_cast<double>(cfg.N);
  });
  double mean = 0;
  for (double v : vals) mean += v;
  mean /= static_cast<double>(cfg.samples);
  double tol = cfg.tolerance > 0 ? cfg.tolerance : 0.02;
  r.scalars.push_back({"mean_over_N", mean});
  r.scalars.push_back({"a0", sp.a0});
  r.checks.push_back({"abs_mean_minus_a0", std::fabs(mean - sp.a0), "<=", tol,
                      std::fabs(mean - sp.a0) <= tol});
  r.sample_sets["g_over_n"] = vals;
  return r;
}

// ---------------------------------------------------------------- gue-onepoint

inline ExperimentResult exp_gue_onepoint(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "gue-onepoint";
  r.claim =
      "standardized G_check(N,N) follows the GUE Tracy-Widom law; the rescaled "
      "profile is stationary after adding s^2";
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "N", cfg.N);
  detail_exp::add_param(r, "samples", cfg.samples);
  detail_exp::add_param(r, "seed", static_cast<long long>(cfg.seed));
  ScalingParams sp = scaling_constants(cfg.q);
  double n13 = std::cbrt(static_cast<double>(cfg.N));
  double c0n23 = sp.c0 * n13 * n13;
  long long k_half = static_cast<long long>(std::ceil(0.5 * c0n23)) + 1;

  struct Row {
    double h0, h_half;
  };
  auto rows = parallel_replicas(cfg.samples, [&](long long i) {
    WeightField f{substream(cfg.seed, static_cast<std::uint64_t>(i)), cfg.q,
                  WeightVariant::ZeroBased, std::nullopt};
    AntidiagonalProfile p = antidiagonal_profile(f, cfg.N, -k_half, k_half);
    RescaledProcess H = rescale_H(p);
    return Row{H.eval(0.0), H.eval(0.5)};
  });
  std::vector<double> h0, h_half_shifted;
  for (const auto& row : rows) {
    h0.push_back(row.h0);
    h_half_shifted.push_back(row.h_half + 0.25);
  }
  auto d0 = EmpiricalDistribution::from_samples(h0);
  double ks = ks_distance(d0, [](double x) { return f2_table()(x); });
  double tol = cfg.tolerance > 0 ? cfg.tolerance : 0.10;
  r.checks.push_back({"ks_vs_f2", ks, "<=", tol, ks <= tol});
  double var = d0.variance();
  r.checks.push_back({"var_h0_low", var, ">=", 0.5, var >= 0.5});
  r.checks.push_back({"var_h0_high", var, "<=", 1.1, var <= 1.1});
  auto dh = EmpiricalDistribution::from_samples(h_half_shifted);
  double ks_stat = ks_distance(d0, dh);
  r.checks.push_back({"stationarity_ks", ks_stat, "<=", 0.05, ks_stat <= 0.05});
  r.scalars.push_back({"mean_h0", d0.mean()});
  r.scalars.push_back({"var_h0", var});
  r.sample_sets["h0"] = h0;
  return r;
}

// ---------------------------------------------------------------- flat-goe

inline ExperimentResult exp_flat_goe(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "flat-goe";
  r.claim =
      "standardized point-to-curve passage time from the saw-tooth follows "
      "F_GOE(2^{2/3} x)";
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "N", cfg.N);
  detail_exp::add_param(r, "samples", cfg.samples);
  detail_exp::add_param(r, "seed", static_cast<long long>(cfg.seed));
  ScalingParams sp = scaling_constants(cfg.q);
  double b0n13 = sp.b0 * std::cbrt(static_cast<double>(cfg.N));
  auto vals = parallel_replicas(cfg.samples, [&](long long i) {
    WeightField f{substream(cfg.seed, static_cast<std::uint64_t>(i)), cfg.q,
                  WeightVariant::ZeroBased, std::nullopt};
    std::vector<long long> prof = sawtooth_point_profile(f, {cfg.N, cfg.N}, -cfg.N, cfg.N);
    long long best = prof[0];
    for (long long v : prof) best = std::max(best, v);
    return (static_cast<double>(best) - sp.a0 * static_cast<double>(cfg.N)) / b0n13;
  });
  auto d = EmpiricalDistribution::from_samples(vals);
  double s23 = std::pow(2.0, 2.0 / 3.0);
  double ks = ks_distance(d, [&](double x) { return f1_table()(s23 * x); });
  double tol = cfg.tolerance > 0 ? cfg.tolerance : 0.10;
  r.checks.push_back({"ks_vs_goe", ks, "<=", tol, ks <= tol});
  r.scalars.push_back({"mean", d.mean()});
  r.sample_sets["standardized_max"] = vals;
  return r;
}

// ---------------------------------------------------------------- exact-vs-mc

inline ExperimentResult exp_exact_vs_mc(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "exact-vs-mc";
  r.claim = "Monte Carlo LPP samples match the exact Toeplitz-determinant CDF";
  long long M = cfg.N == 1000 ? 20 : cfg.N;  // experiment default: 20x20 sites
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "grid_sites", M);
  detail_exp::add_param(r, "samples", cfg.samples);
  detail_exp::add_param(r, "seed", static_cast<long long>(cfg.seed));
  auto vals = parallel_replicas(cfg.samples, [&](long long i) {
    WeightField f{substream(cfg.seed, static_cast<std::uint64_t>(i)), cfg.q,
                  WeightVariant::ZeroBased, std::nullopt};
    return static_cast<double>(lpp_point(f, {0, 0}, {M - 1, M - 1}).value());
  });
  auto d = EmpiricalDistribution::from_samples(vals);
  // cache the exact CDF on the sampled integer support; the reference is
  // discrete, so the KS sup runs over integers
  long long n_min = static_cast<long long>(d.sorted.front()) - 1;
  long long n_max = static_cast<long long>(d.sorted.back()) + 1;
  std::vector<double> cdf(static_cast<size_t>(n_max - n_min) + 1);
  for (long long n = n_min; n <= n_max; n++)
    cdf[static_cast<size_t>(n - n_min)] = n < 0 ? 0.0 : toeplitz_cdf(M, M, cfg.q, n);
  double ks = ks_distance_integer(d, [&](long long n) {
    if (n < n_min) return 0.0;
    return n > n_max ? 1.0 : cdf[static_cast<size_t>(n - n_min)];
  });
  double eps = dkw_bound(static_cast<size_t>(cfg.samples), 0.01);
  r.checks.push_back({"ks_vs_exact", ks, "<=", eps, ks <= eps});
  r.scalars.push_back({"dkw_99", eps});
  r.sample_sets["lpp"] = vals;
  return r;
}

// ---------------------------------------------------------------- tail-exponents

inline ExperimentResult exp_tail_exponents(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "tail-exponents";
  r.claim =
      "exact finite-N tails: lower tail decays at least cubically, upper tail "
      "at least linearly, in the fluctuation variable";
  long long N = cfg.N == 1000 ? 100 : cfg.N;
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "N", N);
  std::vector<double> xs;
  for (double x = 2.0; x <= 6.0 + 1e-9; x += 0.5) xs.push_back(x);
  TailReport rep = tail_checks(cfg.q, 1.0, N, xs);
  r.checks.push_back(
      {"lower_exponent", rep.lower_exponent, ">=", 2.5, rep.lower_exponent >= 2.5});
  r.checks.push_back(
      {"upper_exponent", rep.upper_exponent, ">=", 1.0, rep.upper_exponent >= 1.0});
  r.checks.push_back({"tails_monotone", rep.monotone ? 1.0 : 0.0, "==", 1.0, rep.monotone});
  std::vector<std::pair<double, double>> lo_tab, up_tab;
  for (size_t i = 0; i < xs.size(); i++) {
    lo_tab.push_back({xs[i], rep.lower_log[i]});
    up_tab.push_back({xs[i], rep.upper_log[i]});
  }
  r.tables.push_back({"lower_log_tail", lo_tab});
  r.tables.push_back({"upper_log_tail", up_tab});
  return r;
}

// ---------------------------------------------------------------- variational-check

inline ExperimentResult exp_variational(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "variational-check";
  r.claim =
      "point-to-curve LPP on the ell-shaped initial data matches the profile "
      "maximum of H_N(s) + ell(s): two finite-N routes to one variational law";
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "N", cfg.N);
  detail_exp::add_param(r, "samples", cfg.samples);
  detail_exp::add_param(r, "sigma", cfg.sigma);
  detail_exp::add_param(r, "ell", cfg.ell);
  detail_exp::add_param(r, "seed", static_cast<long long>(cfg.seed));
  ScalingParams sp = scaling_constants(cfg.q);
  double n13 = std::cbrt(static_cast<double>(cfg.N));
  double c0n23 = sp.c0 * n13 * n13;
  double b0n13 = sp.b0 * n13;
  auto ell = detail_exp::ell_by_name(cfg.ell);
  long long shift = llround(cfg.sigma * c0n23);
  LatticePoint target{cfg.N + shift, cfg.N - shift};
  double window = cfg.window > 0 ? std::max(cfg.window, 2.5) : 2.5;

  // route 1: the initial data is the lattice realization of ell
  auto route1 = parallel_replicas(cfg.samples, [&](long long i) {
    WeightField f{substream(cfg.seed ^ 0x11d3ab1cull, static_cast<std::uint64_t>(i)), cfg.q,
                  WeightVariant::ZeroBased, std::nullopt};
    ProfilePath pp = path_from_profile(ell, [](double) { return 0.0; }, cfg.N, sp,
                                       HypVariant::Hyp, -window, window);
    auto res = lpp_to_curve(f, target, pp.path);
    return (static_cast<double>(res->value) - sp.a0 * static_cast<double>(cfg.N)) / b0n13;
  });
  // route 2: flat profile plus post-hoc ell on the rescaled values
  VariationalResult route2 =
      variational_rhs_sampler(cfg.q, cfg.N, ell, cfg.sigma, window, cfg.samples,
                              cfg.seed ^ 0x5ca1ab1eull);

  auto d1 = EmpiricalDistribution::from_samples(route1);
  auto d2 = EmpiricalDistribution::from_samples(route2.samples);
  double ks = ks_distance(d1, d2);
  double tol = cfg.tolerance > 0 ? cfg.tolerance : 0.07;
  r.checks.push_back({"ks_two_routes", ks, "<=", tol, ks <= tol});
  r.checks.push_back(
      {"edge_fraction", route2.edge_fraction, "<=", 0.01, route2.edge_fraction <= 0.01});
  r.scalars.push_back({"mean_route1", d1.mean()});
  r.scalars.push_back({"mean_route2", d2.mean()});
  r.sample_sets["route1"] = route1;
  r.sample_sets["route2"] = route2.samples;
  return r;
}

// ---------------------------------------------------------------- tasep-coupling

inline ExperimentResult exp_tasep_coupling(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "tasep-coupling";
  r.claim =
      "P(h(j;t) > k) from parallel-update TASEP equals the one-based LPP "
      "passage-time bound on the initial chain";
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "samples", cfg.samples);
  detail_exp::add_param(r, "seed", static_cast<long long>(cfg.seed));
  struct Case {
    InitialCondition kind;
    const char* label;
    long long j, k, t;
  };
  std::vector<Case> cases = {
      {InitialCondition::Step, "step", 0, 0, 2},  {InitialCondition::Step, "step", 1, 1, 3},
      {InitialCondition::Step, "step", 2, 2, 6},  {InitialCondition::Flat, "flat", 0, 0, 2},
      {InitialCondition::Flat, "flat", 1, -1, 3}, {InitialCondition::Flat, "flat", 0, 2, 6},
  };
  int idx = 0;
  for (const auto& c : cases) {
    auto res = coupling_check(c.kind, c.j, c.k, c.t, cfg.samples, cfg.q,
                              substream(cfg.seed, static_cast<std::uint64_t>(idx)));
    std::string nm = std::string(c.label) + "_j" + std::to_string(c.j) + "_k" +
                     std::to_string(c.k) + "_t" + std::to_string(c.t);
    r.checks.push_back({nm + "_absz", std::fabs(res.z), "<=", 3.0, std::fabs(res.z) <= 3.0});
    r.scalars.push_back({nm + "_p_tasep", res.p_tasep});
    r.scalars.push_back({nm + "_p_lpp", res.p_lpp});
    idx++;
  }
  return r;
}

// ---------------------------------------------------------------- tasep-corollary

inline ExperimentResult exp_tasep_corollary(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "tasep-corollary";
  r.claim =
      "height fluctuations at time a0* N under the named initial conditions; "
      "the flat case is compared to F_GOE(2^{2/3} x) through the TASEP route";
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "N", cfg.N);
  detail_exp::add_param(r, "samples", cfg.samples);
  detail_exp::add_param(r, "init", cfg.init);
  detail_exp::add_param(r, "sigma", cfg.sigma);
  detail_exp::add_param(r, "seed", static_cast<long long>(cfg.seed));
  InitialCondition kind = initial_condition_from_name(cfg.init);
  ScalingParams sp = scaling_constants(cfg.q);
  double n13 = std::cbrt(static_cast<double>(cfg.N));
  long long t = llround(sp.a0_star * static_cast<double>(cfg.N));
  long long j = 2 * llround(cfg.sigma * sp.c0 * n13 * n13);
  long long radius = t + std::llabs(j) + 8;

  auto vals = parallel_replicas(cfg.samples, [&](long long i) {
    std::uint64_t s = substream(cfg.seed, static_cast<std::uint64_t>(i));
    HeightFunction hf = make_initial(kind, j - radius, j + radius, substream(s, 0));
    Rng rng(substream(s, 1));
    evolve(hf, t, cfg.q, rng);
    return -(static_cast<double>(hf.at(j)) - 2.0 * static_cast<double>(cfg.N)) /
           (2.0 * sp.d0_star * n13);
  });
  auto d = EmpiricalDistribution::from_samples(vals);
  r.scalars.push_back({"mean", d.mean()});
  r.scalars.push_back({"var", d.variance()});
  r.sample_sets["standardized"] = vals;
  if (kind == InitialCondition::Flat) {
    double s23 = std::pow(2.0, 2.0 / 3.0);
    double ks = ks_distance(d, [&](double x) { return f1_table()(s23 * x); });
    // the TASEP route carries an O(N^{-1/3}) distributional bias with a
    // constant near 1.4 (measured); the default tolerance tracks it
    double tol = cfg.tolerance > 0 ? cfg.tolerance
                                   : std::max(0.10, 1.4 / std::cbrt(static_cast<double>(cfg.N)));
    r.checks.push_back({"ks_vs_goe", ks, "<=", tol, ks <= tol});
  } else {
    r.checks.push_back({"simulated", 1.0, "==", 1.0, true});
  }
  return r;
}

// ---------------------------------------------------------------- inhomogeneous

inline ExperimentResult exp_inhomogeneous(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "inhomogeneous";
  r.claim =
      "a drifted first column lowers passage times monotonically: coupled "
      "fields with w1 = -w vs +w are ordered in every replica";
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "N", cfg.N);
  detail_exp::add_param(r, "samples", cfg.samples);
  detail_exp::add_param(r, "w1", cfg.w1);
  detail_exp::add_param(r, "seed", static_cast<long long>(cfg.seed));

  InhomogeneitySpec minus, plus;
  minus.kind = plus.kind = PerturbKind::Columns;
  minus.first_index = plus.first_index = 0;
  minus.n_scale = plus.n_scale = cfg.N;
  minus.drifts = {-cfg.w1};
  plus.drifts = {+cfg.w1};

  long long violations = 0;
  std::vector<double> gaps;
  auto rows = parallel_replicas(cfg.samples, [&](long long i) {
    std::uint64_t s = substream(cfg.seed, static_cast<std::uint64_t>(i));
    WeightField fm{s, cfg.q, WeightVariant::ZeroBased, minus};
    WeightField fp{s, cfg.q, WeightVariant::ZeroBased, plus};
    long long gm = lpp_point(fm, {0, 0}, {cfg.N, cfg.N}).value();
    long long gp = lpp_point(fp, {0, 0}, {cfg.N, cfg.N}).value();
    return std::make_pair(gm, gp);
  });
  for (const auto& [gm, gp] : rows) {
    if (gm < gp) violations++;
    gaps.push_back(static_cast<double>(gm - gp));
  }
  r.checks.push_back({"ordering_violations", static_cast<double>(violations), "==", 0.0,
                      violations == 0});
  double mg = 0;
  for (double g : gaps) mg += g;
  r.scalars.push_back({"mean_gap", mg / static_cast<double>(cfg.samples)});
  r.sample_sets["gap"] = gaps;
  return r;
}

// ---------------------------------------------------------------- png-gibbs

inline ExperimentResult exp_png_gibbs(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "png-gibbs";
  r.claim =
      "the N=1 ensemble is exactly normalized and one heat-bath sweep "
      "preserves the stationary law";
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "seed", static_cast<long long>(cfg.seed));
  const double q = cfg.q;
  const long long cap = 40;

  // enumeration: N=1 states are h0(-1) = 0 (forced), h0(0) = g >= 0
  double total = 0;
  for (long long g = 0; g <= cap; g++) {
    PNGConfig c = PNGConfig::ground_state(1, q);
    c.set(0, 0, g);
    total += std::exp(png_log_prob(c));
  }
  double tail = std::pow(q, static_cast<double>(cap) + 1.0);
  double norm_err = std::fabs(total - (1.0 - tail));
  r.checks.push_back({"normalization_err", norm_err, "<=", 1e-10, norm_err <= 1e-10});
  r.scalars.push_back({"truncation_tail", tail});

  // stationarity: start from an exact stationary draw, apply one sweep
  Rng rng(cfg.seed);
  std::vector<double> counts(static_cast<size_t>(cap) + 2, 0.0);
  const long long reps = 100000;
  for (long long i = 0; i < reps; i++) {
    PNGConfig c = PNGConfig::ground_state(1, q);
    c.set(0, 0, rng.geometric(1.0 - q));
    heat_bath_sweep(c, rng);
    long long v = std::min(c.at(0, 0), cap + 1);
    counts[static_cast<size_t>(v)] += 1.0 / static_cast<double>(reps);
  }
  double tv = 0;
  for (long long v = 0; v <= cap + 1; v++) {
    double exact = v <= cap ? (1.0 - q) * std::pow(q, static_cast<double>(v)) : tail;
    tv += std::fabs(counts[static_cast<size_t>(v)] - exact);
  }
  tv *= 0.5;
  r.checks.push_back({"one_sweep_tv", tv, "<=", 0.01, tv <= 0.01});
  return r;
}

// ---------------------------------------------------------------- png-vs-lpp

inline ExperimentResult exp_png_vs_lpp(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "png-vs-lpp";
  r.claim =
      "the Gibbs-sampled top line matches direct LPP in distribution: h0(0) "
      "vs the NxN-site passage time, and the windowed maxima likewise";
  int n = cfg.N == 1000 ? 30 : static_cast<int>(cfg.N);
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "N", static_cast<long long>(n));
  detail_exp::add_param(r, "samples", cfg.samples);
  detail_exp::add_param(r, "seed", static_cast<long long>(cfg.seed));

  // two chains in parallel, thinned near the measured autocorrelation time
  // of the top line's center value (~85 N sweeps)
  const long long burn = std::max(2000ll, 255ll * n);
  const long long thin = std::max(400ll, (85ll * n) / 2);
  long long per_chain = (cfg.samples + 1) / 2;
  auto chains = parallel_replicas(2, [&](long long c) {
    std::vector<std::pair<double, double>> out;
    sample_ensemble(n, cfg.q, per_chain, burn, thin,
                    substream(cfg.seed, static_cast<std::uint64_t>(c)),
                    [&](const PNGConfig& cf) {
                      double center = static_cast<double>(cf.at(0, 0));
                      long long mx = cf.at(0, 0);
                      for (long long k = -3; k <= 3; k++) mx = std::max(mx, cf.at(0, 2 * k));
                      out.push_back({center, static_cast<double>(mx)});
                    });
    return out;
  });
  std::vector<double> mc_center, mc_max;
  for (const auto& ch : chains)
    for (const auto& [c, m] : ch) {
      mc_center.push_back(c);
      mc_max.push_back(m);
    }

  // direct LPP: G over n x n sites = G_check(n-1, n-1), plus the window max
  auto direct = parallel_replicas(cfg.samples, [&](long long i) {
    WeightField f{substream(cfg.seed ^ 0xd1ec7ull, static_cast<std::uint64_t>(i)), cfg.q,
                  WeightVariant::ZeroBased, std::nullopt};
    std::vector<DisplacedCell> cells;
    for (long long k = -3; k <= 3; k++) cells.push_back({k, 0});
    std::vector<long long> prof = antidiagonal_sweep(f, n - 1, cells);
    long long mx = prof[0];
    for (long long v : prof) mx = std::max(mx, v);
    return std::make_pair(static_cast<double>(prof[3]), static_cast<double>(mx));
  });
  std::vector<double> lpp_center, lpp_max;
  for (const auto& [c, m] : direct) {
    lpp_center.push_back(c);
    lpp_max.push_back(m);
  }

  double tol = cfg.tolerance > 0 ? cfg.tolerance : 0.05;
  double ks_c = ks_distance(EmpiricalDistribution::from_samples(mc_center),
                            EmpiricalDistribution::from_samples(lpp_center));
  double ks_m = ks_distance(EmpiricalDistribution::from_samples(mc_max),
                            EmpiricalDistribution::from_samples(lpp_max));
  r.checks.push_back({"ks_center", ks_c, "<=", tol, ks_c <= tol});
  r.checks.push_back({"ks_window_max", ks_m, "<=", tol, ks_m <= tol});
  r.sample_sets["mcmc_center"] = mc_center;
  r.sample_sets["lpp_center"] = lpp_center;
  return r;
}

// ---------------------------------------------------------------- monotone-coupling

inline ExperimentResult exp_monotone_coupling(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "monotone-coupling";
  r.claim = "a floored bridge stochastically dominates the free bridge";
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "samples", cfg.samples);
  detail_exp::add_param(r, "seed", static_cast<long long>(cfg.seed));

  // floor one below the chord forces the event; floor two below lifts it
  auto tight = monotone_coupling_experiment(0, 20, 40, 0, 0, 0, [](long long) { return -1ll; },
                                            cfg.samples, cfg.q, substream(cfg.seed, 1));
  auto lifted = monotone_coupling_experiment(0, 20, 40, 0, 0, 0, [](long long) { return -2ll; },
                                             cfg.samples, cfg.q, substream(cfg.seed, 2));
  auto z = [](const CoupledBridgeEstimate& e) {
    return (e.p_floored - e.p_free) /
           std::sqrt(std::max(e.se_floored * e.se_floored + e.se_free * e.se_free, 1e-12));
  };
  r.checks.push_back({"tight_floor_z", z(tight), ">=", 3.0, z(tight) >= 3.0});
  r.checks.push_back({"lifted_floor_z", z(lifted), ">=", 3.0, z(lifted) >= 3.0});
  r.checks.push_back({"tight_forces_event", tight.p_floored, ">=", 0.999,
                      tight.p_floored >= 0.999});
  r.scalars.push_back({"tight_p_floored", tight.p_floored});
  r.scalars.push_back({"tight_p_free", tight.p_free});
  r.scalars.push_back({"lifted_p_floored", lifted.p_floored});
  r.scalars.push_back({"lifted_p_free", lifted.p_free});
  return r;
}

// ---------------------------------------------------------------- midpoint-lemma

inline ExperimentResult exp_midpoint(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "midpoint-lemma";
  r.claim =
      "a free bridge passes above the chord midpoint with probability near "
      "one half, uniformly in the slope";
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "samples", cfg.samples);
  detail_exp::add_param(r, "seed", static_cast<long long>(cfg.seed));
  auto sym = midpoint_probability(0, 100, 200, 0, 0, cfg.samples, cfg.q, substream(cfg.seed, 1));
  auto tilt = midpoint_probability(0, 100, 200, 0, 60, cfg.samples, cfg.q, substream(cfg.seed, 2));
  r.checks.push_back({"symmetric_probability", sym.probability, ">=", 0.5 - 3.0 * sym.se,
                      sym.probability >= 0.5 - 3.0 * sym.se});
  r.checks.push_back({"tilted_probability", tilt.probability, ">=", 0.40,
                      tilt.probability >= 0.40});
  r.scalars.push_back({"symmetric_p", sym.probability});
  r.scalars.push_back({"tilted_p", tilt.probability});
  r.scalars.push_back({"tilt_parameter", tilt.tilt_p});
  return r;
}

// ---------------------------------------------------------------- slow-decorr

inline ExperimentResult exp_slow_decorr(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "slow-decorr";
  r.claim =
      "fluctuations along the characteristic displacement decorrelate: the "
      "max-gap exceedance shrinks with N";
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "samples", cfg.samples);
  detail_exp::add_param(r, "delta", cfg.delta);
  detail_exp::add_param(r, "window", cfg.window);
  detail_exp::add_param(r, "seed", static_cast<long long>(cfg.seed));
  auto ell1 = [](double) { return 1.0; };
  auto lo = slow_decorr_statistic(cfg.q, 200, 1.0 / 3.0, ell1, cfg.window, cfg.delta, cfg.samples,
                                  substream(cfg.seed, 1));
  auto hi = slow_decorr_statistic(cfg.q, 800, 1.0 / 3.0, ell1, cfg.window, cfg.delta, cfg.samples,
                                  substream(cfg.seed, 2));
  double ci = lo.ci_half + hi.ci_half;
  r.checks.push_back({"exceedance_decreases", hi.exceedance - lo.exceedance, "<=", ci,
                      hi.exceedance <= lo.exceedance + ci});
  r.checks.push_back({"exceedance_at_800", hi.exceedance, "<=", 0.2, hi.exceedance <= 0.2});
  r.scalars.push_back({"exceedance_200", lo.exceedance});
  r.scalars.push_back({"exceedance_800", hi.exceedance});
  r.scalars.push_back({"mean_gap_200", lo.mean_max_gap});
  r.scalars.push_back({"mean_gap_800", hi.mean_max_gap});
  return r;
}

// ---------------------------------------------------------------- hyp-validate

inline ExperimentResult exp_hyp_validate(const RunConfig& cfg) {
  ExperimentResult r;
  r.name = "hyp-validate";
  r.claim =
      "the saw-tooth satisfies the growth-and-shape hypothesis at each N; "
      "Bernoulli initial data stays under the quadratic envelope with high "
      "probability";
  detail_exp::add_param(r, "q", cfg.q);
  detail_exp::add_param(r, "seed", static_cast<long long>(cfg.seed));
  ScalingParams sp = scaling_constants(cfg.q);
  HypothesisParams hp;
  hp.C = 1.0;
  hp.c1 = 0.5;
  hp.c2 = 0.2;
  hp.c3 = -2.0;
  auto zero = [](double) { return 0.0; };
  ValidationReport rep = validate_over_n({1000, 10000}, [&](long long N) {
    return validate_hyp_path(sawtooth_path(-N, N), zero, hp, sp, N);
  });
  r.checks.push_back({"sawtooth_passes", rep.pass ? 1.0 : 0.0, "==", 1.0, rep.pass});

  // Bernoulli envelope: fraction of seeds whose scaled initial chain stays
  // inside |ell| < C + c1 s^2 over |s| <= 1 (one-based scaling constants).
  // The chain's Brownian coefficient is sqrt(2) q^{-1/4} = 2 at q = 1/4, so
  // C = 6 sits near 3 sigma at the window edge.
  long long N = 4000;
  double n13 = std::cbrt(static_cast<double>(N)), n23 = n13 * n13;
  long long w = static_cast<long long>(std::ceil(2.0 * sp.c0 * n23)) + 2;
  const double C_env = 6.0, c1_env = 0.5;
  int pass_cnt = 0;
  const int seeds = 200;
  for (int sd = 0; sd < seeds; sd++) {
    HeightFunction hf = make_initial(InitialCondition::Bernoulli, -w, w,
                                     substream(cfg.seed, static_cast<std::uint64_t>(sd)));
    bool ok = true;
    for (long long s = -w; s <= w; s++) {
      double ss = static_cast<double>(s) / (2.0 * sp.c0 * n23);
      if (std::fabs(ss) > 1.0) continue;
      double ellhat = -static_cast<double>(hf.at(s)) / (2.0 * sp.d0_star * n13);
      if (std::fabs(ellhat) >= C_env + c1_env * ss * ss) {
        ok = false;
        break;
      }
    }
    if (ok) pass_cnt++;
  }
  double frac = static_cast<double>(pass_cnt) / seeds;
  r.checks.push_back({"bernoulli_envelope_fraction", frac, ">=", 0.9, frac >= 0.9});
  r.scalars.push_back({"envelope_fraction", frac});
  return r;
}

// ---------------------------------------------------------------- catalog

inline std::vector<std::string> experiment_catalog() {
  return {"lln",           "gue-onepoint",   "flat-goe",          "exact-vs-mc",
          "tail-exponents", "variational-check", "tasep-coupling", "tasep-corollary",
          "inhomogeneous",  "png-gibbs",      "png-vs-lpp",        "monotone-coupling",
          "midpoint-lemma", "slow-decorr",    "hyp-validate"};
}

inline ExperimentResult run_experiment(const std::string& name, const RunConfig& cfg) {
  if (name == "lln") return exp_lln(cfg);
  if (name == "gue-onepoint") return exp_gue_onepoint(cfg);
  if (name == "flat-goe") return exp_flat_goe(cfg);
  if (name == "exact-vs-mc") return exp_exact_vs_mc(cfg);
  if (name == "tail-exponents") return exp_tail_exponents(cfg);
  if (name == "variational-check") return exp_variational(cfg);
  if (name == "tasep-coupling") return exp_tasep_coupling(cfg);
  if (name == "tasep-corollary") return exp_tasep_corollary(cfg);
  if (name == "inhomogeneous") return exp_inhomogeneous(cfg);
  if (name == "png-gibbs") return exp_png_gibbs(cfg);
  if (name == "png-vs-lpp") return exp_png_vs_lpp(cfg);
  if (name == "monotone-coupling") return exp_monotone_coupling(cfg);
  if (name == "midpoint-lemma") return exp_midpoint(cfg);
  if (name == "slow-decorr") return exp_slow_decorr(cfg);
  if (name == "hyp-validate") return exp_hyp_validate(cfg);
  throw std::invalid_argument("unknown experiment: " + name);
}

}  // namespace kpz
