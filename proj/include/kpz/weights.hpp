#pragma once

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kpz/rng.hpp"

// Deterministic geometric weight fields. weight_at(seed,q,i,j) is a pure
// function of its arguments; the field is safe for unrestricted concurrent
// reads. Site success parameters may be perturbed in finitely many columns
// or rows, or along both boundary axes with the origin pinned to zero.

namespace kpz {

enum class WeightVariant { ZeroBased, OneBased };

enum class PerturbKind { Columns, Rows, BothAxes, PinnedSite };

struct InhomogeneitySpec {
  PerturbKind kind = PerturbKind::PinnedSite;
  // Columns: columns first_index .. first_index+drifts.size()-1 get drifts w_1..w_k
  // Rows: same for rows
  long long first_index = 0;
  std::vector<double> drifts;
  // BothAxes: row j=0 for i>=1 gets w_plus, column i=0 for j>=1 gets w_minus,
  // and w(0,0) is pinned to 0
  double w_plus = 0.0;
  double w_minus = 0.0;
  // scale N entering the parameter formula 1 - sqrt(q) (1 - 2w/(d0 N^{1/3}))
  long long n_scale = 1;
};

namespace detail {
inline double d0_of(double q) { return std::cbrt(1.0 + std::sqrt(q)) / (2.0 * std::cbrt(q)); }

inline double drifted_alpha(double q, double w, long long n_scale) {
  double n13 = std::cbrt(static_cast<double>(n_scale));
  return 1.0 - std::sqrt(q) * (1.0 - 2.0 * w / (d0_of(q) * n13));
}
}  // namespace detail

// Per-site success parameter alpha_{i,j}; bulk value is 1-q.
inline double site_parameter(const std::optional<InhomogeneitySpec>& spec, double q,
                             long long i, long long j) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("site_parameter: q outside (0,1)");
  double alpha = 1.0 - q;
  if (spec) {
    const InhomogeneitySpec& s = *spec;
    switch (s.kind) {
      case PerturbKind::Columns:
        if (i >= s.first_index && i < s.first_index + static_cast<long long>(s.drifts.size()))
          alpha = detail::drifted_alpha(q, s.drifts[static_cast<size_t>(i - s.first_index)], s.n_scale);
        break;
      case PerturbKind::Rows:
        if (j >= s.first_index && j < s.first_index + static_cast<long long>(s.drifts.size()))
          alpha = detail::drifted_alpha(q, s.drifts[static_cast<size_t>(j - s.first_index)], s.n_scale);
        break;
      case PerturbKind::BothAxes:
        if (j == 0 && i >= 1) alpha = detail::drifted_alpha(q, s.w_plus, s.n_scale);
        else if (i == 0 && j >= 1) alpha = detail::drifted_alpha(q, s.w_minus, s.n_scale);
        break;
      case PerturbKind::PinnedSite:
        break;
    }
  }
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("site_parameter: alpha outside (0,1) at (i,j)=(" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
  return alpha;
}

struct WeightField {
  std::uint64_t seed = 0;
  double q = 0.25;
  WeightVariant variant = WeightVariant::ZeroBased;
  std::optional<InhomogeneitySpec> perturbation;

  bool origin_pinned() const {
    return perturbation && (perturbation->kind == PerturbKind::PinnedSite ||
                            perturbation->kind == PerturbKind::BothAxes);
  }

  double uniform_at(long long i, long long j) const {
    return to_unit(hash3(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)));
  }

  double alpha_at(long long i, long long j) const { return site_parameter(perturbation, q, i, j); }

  bool site_is_bulk(long long i, long long j) const {
    if (!perturbation) return true;
    const InhomogeneitySpec& s = *perturbation;
    switch (s.kind) {
      case PerturbKind::Columns:
        return i < s.first_index || i >= s.first_index + static_cast<long long>(s.drifts.size());
      case PerturbKind::Rows:
        return j < s.first_index || j >= s.first_index + static_cast<long long>(s.drifts.size());
      case PerturbKind::BothAxes: return i != 0 && j != 0;
      case PerturbKind::PinnedSite: return !(i == 0 && j == 0);
    }
    return true;
  }

  long long weight_at(long long i, long long j) const {
    long long base = variant == WeightVariant::OneBased ? 1 : 0;
    if (origin_pinned() && i == 0 && j == 0) return base;  // w(0,0) = 0 exactly
    double u = uniform_at(i, j);
    if (site_is_bulk(i, j))
      return geometric_from_table(geometric_thresholds(1.0 - q), u) + base;
    return geometric_inverse_sample(alpha_at(i, j), u) + base;
  }

  WeightField with_variant(WeightVariant v) const {
    WeightField f = *this;
    f.variant = v;
    return f;
  }
};

}  // namespace kpz
