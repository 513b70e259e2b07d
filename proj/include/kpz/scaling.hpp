#pragma once

#include <cmath>
#include <stdexcept>

// Scaling constants of the geometric-weight LPP / discrete TASEP family.
// All closed forms are functions of q in (0,1); the starred constants belong
// to the one-based weight model (w* = w + 1).

namespace kpz {

struct ScalingParams {
  double q = 0;
  double sqrt_q = 0;
  double a0 = 0;       // LLN constant at gamma = 1: 2 sqrt(q) / (1 - sqrt(q))
  double b0 = 0;       // N^{1/3} fluctuation scale at gamma = 1
  double c0 = 0;       // N^{2/3} transversal scale
  double d0 = 0;       // N^{1/3} diagonal-displacement scale
  double a0_star = 0;  // = a0 + 2
  double d0_star = 0;

  // gamma-dependent versions
  double a0_of(double gamma) const {
    return ((gamma + 1.0) * q + 2.0 * std::sqrt(gamma * q)) / (1.0 - q);
  }
  double b0_of(double gamma) const {
    return std::pow(q, 1.0 / 6.0) * std::pow(gamma, -1.0 / 6.0) / (1.0 - q) *
           std::pow(sqrt_q + std::sqrt(gamma), 2.0 / 3.0) *
           std::pow(1.0 + std::sqrt(gamma * q), 2.0 / 3.0);
  }
  double a0_star_of(double gamma) const { return a0_of(gamma) + gamma + 1.0; }
};

inline ScalingParams scaling_constants(double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("scaling_constants: q outside (0,1)");
  ScalingParams p;
  p.q = q;
  p.sqrt_q = std::sqrt(q);
  p.a0 = 2.0 * p.sqrt_q / (1.0 - p.sqrt_q);
  p.b0 = std::pow(q, 1.0 / 6.0) * std::cbrt(1.0 + p.sqrt_q) / (1.0 - p.sqrt_q);
  p.c0 = std::pow(1.0 + p.sqrt_q, 2.0 / 3.0) / std::pow(q, 1.0 / 6.0);
  p.d0 = std::cbrt(1.0 + p.sqrt_q) / (2.0 * std::cbrt(q));
  p.a0_star = 2.0 / (1.0 - p.sqrt_q);
  p.d0_star = std::pow(q, 1.0 / 6.0) * std::cbrt(1.0 + p.sqrt_q) / 2.0;
  return p;
}

}  // namespace kpz
