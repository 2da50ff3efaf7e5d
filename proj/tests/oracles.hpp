#pragma once

// Closed-form reference values used as independent oracles: the free
// equation and pure delta potentials admit explicit fundamental solutions,
// against which the ODE path is checked.

#include <cmath>
#include <complex>

#include "armchair/hill.hpp"

namespace oracles {

using armchair::cdouble;

// sin(z)/z, stable near z=0.
inline cdouble sinc(cdouble z) {
  if (std::abs(z) < 1e-4) {
    cdouble z2 = z * z;
    return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0);
  }
  return std::sin(z) / z;
}

inline armchair::HillData hill_free(cdouble lambda) {
  cdouble z = std::sqrt(lambda);
  armchair::HillData h;
  h.lambda = lambda;
  h.theta1 = std::cos(z);
  h.theta1p = -lambda * sinc(z);  // -z sin z
  h.phi1 = sinc(z);
  h.phi1p = std::cos(z);
  h.F = 0.5 * (h.phi1p + h.theta1);
  h.Fm = 0.5 * (h.phi1p - h.theta1);
  return h;
}

// q = g·δ(t-a):
//   θ(t) = cos zt + g cos(za) sin z(t-a)/z,
//   φ(t) = sin zt/z + g (sin za/z)(sin z(t-a)/z).
inline armchair::HillData hill_delta(double g, double a, cdouble lambda) {
  cdouble z = std::sqrt(lambda);
  cdouble ca = std::cos(z * a), sa = a * sinc(z * a);
  cdouble cb = std::cos(z * (1.0 - a)), sb = (1.0 - a) * sinc(z * (1.0 - a));
  armchair::HillData h;
  h.lambda = lambda;
  h.theta1 = std::cos(z) + g * ca * sb;
  h.theta1p = -lambda * sinc(z) + g * ca * cb;
  h.phi1 = sinc(z) + g * sa * sb;
  h.phi1p = std::cos(z) + g * sa * cb;
  h.F = 0.5 * (h.phi1p + h.theta1);
  h.Fm = 0.5 * (h.phi1p - h.theta1);
  return h;
}

inline double rel_err(cdouble got, cdouble want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace oracles
