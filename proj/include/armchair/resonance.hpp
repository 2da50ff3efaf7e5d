#pragma once

#include <utility>
#include <vector>

#include "armchair/lyapunov.hpp"

namespace armchair {

// A zero of ρ_k — a branch point of the two-sheeted Lyapunov function. Real
// zeros bound resonance gaps; complex zeros come in conjugate pairs for real
// potentials.
struct Resonance {
  cdouble lambda;
  int k = 0;
  enum class Kind { real_simple, real_double, complex_point } kind =
      Kind::real_simple;
  int multiplicity = 1;
  double residual = 0.0;  // |ρ_k(λ)| after refinement
};

// Search rectangle [re_lo,re_hi] x [im_lo,im_hi] in the λ plane.
struct Rect {
  double re_lo, re_hi, im_lo, im_hi;
};

// All real zeros of ρ_k in [lo,hi]: sign changes refined by bisection,
// tangential zeros detected as deep minima of |ρ| and reported with
// multiplicity 2. Throws degenerate_error when ρ ≡ 0 on the range.
std::vector<Resonance> real_resonances(const Potential& q,
                                       const TubeParams& p, double lo,
                                       double hi,
                                       const OdeOptions& opts = {});

// Zeros inside the rectangle: the count comes from the winding number of ρ
// around the boundary; cells are subdivided until they isolate single zeros
// (or an unsplittable multiple zero), then Newton-refined with ρ' by
// Richardson-extrapolated central differences. A zero too close to the
// boundary triggers a 1e-6 perturbation of the rectangle, retried up to 3
// times.
std::vector<Resonance> complex_resonances(const Potential& q,
                                          const TubeParams& p,
                                          const Rect& rect,
                                          const OdeOptions& opts = {});

// Winding number of ρ_k along the rectangle boundary = number of zeros
// inside (with multiplicity); ρ_k is entire, so no pole handling is needed.
int winding_number(const Potential& q, const TubeParams& p, const Rect& rect,
                   const OdeOptions& opts = {});

// Two-term expansion of the resonance pair r_{k,n}^± of the delta family
// q = (1/v)δ(t - 1/2 - c_k ε - ε²) with v = ε:
//   r^± = (πn)² - (2πn)²ε ± (4(πn)² s_k/(3 c_k)) ε √(-2 c_k ε) + O(ε²),
// complex conjugates for ε>0 (and c_k>0), a real pair for ε<0. Requires
// k ∉ {0, N/2}. The remainder is genuinely O(ε²): the located zeros match
// this expansion at second order.
std::pair<cdouble, cdouble> delta_asymptotics(const TubeParams& p, int n,
                                              double eps);

}  // namespace armchair
