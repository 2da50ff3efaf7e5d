#pragma once

#include <functional>
#include <vector>

namespace armchair {

// λ-grid whose spacing keeps a constant step (default 0.125) in z = √λ
// units, i.e. resolves the oscillation scale of the solutions; below λ=1
// (and for λ<0, where the solutions are hyperbolic) the step is constant.
std::vector<double> oscillation_grid(double lo, double hi,
                                     double z_step = 0.125);

struct RootHit {
  double x = 0.0;
  int multiplicity = 1;  // 2 for tangential (sign-preserving) zeros
};

struct RootScanOptions {
  bool detect_double = false;
  // tangency accepted when the refined |g| minimum is below
  // max(abs_floor, rel_drop * neighbouring |g|)
  double abs_floor = 1e-12;
  double rel_drop = 1e-10;
};

// Bisection to relative 1e-13 (on x), followed by a secant polish. Requires
// g(a)·g(b) <= 0.
double refine_bracket(const std::function<double(double)>& g, double a,
                      double b);

// All real zeros of g on the grid: sign changes refined by bisection+secant;
// optionally also tangential zeros found as deep local minima of |g|.
std::vector<RootHit> find_real_roots(const std::function<double(double)>& g,
                                     const std::vector<double>& grid,
                                     const RootScanOptions& opts = {});

// Centered finite difference with one Richardson step,
// h = 1e-5·(1+|x|) by default.
double fd_derivative(const std::function<double(double)>& g, double x,
                     double h = 0.0);

}  // namespace armchair
