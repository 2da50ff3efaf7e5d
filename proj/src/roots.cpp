#include "armchair/roots.hpp"

#include <algorithm>
#include <cmath>

#include "armchair/errors.hpp"

namespace armchair {

std::vector<double> oscillation_grid(double lo, double hi, double z_step) {
  if (!(lo < hi)) throw numerical_error("oscillation_grid: empty range");
  std::vector<double> g;
  double x = lo;
  while (x < hi) {
    g.push_back(x);
    double dx = 2.0 * z_step * std::sqrt(std::max(1.0, std::abs(x)));
    x += dx;
  }
  g.push_back(hi);
  return g;
}

double refine_bracket(const std::function<double(double)>& g, double a,
                      double b) {
  double fa = g(a), fb = g(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0))
    throw numerical_error("refine_bracket: no sign change");
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    if (b - a <= 1e-13 * std::max(1.0, std::max(std::abs(a), std::abs(b))))
      break;
    double fm = g(m);
    if (fm == 0.0) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  // secant polish inside the final bracket
  double x0 = a, x1 = b, f0 = fa, f1 = fb;
  for (int it = 0; it < 4 && f1 != f0; ++it) {
    double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (!(x2 >= a && x2 <= b)) break;
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = g(x1);
    if (f1 == 0.0) break;
  }
  return std::abs(f1) < std::abs(f0) ? x1 : x0;
}

double fd_derivative(const std::function<double(double)>& g, double x,
                     double h) {
  if (h <= 0.0) h = 1e-5 * (1.0 + std::abs(x));
  auto central = [&](double step) {
    return (g(x + step) - g(x - step)) / (2.0 * step);
  };
  double d1 = central(h);
  double d2 = central(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;  // Richardson
}

std::vector<RootHit> find_real_roots(const std::function<double(double)>& g,
                                     const std::vector<double>& grid,
                                     const RootScanOptions& opts) {
  std::vector<RootHit> roots;
  if (grid.size() < 2) return roots;
  std::vector<double> v(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) v[i] = g(grid[i]);

  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    if (v[i] == 0.0) {
      if (roots.empty() || roots.back().x != grid[i])
        roots.push_back({grid[i], 1});
      continue;
    }
    if ((v[i] > 0) != (v[i + 1] > 0)) {
      roots.push_back({refine_bracket(g, grid[i], grid[i + 1]), 1});
    }
  }

  if (opts.detect_double) {
    for (size_t i = 1; i + 1 < grid.size(); ++i) {
      bool same_sign = (v[i - 1] > 0) == (v[i] > 0) && (v[i] > 0) == (v[i + 1] > 0);
      bool dip = std::abs(v[i]) < std::abs(v[i - 1]) &&
                 std::abs(v[i]) < std::abs(v[i + 1]);
      if (!same_sign || !dip) continue;
      // locate the extremum of g as the zero of g' (sign change of the
      // finite-difference derivative)
      auto dg = [&](double x) { return fd_derivative(g, x); };
      double da = dg(grid[i - 1]), db = dg(grid[i + 1]);
      if ((da > 0) == (db > 0)) continue;
      double x = refine_bracket(dg, grid[i - 1], grid[i + 1]);
      double gx = g(x);
      double neighbour = std::max(std::abs(v[i - 1]), std::abs(v[i + 1]));
      bool dup = false;
      for (const auto& r : roots)
        if (std::abs(r.x - x) <= 1e-7 * std::max(1.0, std::abs(x))) dup = true;
      if (dup) continue;
      if ((gx > 0) != (v[i] > 0) && std::abs(gx) > opts.abs_floor) {
        // the dip crosses zero between grid points: a close pair of simple
        // roots straddling the extremum
        roots.push_back({refine_bracket(g, grid[i - 1], x), 1});
        roots.push_back({refine_bracket(g, x, grid[i + 1]), 1});
      } else if (std::abs(gx) <=
                 std::max(opts.abs_floor, opts.rel_drop * neighbour)) {
        roots.push_back({x, 2});
      }
    }
    std::sort(roots.begin(), roots.end(),
              [](const RootHit& a, const RootHit& b) { return a.x < b.x; });
  }
  // a value landing exactly on zero at a grid point can be reported by both
  // the point test and the adjacent bracket
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](const RootHit& a, const RootHit& b) {
                            return std::abs(a.x - b.x) <=
                                   1e-9 * std::max(1.0, std::abs(a.x));
                          }),
              roots.end());
  return roots;
}

}  // namespace armchair
