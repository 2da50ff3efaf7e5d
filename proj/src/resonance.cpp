#include "armchair/resonance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "armchair/errors.hpp"
#include "armchair/roots.hpp"

namespace armchair {

namespace {

cdouble rho_at(const Potential& q, const TubeParams& p, cdouble lambda,
               const OdeOptions& opts) {
  return xi_rho(fundamental_solutions(q, lambda, opts), p).second;
}

cdouble rho_derivative(const Potential& q, const TubeParams& p, cdouble lambda,
                       const OdeOptions& opts) {
  double h = 1e-5 * (1.0 + std::abs(lambda));
  auto central = [&](double step) {
    return (rho_at(q, p, lambda + step, opts) -
            rho_at(q, p, lambda - step, opts)) /
           (2.0 * step);
  };
  cdouble d1 = central(h);
  cdouble d2 = central(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

struct BoundaryNearZero {};

struct WindingResult {
  int count = 0;
  double min_abs = 0.0;
  double max_abs = 0.0;
};

// Total argument change of ρ along the rectangle boundary, accumulated from
// samples kept within π/2 of each other in phase.
WindingResult winding_on_rect(const Potential& q, const TubeParams& p,
                              const Rect& r, const OdeOptions& opts) {
  std::array<cdouble, 5> corner = {
      cdouble(r.re_lo, r.im_lo), cdouble(r.re_hi, r.im_lo),
      cdouble(r.re_hi, r.im_hi), cdouble(r.re_lo, r.im_hi),
      cdouble(r.re_lo, r.im_lo)};
  WindingResult res;
  res.min_abs = 1e300;
  double total = 0.0;

  struct Node {
    cdouble z;
    cdouble f;
  };
  for (int e = 0; e < 4; ++e) {
    const int kInit = 16;
    std::vector<Node> nodes(kInit + 1);
    for (int i = 0; i <= kInit; ++i) {
      cdouble z = corner[e] + (corner[e + 1] - corner[e]) *
                                  (static_cast<double>(i) / kInit);
      nodes[i] = {z, rho_at(q, p, z, opts)};
    }
    for (int i = 0; i < kInit; ++i) {
      // adaptive refinement of one sub-segment via an explicit stack
      std::vector<std::pair<Node, Node>> stack{{nodes[i], nodes[i + 1]}};
      int guard = 0;
      while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        if (++guard > 1 << 16) throw BoundaryNearZero{};
        res.min_abs = std::min({res.min_abs, std::abs(a.f), std::abs(b.f)});
        res.max_abs = std::max({res.max_abs, std::abs(a.f), std::abs(b.f)});
        if (a.f == cdouble(0.0) || b.f == cdouble(0.0))
          throw BoundaryNearZero{};
        double dphi = std::arg(b.f / a.f);
        if (std::abs(dphi) <= M_PI / 2.0) {
          total += dphi;
        } else {
          if (std::abs(b.z - a.z) <
              1e-12 * (1.0 + std::abs(a.z)))  // zero pinned on the boundary
            throw BoundaryNearZero{};
          cdouble zm = 0.5 * (a.z + b.z);
          Node m{zm, rho_at(q, p, zm, opts)};
          stack.push_back({m, b});
          stack.push_back({a, m});
        }
      }
    }
  }
  if (res.min_abs < 1e-11 * std::max(1.0, res.max_abs))
    throw BoundaryNearZero{};
  double w = total / (2.0 * M_PI);
  int count = static_cast<int>(std::lround(w));
  if (std::abs(w - count) > 0.25) throw BoundaryNearZero{};
  if (count < 0)
    throw numerical_error("winding_number: negative count for an entire function");
  res.count = count;
  return res;
}

cdouble newton_refine(const Potential& q, const TubeParams& p, cdouble start,
                      int multiplicity, const OdeOptions& opts) {
  cdouble lam = start;
  for (int it = 0; it < 80; ++it) {
    cdouble f = rho_at(q, p, lam, opts);
    cdouble fp = rho_derivative(q, p, lam, opts);
    if (std::abs(fp) == 0.0) break;
    cdouble step = static_cast<double>(multiplicity) * f / fp;
    lam -= step;
    if (std::abs(step) <= 1e-13 * (1.0 + std::abs(lam))) break;
  }
  return lam;
}

}  // namespace

int winding_number(const Potential& q, const TubeParams& p, const Rect& rect,
                   const OdeOptions& opts) {
  try {
    return winding_on_rect(q, p, rect, opts).count;
  } catch (const BoundaryNearZero&) {
    throw numerical_error("winding_number: zero too close to the boundary");
  }
}

std::vector<Resonance> real_resonances(const Potential& q,
                                       const TubeParams& p, double lo,
                                       double hi, const OdeOptions& opts) {
  if (!(lo < hi)) throw parse_error("real_resonances: empty range");
  // degenerate regime: ρ vanishes identically (even q, k = N/2)
  bool degenerate = true;
  for (int i = 0; i < 32; ++i) {
    double x = lo + (hi - lo) * (i + 0.5) / 32.0;
    auto h = fundamental_solutions(q, x, opts);
    auto [xi, rho] = xi_rho(h, p);
    if (std::abs(rho) > 1e-18 * (1.0 + std::norm(xi))) {
      degenerate = false;
      break;
    }
  }
  if (degenerate)
    throw degenerate_error(
        "real_resonances: rho vanishes identically on the range "
        "(degenerate single-branch mode)");

  auto val = [&](double x) { return rho_at(q, p, cdouble(x, 0.0), opts).real(); };
  RootScanOptions sopts;
  sopts.detect_double = true;
  // fine grid: resonance pairs split only at O(ε^{3/2}) must show up as a
  // dip between grid neighbours
  auto hits = find_real_roots(val, oscillation_grid(lo, hi, 0.03125), sopts);
  std::vector<Resonance> out;
  for (const auto& hit : hits) {
    Resonance r;
    r.lambda = cdouble(hit.x, 0.0);
    r.k = p.k;
    r.multiplicity = hit.multiplicity;
    r.kind = hit.multiplicity == 2 ? Resonance::Kind::real_double
                                   : Resonance::Kind::real_simple;
    r.residual = std::abs(val(hit.x));
    out.push_back(r);
  }
  return out;
}

std::vector<Resonance> complex_resonances(const Potential& q,
                                          const TubeParams& p,
                                          const Rect& rect,
                                          const OdeOptions& opts) {
  if (!(rect.re_lo < rect.re_hi) || !(rect.im_lo < rect.im_hi))
    throw parse_error("complex_resonances: empty rectangle");

  double span = std::max(rect.re_hi - rect.re_lo, rect.im_hi - rect.im_lo);
  const double pad = 1e-6 * (1.0 + span);

  for (int attempt = 0; attempt < 4; ++attempt) {
    Rect outer{rect.re_lo - attempt * pad, rect.re_hi + attempt * pad,
               rect.im_lo - attempt * pad, rect.im_hi + attempt * pad};
    try {
      WindingResult root = winding_on_rect(q, p, outer, opts);
      if (root.count == 0) return {};

      std::vector<Resonance> found;
      struct Cell {
        Rect r;
        int count;
        int depth;
      };
      std::vector<Cell> stack{{outer, root.count, 0}};
      while (!stack.empty()) {
        Cell c = stack.back();
        stack.pop_back();
        if (c.count == 0) continue;
        double w = c.r.re_hi - c.r.re_lo;
        double h = c.r.im_hi - c.r.im_lo;
        double center_scale =
            1.0 + std::abs(cdouble(0.5 * (c.r.re_lo + c.r.re_hi),
                                   0.5 * (c.r.im_lo + c.r.im_hi)));
        bool tiny = std::max(w, h) < 1e-6 * center_scale;
        if (c.count == 1 || tiny || c.depth >= 40) {
          cdouble center(0.5 * (c.r.re_lo + c.r.re_hi),
                         0.5 * (c.r.im_lo + c.r.im_hi));
          cdouble lam = newton_refine(q, p, center, c.count, opts);
          // a zero cluster straddling a cut line gets its count split
          // between the children; converging cells merge back here
          Resonance* hit = nullptr;
          for (auto& r : found)
            if (std::abs(r.lambda - lam) <= 1e-8 * (1.0 + std::abs(lam)))
              hit = &r;
          if (hit) {
            hit->multiplicity += c.count;
          } else {
            Resonance r;
            r.lambda = lam;
            r.k = p.k;
            r.multiplicity = c.count;
            r.residual = std::abs(rho_at(q, p, lam, opts));
            found.push_back(r);
            hit = &found.back();
          }
          bool is_real = std::abs(hit->lambda.imag()) <=
                         1e-9 * (1.0 + std::abs(hit->lambda.real()));
          hit->kind = is_real ? (hit->multiplicity >= 2
                                     ? Resonance::Kind::real_double
                                     : Resonance::Kind::real_simple)
                              : Resonance::Kind::complex_point;
          continue;
        }
        // split the longer side; nudge the cut if it lands on a zero
        bool split_re = w >= h;
        int split_try = 0;
        for (; split_try < 3; ++split_try) {
          double frac = 0.5 + 0.07 * split_try;
          Rect c1 = c.r, c2 = c.r;
          if (split_re) {
            double cut = c.r.re_lo + frac * w;
            c1.re_hi = cut;
            c2.re_lo = cut;
          } else {
            double cut = c.r.im_lo + frac * h;
            c1.im_hi = cut;
            c2.im_lo = cut;
          }
          try {
            int n1 = winding_on_rect(q, p, c1, opts).count;
            int n2 = winding_on_rect(q, p, c2, opts).count;
            if (n1 + n2 != c.count) continue;  // missed/hit the cut line
            stack.push_back({c1, n1, c.depth + 1});
            stack.push_back({c2, n2, c.depth + 1});
            break;
          } catch (const BoundaryNearZero&) {
            continue;
          }
        }
        if (split_try == 3) {
          // treat as an unsplittable cluster
          stack.push_back({c.r, c.count, 40});
        }
      }

      int total_mult = 0;
      for (const auto& r : found) total_mult += r.multiplicity;
      if (total_mult != root.count) {
        std::ostringstream os;
        os << "complex_resonances: refined " << total_mult
           << " zeros but the boundary winding count is " << root.count;
        throw numerical_error(os.str());
      }
      std::sort(found.begin(), found.end(),
                [](const Resonance& a, const Resonance& b) {
                  if (a.lambda.real() != b.lambda.real())
                    return a.lambda.real() < b.lambda.real();
                  return a.lambda.imag() < b.lambda.imag();
                });
      return found;
    } catch (const BoundaryNearZero&) {
      continue;  // perturb the rectangle and retry
    }
  }
  throw numerical_error(
      "complex_resonances: a zero stays too close to the rectangle boundary "
      "after 3 perturbations");
}

std::pair<cdouble, cdouble> delta_asymptotics(const TubeParams& p, int n,
                                              double eps) {
  if (p.k == 0 || (p.N % 2 == 0 && p.k == p.N / 2))
    throw degenerate_error(
        "delta_asymptotics: formula inapplicable at k = 0 or k = N/2");
  if (n < 1) throw parse_error("delta_asymptotics: n must be >= 1");
  double pn = M_PI * n;
  // At a zero, 9F²c_k² = -s_k²(F₋²-c_k²) = -2c_k s_k² ε + O(ε²) forces
  // F = O(√ε); with z = πn + τ and F = ±(2πnε + τ)/(2πnε) + O(τ²) this
  // pins τ = -2πnε ± i 2√2 πn s_k ε^{3/2}/(3√c_k), so the linear shift of
  // r = (πn + τ)² is -(2πn)²ε. (The√(-2c_k ε) form keeps one expression
  // for both signs of ε and either sign of c_k.)
  double base = pn * pn * (1.0 - 4.0 * eps);
  cdouble root = std::sqrt(cdouble(-2.0 * p.c_k * eps, 0.0));
  cdouble off = (4.0 * pn * pn * p.s_k / (3.0 * p.c_k)) * eps * root;
  cdouble minus = base - off, plus = base + off;
  if (minus.real() > plus.real() ||
      (minus.real() == plus.real() && minus.imag() > plus.imag()))
    std::swap(minus, plus);
  return {minus, plus};
}

}  // namespace armchair
