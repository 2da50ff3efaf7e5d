#include "armchair/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "armchair/errors.hpp"
#include "armchair/roots.hpp"
#include "armchair/threads.hpp"

namespace armchair {

namespace {

struct Sample {
  double lambda = 0.0;
  double xi = 0.0, rho = 0.0;
  double f1 = 0.0, f2 = 0.0;  // real parts; meaningful where rho >= 0
};

Sample sample_at(const Potential& q, const TubeParams& p, double lambda,
                 const OdeOptions& opts) {
  auto h = fundamental_solutions(q, lambda, opts);
  auto [xi, rho] = xi_rho(h, p);
  Sample s;
  s.lambda = lambda;
  s.xi = xi.real();
  s.rho = rho.real();
  if (s.rho >= 0.0) {
    double w = std::sqrt(s.rho);
    s.f1 = s.xi + w;
    s.f2 = s.xi - w;
  } else {
    s.f1 = s.f2 = s.xi;
  }
  return s;
}

std::vector<double> scan_grid(double lo, double hi, int grid) {
  auto xs = oscillation_grid(lo, hi);
  for (int i = 0; i <= grid; ++i)
    xs.push_back(lo + (hi - lo) * static_cast<double>(i) / grid);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) {
                         return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a));
                       }),
           xs.end());
  return xs;
}

// Walks one branch (1, 2, or 0 = merged ξ in degenerate mode) over the
// sampled grid and refines every state flip into a typed band edge.
std::vector<Band> scan_branch(const Potential& q, const TubeParams& p,
                              const std::vector<Sample>& pts, int branch,
                              const OdeOptions& opts) {
  auto value = [&](const Sample& s) {
    return branch == 2 ? s.f2 : (branch == 1 ? s.f1 : s.xi);
  };
  auto fval = [&](double x) { return value(sample_at(q, p, x, opts)); };
  auto rhoval = [&](double x) { return sample_at(q, p, x, opts).rho; };
  auto inside = [&](const Sample& s) {
    if (branch != 0 && s.rho < 0.0) return false;
    double v = value(s);
    return v >= -1.0 && v <= 1.0;
  };

  std::vector<Band> bands;
  Band cur;
  cur.branch = branch;
  cur.k = p.k;
  bool open = inside(pts.front());
  if (open) {
    cur.lo = pts.front().lambda;
    cur.lo_type = EdgeType::range;
  }

  auto push_band = [&](double hi, EdgeType hi_type) {
    cur.hi = hi;
    cur.hi_type = hi_type;
    if (cur.hi - cur.lo > 1e-11 * (1.0 + std::abs(cur.lo)))
      bands.push_back(cur);
    open = false;
  };

  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const Sample& a = pts[i];
    const Sample& b = pts[i + 1];
    bool ia = inside(a), ib = inside(b);
    if (ia == ib) continue;

    double edge;
    EdgeType type;
    if (branch == 0 || (a.rho >= 0.0 && b.rho >= 0.0)) {
      const Sample& out = ia ? b : a;
      double target = value(out) > 1.0 ? 1.0 : -1.0;
      edge = refine_bracket([&](double x) { return fval(x) - target; },
                            a.lambda, b.lambda);
      type = target > 0 ? EdgeType::periodic : EdgeType::antiperiodic;
    } else {
      // ρ changes sign: the branch either ends at the branch point or at an
      // F=±1 crossing before it
      double lr = refine_bracket(rhoval, a.lambda, b.lambda);
      double xir = sample_at(q, p, lr, opts).xi;
      if (std::abs(xir) <= 1.0 + 1e-9) {
        edge = lr;
        type = EdgeType::resonance;
      } else {
        double target = xir > 1.0 ? 1.0 : -1.0;
        double flo = ia ? a.lambda : lr;
        double fhi = ia ? lr : b.lambda;
        edge = refine_bracket([&](double x) { return fval(x) - target; }, flo,
                              fhi);
        type = target > 0 ? EdgeType::periodic : EdgeType::antiperiodic;
      }
    }

    if (!ia && ib) {
      cur = Band{};
      cur.branch = branch;
      cur.k = p.k;
      cur.lo = edge;
      cur.lo_type = type;
      open = true;
    } else {
      push_band(edge, type);
    }
  }
  if (open) push_band(pts.back().lambda, EdgeType::range);
  return bands;
}

}  // namespace

const char* edge_type_name(EdgeType t) {
  switch (t) {
    case EdgeType::periodic: return "periodic";
    case EdgeType::antiperiodic: return "antiperiodic";
    case EdgeType::resonance: return "resonance-edge";
    case EdgeType::range: return "range-boundary";
  }
  return "?";
}

KSpectrum bands_for_k(const Potential& q, const TubeParams& p, double lo,
                      double hi, int grid, const OdeOptions& opts) {
  if (!(lo < hi)) throw parse_error("bands_for_k: empty λ range");
  if (grid < 16) throw parse_error("bands_for_k: grid must be >= 16");

  auto xs = scan_grid(lo, hi, grid);
  std::vector<Sample> pts(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) pts[i] = sample_at(q, p, xs[i], opts);

  KSpectrum out;
  out.k = p.k;
  // ρ ≡ 0 (even q at k = N/2) leaves only integration noise, quadratically
  // small in the tolerance; a genuinely split pair sits many orders above
  out.degenerate = true;
  for (const auto& s : pts)
    if (std::abs(s.rho) > 1e-18 * (1.0 + s.xi * s.xi)) {
      out.degenerate = false;
      break;
    }

  if (out.degenerate) {
    out.bands = scan_branch(q, p, pts, 0, opts);
  } else {
    out.bands = scan_branch(q, p, pts, 1, opts);
    auto b2 = scan_branch(q, p, pts, 2, opts);
    out.bands.insert(out.bands.end(), b2.begin(), b2.end());
    std::sort(out.bands.begin(), out.bands.end(),
              [](const Band& a, const Band& b) {
                return a.lo != b.lo ? a.lo < b.lo : a.branch < b.branch;
              });
  }
  return out;
}

std::vector<FlatBand> flat_bands(const Potential& q, double lo, double hi,
                                 const OdeOptions& opts) {
  std::vector<FlatBand> out;
  auto mus = dirichlet_eigenvalues(q, hi, opts);
  for (size_t i = 0; i < mus.size(); ++i)
    if (mus[i] >= lo) out.push_back({mus[i], static_cast<int>(i) + 1});
  return out;
}

std::vector<std::pair<double, double>> merge_intervals(
    std::vector<std::pair<double, double>> intervals, double tol) {
  std::sort(intervals.begin(), intervals.end());
  std::vector<std::pair<double, double>> out;
  for (const auto& iv : intervals) {
    if (!out.empty() &&
        iv.first <= out.back().second + tol * (1.0 + std::abs(iv.first))) {
      out.back().second = std::max(out.back().second, iv.second);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

FullSpectrum full_spectrum(const Potential& q, int N, double lo, double hi,
                           int grid, const OdeOptions& opts) {
  FullSpectrum out;
  out.per_k.resize(N);
  parallel_for(N, [&](int k) {
    out.per_k[k] = bands_for_k(q, TubeParams(N, k), lo, hi, grid, opts);
  });
  out.flat = flat_bands(q, lo, hi, opts);
  std::vector<std::pair<double, double>> ivs;
  for (const auto& ks : out.per_k)
    for (const auto& b : ks.bands) ivs.emplace_back(b.lo, b.hi);
  out.ac_union = merge_intervals(std::move(ivs));
  return out;
}

std::vector<BranchSample> branch_samples(const Potential& q,
                                         const TubeParams& p, double lo,
                                         double hi, int npts,
                                         const OdeOptions& opts) {
  if (npts < 2) throw parse_error("branch_samples: need at least 2 points");
  std::vector<BranchSample> out;
  out.reserve(npts);
  BranchTracker tracker;
  for (int i = 0; i < npts; ++i) {
    double x = lo + (hi - lo) * static_cast<double>(i) / (npts - 1);
    auto h = fundamental_solutions(q, x, opts);
    auto d = tracker.eval(h, p);
    out.push_back({x, d.f1, d.f2});
  }
  return out;
}

}  // namespace armchair
