#pragma once

#include <utility>
#include <vector>

#include "armchair/lyapunov.hpp"

namespace armchair {

enum class EdgeType { periodic, antiperiodic, resonance, range };

const char* edge_type_name(EdgeType t);

// One absolutely-continuous band of a fiber operator: a maximal interval on
// which the (real) branch value stays in [-1,1]. branch is 1 or 2, or 0 for
// the merged single-branch mode of the degenerate case ρ ≡ 0.
struct Band {
  double lo = 0.0, hi = 0.0;
  int branch = 1;
  EdgeType lo_type = EdgeType::range;
  EdgeType hi_type = EdgeType::range;
  int k = 0;
};

// Flat band: an eigenvalue of infinite multiplicity, located at the n-th
// Dirichlet eigenvalue (independent of k).
struct FlatBand {
  double mu = 0.0;
  int n = 1;
};

struct KSpectrum {
  int k = 0;
  bool degenerate = false;  // ρ ≡ 0 on the scan (even q, k = N/2)
  std::vector<Band> bands;
};

// Bands of fiber k on [lo,hi]. The scan grid is the union of a uniform grid
// of `grid` intervals and an oscillation-scaled grid; endpoints are refined
// by bisection (on F∓1, or on ρ for resonance edges) to relative 1e-10.
// Intervals where the branches are non-real (ρ<0) are excluded; bands from
// the two branches are reported separately, overlaps allowed.
KSpectrum bands_for_k(const Potential& q, const TubeParams& p, double lo,
                      double hi, int grid, const OdeOptions& opts = {});

std::vector<FlatBand> flat_bands(const Potential& q, double lo, double hi,
                                 const OdeOptions& opts = {});

struct FullSpectrum {
  std::vector<KSpectrum> per_k;
  std::vector<FlatBand> flat;
  std::vector<std::pair<double, double>> ac_union;
};

// Per-k band scans (parallel over k, deterministic ordering), flat bands,
// and the merged union of all bands.
FullSpectrum full_spectrum(const Potential& q, int N, double lo, double hi,
                           int grid, const OdeOptions& opts = {});

std::vector<std::pair<double, double>> merge_intervals(
    std::vector<std::pair<double, double>> intervals, double tol = 1e-9);

// (λ, F_{k,1}, F_{k,2}) samples with continuity-tracked branches, for
// external plotting of band diagrams.
struct BranchSample {
  double lambda;
  cdouble f1, f2;
};
std::vector<BranchSample> branch_samples(const Potential& q,
                                         const TubeParams& p, double lo,
                                         double hi, int npts,
                                         const OdeOptions& opts = {});

}  // namespace armchair
