#pragma once

#include <array>
#include <map>
#include <utility>

#include "armchair/lyapunov.hpp"

namespace armchair {

// A finitely supported element of the flat-band eigenspace at a Dirichlet
// eigenvalue μ. Every edge component is a multiple of φ(·,μ); the table maps
// cell index n to the six scalar factors (edges j=1..6 at indices 0..5).
using EdgeTable = std::map<int, std::array<cdouble, 6>>;

EdgeTable translate(const EdgeTable& t, int n);
EdgeTable add_scaled(EdgeTable acc, const EdgeTable& t, cdouble c);
double table_distance(const EdgeTable& a, const EdgeTable& b);

// Compactly supported eigenfunction of the fiber operator at μ ∈ σ_D.
// Case a (φ₁'² ≠ 1 or k ≠ 0): κ₁ = 1 - s^k φ₁'², κ₂ = 1 - s^k φ₁'⁴ are
// nonzero and the two generators occupy cells {0,1} / {-1,0,1}.
// Case b (φ₁'² = 1 and k = 0): κ₁ = κ₂ = 0 and both generators occupy
// cells {0,1}.
struct FlatBandEigenfunction {
  double mu = 0.0;
  int k = 0;
  bool case_b = false;
  cdouble kappa1, kappa2;
  EdgeTable coeffs;
};

// The two generators ψ^{(0,1)}, ψ^{(0,2)} at μ; errors if μ is not a
// Dirichlet eigenvalue.
std::pair<FlatBandEigenfunction, FlatBandEigenfunction> build_psi(
    const Potential& q, double mu, const TubeParams& p,
    const OdeOptions& opts = {});

// Max over the cell Kirchhoff conditions (vertex value matching, including
// the s^k-twisted junction, plus signed derivative sums) of the residual
// magnitude, for a table of φ(·,μ)-multiples.
double kirchhoff_residual(const EdgeTable& f, const Potential& q, double mu,
                          const TubeParams& p, const OdeOptions& opts = {});

// Largest |coefficient·φ₁(μ)| over edge endpoints — the vertex values.
double vertex_value_residual(const EdgeTable& f, const Potential& q, double mu,
                             const OdeOptions& opts = {});

struct Decomposition {
  std::map<int, cdouble> hat1, hat2;  // coefficients of ψ^{(n,1)}, ψ^{(n,2)}
  double reconstruction_error = 0.0;  // table distance of the re-synthesis
};

// Expansion coefficients of a finitely supported eigenspace element over the
// translated generators. Requires κ₁κ₂ ≠ 1 in case a.
Decomposition decompose(const EdgeTable& f, const Potential& q, double mu,
                        const TubeParams& p, const OdeOptions& opts = {});

// Σ_n hat1_n ψ^{(n,1)} + hat2_n ψ^{(n,2)}.
EdgeTable reconstruct(const std::map<int, cdouble>& hat1,
                      const std::map<int, cdouble>& hat2,
                      const FlatBandEigenfunction& psi1,
                      const FlatBandEigenfunction& psi2);

namespace detail {
// Case-a analysis step on a coefficient table, given the twist s^k and
// φ₁'(μ); split out for direct testing.
Decomposition decompose_with(const EdgeTable& f, cdouble s, cdouble phi1p,
                             bool case_b);
}  // namespace detail

}  // namespace armchair
