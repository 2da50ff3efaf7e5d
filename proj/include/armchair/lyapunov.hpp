#pragma once

#include <optional>
#include <utility>

#include "armchair/hill.hpp"
#include "armchair/monodromy.hpp"

namespace armchair {

enum class BranchMode { principal, tracked, degenerate };

// Two-branch Lyapunov data of the fiber operator at one λ:
//   ξ_k = (9F² - Fm² - 1)/2 - s_k²,  ρ_k = (9F² - s_k²)c_k² + s_k²Fm²,
//   f_{1,2} = ξ_k ± √ρ_k.
// Branch 1 is the larger branch on the real axis where ρ>0; elsewhere the
// square root is the principal one, or tracked by continuity along a scan.
struct LyapunovData {
  cdouble lambda;
  cdouble xi, rho;
  cdouble f1, f2;
  BranchMode mode = BranchMode::principal;
  // |ρ| < 1e-10·(1+|ξ|²): the branches collide at ξ within tolerance
  bool at_branch_point = false;
};

std::pair<cdouble, cdouble> xi_rho(const HillData& h, const TubeParams& p);

LyapunovData lyapunov_eval(const HillData& h, const TubeParams& p);

// Continuity-tracked branches along a λ path: each call matches the sign of
// √ρ to the previous call, seeded with the principal root. One tracker per
// scan; not shared across threads.
class BranchTracker {
 public:
  LyapunovData eval(const HillData& h, const TubeParams& p);
  void reset() { have_prev_ = false; }

 private:
  bool have_prev_ = false;
  cdouble prev_w_{0.0, 0.0};
};

// |det(M - τI₄) - (τ²-2f₁τ+1)(τ²-2f₂τ+1)| scaled by the operand magnitude.
double char_poly_residual(const Mat4& m, const LyapunovData& lyap,
                          cdouble tau);

// Reciprocal eigenvalue pair {τ, 1/τ} of the cell matrix attached to one
// branch value f: the roots of τ² - 2fτ + 1.
std::pair<cdouble, cdouble> branch_multipliers(cdouble f);

// Closed forms for even potentials (Fm = 0), valid on real λ with
// 9F² >= s_k²: the sorted pair ( (√(9F²-s_k²)±|c_k|)²/2 - 1 ).
std::optional<std::pair<double, double>> even_branch_pair(double F,
                                                          const TubeParams& p);

}  // namespace armchair
