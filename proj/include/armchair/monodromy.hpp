#pragma once

#include "armchair/hill.hpp"
#include "armchair/mat.hpp"

namespace armchair {

// Fiber index data of the tube: N hexagons around the circumference, fiber
// k in [0,N), twist phase s = e^{2πik/N} and the derived trigonometric
// constants.
struct TubeParams {
  int N = 1;
  int k = 0;
  cdouble s{1.0, 0.0};  // e^{2πik/N}
  double s_k = 0.0;     // sin(πk/N)
  double c_k = 1.0;     // cos(πk/N)
  double s_2k = 0.0;    // sin(2πk/N)

  TubeParams(int N_, int k_);
};

// 4x4 cell transfer matrix of the fiber operator. In the regularized form
// the matrix is conjugated by R = I₂ ⊕ φ₁I₂, which removes the poles at the
// Dirichlet spectrum (the conjugate is entire in λ).
struct Monodromy4 {
  Mat4 m;
  bool regularized = false;
};

// Threshold below which λ counts as lying on the Dirichlet spectrum for the
// pole guard.
inline constexpr double kPoleGuard = 1e-12;

// Closed-form assembly M_k = R⁻¹ Y T_k R with
//   V_k = [[2F, -s],[-s̄, 2F]],  T_k = [[V_k, I],[V₀V_k - I, V₀]],
//   Y = [[θ₁I, I],[φ₁θ₁'I, φ₁'I]].
// With regularized=true returns R M_k R⁻¹ = Y T_k, defined for every λ.
Monodromy4 build_monodromy(const HillData& h, const TubeParams& p,
                           bool regularized = false);

// The four transfer factors across one cell; used by the independent
// product assembly M_k = Y₃Y₂Y₁Y₀ and its determinant checks
// (det Y₀ = det Y₂ = -1, det Y₁ = det Y₃ = 1).
struct YFactors {
  Mat4 y0, y1, y2, y3;
};
YFactors monodromy_y_factors(const HillData& h, const TubeParams& p);

// Independent assembly through the four-factor product; cross-check oracle
// for build_monodromy.
Monodromy4 build_monodromy_oracle(const HillData& h, const TubeParams& p);

// Scaled residuals of the structural identities of the cell matrix:
//   det M_k = 1
//   Tr M₀  = 2(9F² - Fm² - 1)
//   Tr M_k = Tr M₀ - 4 s_k²
//   Tr M₀² = 72F² + (Tr M₀)²/2 - 4
//   Tr M_k² = Tr M₀² - 8 s_k² Tr M₀ - 4 s_2k²
//   M_kᵀ J M_k = J with J = [[0, j₂],[-j₂, 0]], j₂ = [[0,1],[1,0]]
// plus entrywise agreement with the Y-product oracle. Residuals are scaled
// by max(1, magnitude of the compared quantities).
struct IdentityReport {
  double det = 0.0;
  double trace0 = 0.0;
  double trace_k = 0.0;
  double trace0_sq = 0.0;
  double trace_k_sq = 0.0;
  double symplectic = 0.0;
  double oracle = 0.0;

  double max() const;
};

IdentityReport verify_identities(const HillData& h, const TubeParams& p);

// J of the symplectic relation.
Mat4 symplectic_form();

}  // namespace armchair
