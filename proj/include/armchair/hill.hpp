#pragma once

#include <complex>
#include <vector>

#include "armchair/mat.hpp"
#include "armchair/potential.hpp"

namespace armchair {

// Values at t=1 of the fundamental solutions of -y'' + q y = λ y on [0,1]
// (θ(0)=φ'(0)=1, θ'(0)=φ(0)=0), together with the discriminant
// F = (φ₁'+θ₁)/2 and its odd counterpart Fm = (φ₁'-θ₁)/2 (zero for even q).
struct HillData {
  cdouble lambda;
  cdouble theta1, phi1, theta1p, phi1p;
  cdouble F, Fm;

  // 2x2 monodromy matrix of the scalar problem.
  Mat2 cell_matrix() const {
    return Mat2{{theta1, phi1, theta1p, phi1p}};
  }
};

struct OdeOptions {
  double rel_tol = 1e-13;
  double abs_tol = 1e-13;
};

// |θ₁φ₁' - θ₁'φ₁ - 1| scaled by the magnitude of the products.
double wronskian_residual(const HillData& h);

// Integrates the fundamental system across [0,1]. The density is stepped
// adaptively (restarted at every segment boundary), delta terms are applied
// as exact derivative jumps y'(a+) = y'(a-) + g·y(a). λ may be complex; the
// fields are even functions of z = √λ, so the branch of the square root is
// unobservable.
HillData fundamental_solutions(const Potential& q, cdouble lambda,
                               const OdeOptions& opts = {});

// All zeros of φ₁ in (-∞, lambda_max] (the Dirichlet spectrum σ_D), refined
// to relative 1e-12 and verified against the oscillation count of φ.
std::vector<double> dirichlet_eigenvalues(const Potential& q,
                                          double lambda_max,
                                          const OdeOptions& opts = {});

// All zeros of θ₁' in (-∞, lambda_max] (the Neumann spectrum), verified by a
// density-doubling recount.
std::vector<double> neumann_eigenvalues(const Potential& q, double lambda_max,
                                        const OdeOptions& opts = {});

// One periodic/antiperiodic eigenvalue λ̃_n^± of the scalar operator:
// F(λ̃_n^±) = (-1)^n. upper=false is the lower gap edge λ̃_n^-.
struct HillEdge {
  double lambda = 0.0;
  int n = 0;
  bool upper = true;
  bool periodic = true;  // n even
};

// Solutions of F(λ) = ±1 up to lambda_max in interlaced order
// λ̃₀⁺ < λ̃₁⁻ ≤ λ̃₁⁺ < λ̃₂⁻ ≤ ...; closed gaps appear as coincident ∓ pairs.
std::vector<HillEdge> hill_band_edges(const Potential& q, double lambda_max,
                                      const OdeOptions& opts = {});

// Band intervals [λ̃_{n-1}^+, λ̃_n^-] implied by the edge list, clipped to
// lambda_max (a trailing unclosed band is clipped as well).
std::vector<std::pair<double, double>> hill_bands(
    const std::vector<HillEdge>& edges, double lambda_max);

// ∫₀¹ φ(t,μ)² dt for real μ (flat-band Gram normalisation).
double phi_l2_norm_sq(const Potential& q, double mu,
                      const OdeOptions& opts = {});

// Zeros of φ(·,λ) in (0,1): the Sturm oscillation count.
int phi_oscillation_count(const Potential& q, double lambda,
                          const OdeOptions& opts = {});

}  // namespace armchair
