#include "armchair/lyapunov.hpp"

#include <cmath>

namespace armchair {

namespace {

// Principal square root with a canonical branch on the negative real axis:
// a zero imaginary part is normalised to +0.0, so real ρ<0 always yields
// +i√|ρ| (IEEE -0.0 would land on the other side of the cut).
cdouble principal_sqrt(cdouble z) {
  if (z.imag() == 0.0) z = cdouble(z.real(), 0.0);
  return std::sqrt(z);
}

bool near_branch_point(cdouble xi, cdouble rho) {
  return std::abs(rho) < 1e-10 * (1.0 + std::norm(xi));
}

}  // namespace

std::pair<cdouble, cdouble> xi_rho(const HillData& h, const TubeParams& p) {
  const cdouble F2 = h.F * h.F;
  const cdouble Fm2 = h.Fm * h.Fm;
  const double sk2 = p.s_k * p.s_k;
  const double ck2 = p.c_k * p.c_k;
  cdouble xi = 0.5 * (9.0 * F2 - Fm2 - 1.0) - sk2;
  cdouble rho = (9.0 * F2 - sk2) * ck2 + sk2 * Fm2;
  return {xi, rho};
}

LyapunovData lyapunov_eval(const HillData& h, const TubeParams& p) {
  auto [xi, rho] = xi_rho(h, p);
  cdouble w = principal_sqrt(rho);
  LyapunovData d;
  d.lambda = h.lambda;
  d.xi = xi;
  d.rho = rho;
  d.f1 = xi + w;
  d.f2 = xi - w;
  d.mode = BranchMode::principal;
  d.at_branch_point = near_branch_point(xi, rho);
  return d;
}

LyapunovData BranchTracker::eval(const HillData& h, const TubeParams& p) {
  auto [xi, rho] = xi_rho(h, p);
  cdouble w = principal_sqrt(rho);
  // flip only on a decisive continuity win; exact ties (branch points, where
  // both signs are equidistant) stay with the principal root
  if (have_prev_ &&
      std::abs(-w - prev_w_) <
          std::abs(w - prev_w_) - 1e-9 * (std::abs(w) + std::abs(prev_w_)))
    w = -w;
  prev_w_ = w;
  have_prev_ = true;
  LyapunovData d;
  d.lambda = h.lambda;
  d.xi = xi;
  d.rho = rho;
  d.f1 = xi + w;
  d.f2 = xi - w;
  d.mode = BranchMode::tracked;
  d.at_branch_point = near_branch_point(xi, rho);
  return d;
}

double char_poly_residual(const Mat4& m, const LyapunovData& lyap,
                          cdouble tau) {
  Mat4 shifted = m;
  for (int i = 0; i < 4; ++i) shifted(i, i) -= tau;
  cdouble lhs = shifted.det();
  cdouble rhs = (tau * tau - 2.0 * lyap.f1 * tau + 1.0) *
                (tau * tau - 2.0 * lyap.f2 * tau + 1.0);
  // the determinant expansion sums products of four entries; its rounding
  // floor sets the meaningful scale even when the value cancels to O(1)
  double e = std::max(1.0, shifted.max_abs());
  double scale = std::max({1.0, std::abs(lhs), std::abs(rhs), e * e * e * e});
  return std::abs(lhs - rhs) / scale;
}

std::pair<cdouble, cdouble> branch_multipliers(cdouble f) {
  cdouble r = std::sqrt(f * f - 1.0);
  cdouble tau = f + r;
  if (std::abs(tau) < 1.0) tau = f - r;  // keep |τ| >= 1 for stable inversion
  return {tau, 1.0 / tau};
}

std::optional<std::pair<double, double>> even_branch_pair(
    double F, const TubeParams& p) {
  double disc = 9.0 * F * F - p.s_k * p.s_k;
  if (disc < 0.0) return std::nullopt;
  double r = std::sqrt(disc);
  double ack = std::abs(p.c_k);
  double hi = 0.5 * (r + ack) * (r + ack) - 1.0;
  double lo = 0.5 * (r - ack) * (r - ack) - 1.0;
  return std::make_pair(hi, lo);
}

}  // namespace armchair
