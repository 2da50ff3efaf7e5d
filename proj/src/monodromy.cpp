#include "armchair/monodromy.hpp"

#include <cmath>
#include <sstream>

#include "armchair/errors.hpp"

namespace armchair {

namespace {

Mat2 j1() { return Mat2{{1.0, 0.0, 0.0, -1.0}}; }
Mat2 j2() { return Mat2{{0.0, 1.0, 1.0, 0.0}}; }

Mat2 v_matrix(cdouble twoF, cdouble s) {
  // [[2F, -s^k],[-s^{-k}, 2F]]; |s|=1 so s^{-k} = conj(s^k)
  return Mat2{{twoF, -s, -std::conj(s), twoF}};
}

void require_off_dirichlet(const HillData& h) {
  if (std::abs(h.phi1) <= kPoleGuard) {
    std::ostringstream os;
    os << "monodromy matrix has a pole at lambda=" << h.lambda.real()
       << (h.lambda.imag() != 0.0 ? " (+imag)" : "")
       << " (Dirichlet spectrum); request the regularized form instead";
    throw pole_error(os.str());
  }
}

}  // namespace

TubeParams::TubeParams(int N_, int k_) : N(N_), k(k_) {
  if (N < 1) throw parse_error("TubeParams: N must be >= 1");
  if (k < 0 || k >= N) throw parse_error("TubeParams: k must lie in [0, N)");
  double x = M_PI * k / N;
  s = std::polar(1.0, 2.0 * x);
  s_k = std::sin(x);
  c_k = std::cos(x);
  s_2k = std::sin(2.0 * x);
}

Mat4 symplectic_form() {
  Mat2 z = Mat2::zero();
  Mat2 jj = j2();
  return Mat4::from_blocks(z, jj, jj * cdouble(-1.0), z);
}

Monodromy4 build_monodromy(const HillData& h, const TubeParams& p,
                           bool regularized) {
  const Mat2 I = Mat2::identity();
  const Mat2 Vk = v_matrix(2.0 * h.F, p.s);
  const Mat2 V0 = v_matrix(2.0 * h.F, cdouble(1.0));
  const Mat2 V0Vk_I = V0 * Vk - I;

  // Y·T_k blockwise
  Mat2 b11 = h.theta1 * Vk + V0Vk_I;
  Mat2 b12 = h.theta1 * I + V0;
  Mat2 b21 = (h.phi1 * h.theta1p) * Vk + h.phi1p * V0Vk_I;
  Mat2 b22 = (h.phi1 * h.theta1p) * I + h.phi1p * V0;

  if (regularized) return {Mat4::from_blocks(b11, b12, b21, b22), true};

  require_off_dirichlet(h);
  // conjugate back: M_k = R⁻¹ (Y T_k) R with R = diag(1,1,φ₁,φ₁)
  b12 = b12 * h.phi1;
  b21 = b21 * (1.0 / h.phi1);
  return {Mat4::from_blocks(b11, b12, b21, b22), false};
}

YFactors monodromy_y_factors(const HillData& h, const TubeParams& p) {
  require_off_dirichlet(h);
  const Mat2 I = Mat2::identity();
  const Mat2 Z = Mat2::zero();
  const cdouble inv_phi1 = 1.0 / h.phi1;

  Mat2 A0{{h.phi1p, -p.s, std::conj(p.s), -h.theta1}};
  Mat2 A1{{0.0, h.theta1, h.phi1p, 0.0}};
  Mat2 A2{{h.theta1, -1.0, -1.0, h.phi1p}};

  YFactors y;
  y.y0 = Mat4::from_blocks(I, Z, A0 * inv_phi1, j1());
  y.y1 = Mat4::from_blocks(A1 * j2(), h.phi1 * j1(), h.theta1p * j1(),
                           j2() * A1);
  y.y2 = Mat4::from_blocks(I, Z, A2 * inv_phi1, j1());
  y.y3 = Mat4::from_blocks(h.theta1 * I, h.phi1 * I, h.theta1p * I,
                           h.phi1p * I);
  return y;
}

Monodromy4 build_monodromy_oracle(const HillData& h, const TubeParams& p) {
  auto y = monodromy_y_factors(h, p);
  return {y.y3 * (y.y2 * (y.y1 * y.y0)), false};
}

double IdentityReport::max() const {
  double r = det;
  for (double v : {trace0, trace_k, trace0_sq, trace_k_sq, symplectic, oracle})
    r = std::max(r, v);
  return r;
}

IdentityReport verify_identities(const HillData& h, const TubeParams& p) {
  const Mat4 Mk = build_monodromy(h, p).m;
  const Mat4 M0 = build_monodromy(h, TubeParams(p.N, 0)).m;
  const Mat4 Mk_oracle = build_monodromy_oracle(h, p).m;

  IdentityReport rep;

  const double m_scale = std::max(1.0, Mk.max_abs());
  rep.det = std::abs(Mk.det() - 1.0) / (m_scale * m_scale * m_scale * m_scale);

  const cdouble tr0 = M0.trace();
  const cdouble trk = Mk.trace();
  const double sk2 = p.s_k * p.s_k;
  const double s2k2 = p.s_2k * p.s_2k;

  rep.trace0 =
      scaled_residual(tr0, 2.0 * (9.0 * h.F * h.F - h.Fm * h.Fm - 1.0));
  rep.trace_k = scaled_residual(trk, tr0 - 4.0 * sk2);

  const cdouble tr0_sq = (M0 * M0).trace();
  const cdouble trk_sq = (Mk * Mk).trace();
  rep.trace0_sq =
      scaled_residual(tr0_sq, 72.0 * h.F * h.F + 0.5 * tr0 * tr0 - 4.0);
  rep.trace_k_sq = scaled_residual(trk_sq, tr0_sq - 8.0 * sk2 * tr0 - 4.0 * s2k2);

  const Mat4 J = symplectic_form();
  rep.symplectic =
      (Mk.transpose() * J * Mk - J).max_abs() / (m_scale * m_scale);

  rep.oracle = (Mk - Mk_oracle).max_abs() /
               std::max({1.0, Mk.max_abs(), Mk_oracle.max_abs()});
  return rep;
}

}  // namespace armchair
