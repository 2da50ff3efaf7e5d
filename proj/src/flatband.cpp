#include "armchair/flatband.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "armchair/errors.hpp"

namespace armchair {

namespace {

constexpr std::array<cdouble, 6> kZeroRow{};

HillData data_at_dirichlet(const Potential& q, double mu,
                           const OdeOptions& opts) {
  auto h = fundamental_solutions(q, mu, opts);
  double scale = 1.0 + std::abs(h.theta1) + std::abs(h.phi1p);
  if (std::abs(h.phi1) > 1e-6 * scale) {
    std::ostringstream os;
    os << "mu=" << mu << " is not a Dirichlet eigenvalue (|phi1| = "
       << std::abs(h.phi1) << ")";
    throw numerical_error(os.str());
  }
  return h;
}

bool is_case_b(int k, cdouble phi1p) {
  return k == 0 && std::abs(phi1p * phi1p - 1.0) <= 1e-10;
}

}  // namespace

EdgeTable translate(const EdgeTable& t, int n) {
  EdgeTable out;
  for (const auto& [m, row] : t) out[m + n] = row;
  return out;
}

EdgeTable add_scaled(EdgeTable acc, const EdgeTable& t, cdouble c) {
  for (const auto& [m, row] : t) {
    auto& dst = acc[m];
    for (int j = 0; j < 6; ++j) dst[j] += c * row[j];
  }
  return acc;
}

double table_distance(const EdgeTable& a, const EdgeTable& b) {
  double d = 0.0;
  auto scan = [&](const EdgeTable& x, const EdgeTable& y) {
    for (const auto& [m, row] : x) {
      auto it = y.find(m);
      const auto& other = it == y.end() ? kZeroRow : it->second;
      for (int j = 0; j < 6; ++j) d = std::max(d, std::abs(row[j] - other[j]));
    }
  };
  scan(a, b);
  scan(b, a);
  return d;
}

std::pair<FlatBandEigenfunction, FlatBandEigenfunction> build_psi(
    const Potential& q, double mu, const TubeParams& p,
    const OdeOptions& opts) {
  auto h = data_at_dirichlet(q, mu, opts);
  const cdouble P = h.phi1p;
  const cdouble S = p.s;
  const cdouble P2 = P * P, P3 = P2 * P, P4 = P2 * P2;

  FlatBandEigenfunction psi1, psi2;
  psi1.mu = psi2.mu = mu;
  psi1.k = psi2.k = p.k;
  psi1.kappa1 = psi2.kappa1 = 1.0 - S * P2;
  psi1.kappa2 = psi2.kappa2 = 1.0 - S * P4;
  psi1.case_b = psi2.case_b = is_case_b(p.k, P);

  if (!psi1.case_b) {
    psi1.coeffs[0] = {-S * P2, -S * P3, -1.0, -P, 0.0, psi1.kappa2};
    psi1.coeffs[1] = {S * P2, S * P3, S * P4, P, 0.0, 0.0};

    psi2.coeffs[-1] = {0.0, S * P, 0.0, 0.0, -S * P, S * P2};
    psi2.coeffs[0] = {0.0, -S * P, psi2.kappa1, P, S * P, -1.0};
    psi2.coeffs[1] = {0.0, 0.0, 0.0, -P, 0.0, 0.0};
  } else {
    psi1.coeffs[0] = {-P, 0.0, -P, -1.0, -1.0, P};
    psi1.coeffs[1] = {0.0, 0.0, 0.0, 1.0, 0.0, 0.0};

    psi2.coeffs[0] = {0.0, 1.0, 0.0, 0.0, -1.0, P};
    psi2.coeffs[1] = {0.0, 0.0, 0.0, 1.0, 0.0, 0.0};
  }
  return {psi1, psi2};
}

double kirchhoff_residual(const EdgeTable& f, const Potential& q, double mu,
                          const TubeParams& p, const OdeOptions& opts) {
  if (f.empty()) return 0.0;
  auto h = fundamental_solutions(q, mu, opts);
  const cdouble P = h.phi1p;   // φ'(1,μ)
  const cdouble E = h.phi1;    // φ(1,μ), ~0 at a Dirichlet eigenvalue
  const cdouble S = p.s;

  auto row = [&](int n) -> const std::array<cdouble, 6>& {
    auto it = f.find(n);
    return it == f.end() ? kZeroRow : it->second;
  };

  int lo = f.begin()->first - 1;
  int hi = f.rbegin()->first + 1;
  double res = 0.0;
  auto upd = [&](cdouble v) { res = std::max(res, std::abs(v)); };

  for (int n = lo; n <= hi; ++n) {
    const auto& c = row(n);
    const auto& cm = row(n - 1);
    // vertex values: edge starts are c·φ(0) = 0, edge ends are c·φ₁
    upd(c[0] * E);            // f_{n,1}(1) = f_{n,2}(0) = f_{n,5}(0) = 0
    upd(c[1] * E);            // f_{n,2}(1) = f_{n,3}(0) = f_{n,6}(0) = 0
    upd(c[2] * E);            // f_{n,3}(1) = f_{n,4}(0)
    upd(cm[5] * E);           //            = f_{n-1,6}(1)
    upd(S * c[3] * E);        // s^k f_{n,4}(1) = f_{n,1}(0)
    upd(cm[4] * E);           //                = f_{n-1,5}(1)
    // signed derivative sums
    upd(c[0] * P - c[1] - c[4]);
    upd(c[1] * P - c[2] - c[5]);
    upd(c[2] * P - c[3] + cm[5] * P);
    upd(S * c[3] * P - c[0] + cm[4] * P);
  }
  return res;
}

double vertex_value_residual(const EdgeTable& f, const Potential& q, double mu,
                             const OdeOptions& opts) {
  auto h = fundamental_solutions(q, mu, opts);
  double cmax = 0.0;
  for (const auto& [n, row] : f)
    for (const auto& v : row) cmax = std::max(cmax, std::abs(v));
  return cmax * std::abs(h.phi1);
}

namespace detail {

Decomposition decompose_with(const EdgeTable& f, cdouble s, cdouble phi1p,
                             bool case_b) {
  Decomposition d;
  if (f.empty()) return d;
  const cdouble P = phi1p;

  if (case_b) {
    for (const auto& [n, row] : f) {
      cdouble h1 = -P * row[0];
      cdouble h2 = row[1];
      if (std::abs(h1) > 0.0) d.hat1[n] = h1;
      if (std::abs(h2) > 0.0) d.hat2[n] = h2;
    }
    return d;
  }

  const cdouble kappa1 = 1.0 - s * P * P;
  const cdouble kappa2 = 1.0 - s * P * P * P * P;
  if (std::abs(kappa1 * kappa2 - 1.0) <=
      1e-12 * (1.0 + std::abs(kappa1 * kappa2)))
    throw degenerate_error(
        "decompose: kappa1*kappa2 = 1, the analysis denominators degenerate");

  // Exact inversion for finite support: edges 1 and 5 carry the pure
  // difference relations
  //   C_{n,1} = s P² (a_{n-1,1} - a_{n,1}),
  //   C_{n,5} = s P  (a_{n,2} - a_{n+1,2}),
  // so suffix sums recover the coefficients.
  int lo = f.begin()->first;
  int hi = f.rbegin()->first;
  auto row = [&](int n) -> const std::array<cdouble, 6>& {
    auto it = f.find(n);
    return it == f.end() ? kZeroRow : it->second;
  };

  double cscale = 0.0;
  for (const auto& [n, r] : f)
    for (const auto& v : r) cscale = std::max(cscale, std::abs(v));
  const double drop = 1e-13 * std::max(1.0, cscale);

  cdouble acc1 = 0.0;  // Σ_{m > n} C_{m,1}/(sP²)
  cdouble acc2 = 0.0;  // Σ_{m >= n+1} C_{m,5}/(sP)
  const cdouble inv1 = 1.0 / (s * P * P);
  const cdouble inv5 = 1.0 / (s * P);
  for (int n = hi; n >= lo - 2; --n) {
    acc1 += row(n + 1)[0] * inv1;
    acc2 += row(n + 1)[4] * inv5;
    cdouble a1 = acc1;
    cdouble a2 = acc2 + row(n)[4] * inv5;
    if (std::abs(a1) > drop) d.hat1[n] = a1;
    if (std::abs(a2) > drop) d.hat2[n] = a2;
  }
  return d;
}

}  // namespace detail

Decomposition decompose(const EdgeTable& f, const Potential& q, double mu,
                        const TubeParams& p, const OdeOptions& opts) {
  auto h = data_at_dirichlet(q, mu, opts);
  auto d = detail::decompose_with(f, p.s, h.phi1p, is_case_b(p.k, h.phi1p));
  auto [psi1, psi2] = build_psi(q, mu, p, opts);
  auto rec = reconstruct(d.hat1, d.hat2, psi1, psi2);
  double fscale = 0.0;
  for (const auto& [n, r] : f)
    for (const auto& v : r) fscale = std::max(fscale, std::abs(v));
  d.reconstruction_error = table_distance(f, rec) / std::max(1.0, fscale);
  return d;
}

EdgeTable reconstruct(const std::map<int, cdouble>& hat1,
                      const std::map<int, cdouble>& hat2,
                      const FlatBandEigenfunction& psi1,
                      const FlatBandEigenfunction& psi2) {
  EdgeTable out;
  for (const auto& [n, c] : hat1)
    out = add_scaled(std::move(out), translate(psi1.coeffs, n), c);
  for (const auto& [n, c] : hat2)
    out = add_scaled(std::move(out), translate(psi2.coeffs, n), c);
  return out;
}

}  // namespace armchair
