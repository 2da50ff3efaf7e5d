#pragma once

// Test-side helpers for the flat-band eigenspace: Gram matrices of
// generator translates and their extreme eigenvalues (cyclic Jacobi on the
// realified Hermitian form).

#include <cmath>
#include <utility>
#include <vector>

#include "armchair/flatband.hpp"

namespace gramtest {

using armchair::cdouble;
using armchair::EdgeTable;

inline std::vector<EdgeTable> translates(const armchair::FlatBandEigenfunction& psi1,
                                         const armchair::FlatBandEigenfunction& psi2,
                                         int window) {
  std::vector<EdgeTable> basis;
  for (int n = -window; n <= window; ++n) {
    basis.push_back(armchair::translate(psi1.coeffs, n));
    basis.push_back(armchair::translate(psi2.coeffs, n));
  }
  return basis;
}

// Smallest and largest eigenvalue of the Gram matrix of the given tables in
// L²(Γ¹); every edge carries a multiple of the same φ(·,μ), so entries are
// coefficient dot products times ||φ||².
inline std::pair<double, double> gram_extremes(
    const std::vector<EdgeTable>& basis, double phi_norm_sq) {
  const int dim = static_cast<int>(basis.size());
  std::vector<std::vector<cdouble>> gram(dim, std::vector<cdouble>(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      cdouble acc = 0.0;
      for (const auto& [cell, row] : basis[i]) {
        auto it = basis[j].find(cell);
        if (it == basis[j].end()) continue;
        for (int e = 0; e < 6; ++e) acc += std::conj(row[e]) * it->second[e];
      }
      gram[i][j] = acc * phi_norm_sq;
    }

  // realify: hermitian G -> symmetric [[Re, -Im],[Im, Re]] (eigenvalues
  // doubled in multiplicity, extremes unchanged)
  const int rd = 2 * dim;
  std::vector<std::vector<double>> a(rd, std::vector<double>(rd, 0.0));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      a[i][j] = gram[i][j].real();
      a[i][j + dim] = -gram[i][j].imag();
      a[i + dim][j] = gram[i][j].imag();
      a[i + dim][j + dim] = gram[i][j].real();
    }

  for (int sweep = 0; sweep < 40; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < rd; ++p)
      for (int q = p + 1; q < rd; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-22) break;
    for (int p = 0; p < rd; ++p)
      for (int q = p + 1; q < rd; ++q) {
        if (std::abs(a[p][q]) < 1e-18) continue;
        double theta = 0.5 * std::atan2(2 * a[p][q], a[q][q] - a[p][p]);
        double c = std::cos(theta), s = std::sin(theta);
        for (int r = 0; r < rd; ++r) {
          double x = a[r][p], y = a[r][q];
          a[r][p] = c * x - s * y;
          a[r][q] = s * x + c * y;
        }
        for (int r = 0; r < rd; ++r) {
          double x = a[p][r], y = a[q][r];
          a[p][r] = c * x - s * y;
          a[q][r] = s * x + c * y;
        }
      }
  }
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i < rd; ++i) {
    lo = std::min(lo, a[i][i]);
    hi = std::max(hi, a[i][i]);
  }
  return {lo, hi};
}

}  // namespace gramtest
