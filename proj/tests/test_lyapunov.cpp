#include "doctest.h"

#include <cmath>
#include <random>

#include "armchair/lyapunov.hpp"
#include "armchair/roots.hpp"
#include "oracles.hpp"

using armchair::BranchTracker;
using armchair::cdouble;
using armchair::fundamental_solutions;
using armchair::lyapunov_eval;
using armchair::Potential;
using armchair::TubeParams;
using armchair::xi_rho;

namespace {
const double kPi = M_PI;
}

TEST_SUITE("lyapunov") {

TEST_CASE("xi, rho plug-in values") {
  // F = Fm = 0 at lambda = (pi/2)^2 for q = 0
  auto h = fundamental_solutions(Potential::zero(), kPi * kPi / 4.0);
  SUBCASE("k=1, N=4: xi = -1, rho = -1/4") {
    auto [xi, rho] = xi_rho(h, TubeParams(4, 1));
    CHECK(xi.real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(rho.real() == doctest::Approx(-0.25).epsilon(1e-12));
    auto d = lyapunov_eval(h, TubeParams(4, 1));
    // complex conjugate pair -1 ∓ i/2 (branch 1 takes the principal root)
    CHECK(d.f1.real() == doctest::Approx(-1.0));
    CHECK(std::abs(d.f1.imag()) == doctest::Approx(0.5));
    CHECK(d.f2 == std::conj(d.f1));
  }
  SUBCASE("k=0: rho = 9F^2") {
    auto hq = fundamental_solutions(Potential::parse("delta g=5 a=0.3"), 13.0);
    auto [xi, rho] = xi_rho(hq, TubeParams(4, 0));
    CHECK(rho == 9.0 * hq.F * hq.F);
    (void)xi;
  }
  SUBCASE("even q, N even, k=N/2: rho vanishes identically") {
    auto hq = fundamental_solutions(Potential::parse("delta g=10 a=0.5"), 13.0);
    auto [xi, rho] = xi_rho(hq, TubeParams(4, 2));
    CHECK(std::abs(rho) < 1e-9 * (1.0 + std::norm(xi)));
  }
}

TEST_CASE("vieta consistency of the branches") {
  auto q = Potential::parse("delta g=5 a=0.3");
  for (double lam : {-20.0, 3.0, 47.0, 180.0}) {
    for (int k = 0; k < 5; ++k) {
      auto h = fundamental_solutions(q, lam);
      auto d = lyapunov_eval(h, TubeParams(5, k));
      CHECK(std::abs(d.f1 + d.f2 - 2.0 * d.xi) <
            1e-9 * (1.0 + std::abs(d.xi)));
      CHECK(std::abs(d.f1 * d.f2 - (d.xi * d.xi - d.rho)) <
            1e-9 * (1.0 + std::norm(d.xi)));
    }
  }
}

TEST_CASE("real axis ordering: f1 >= f2 where rho > 0") {
  auto q = Potential::parse("delta g=10 a=0.5");
  for (double lam = 1.0; lam < 120.0; lam += 3.7) {
    auto d = lyapunov_eval(fundamental_solutions(q, lam), TubeParams(4, 1));
    if (d.rho.real() > 0.0) {
      CHECK(d.f1.imag() == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(d.f1.real() >= d.f2.real());
    }
  }
}

TEST_CASE("even-potential closed forms match as a pair") {
  auto q = Potential::parse("delta g=10 a=0.5");
  for (int N : {4, 5}) {
    for (int k = 0; k < N; ++k) {
      TubeParams p(N, k);
      for (double lam = 0.5; lam < 250.0; lam += 7.1) {
        auto h = fundamental_solutions(q, lam);
        auto closed = armchair::even_branch_pair(h.F.real(), p);
        if (!closed) continue;  // 9F^2 < s_k^2: complex zone
        auto d = lyapunov_eval(h, p);
        CHECK(d.f1.real() ==
              doctest::Approx(closed->first).epsilon(1e-8).scale(1.0));
        CHECK(d.f2.real() ==
              doctest::Approx(closed->second).epsilon(1e-8).scale(1.0));
      }
    }
  }
}

TEST_CASE("k=0 closed forms (3F±1)²/2 - 1 as a set") {
  auto q = Potential::parse("delta g=10 a=0.5");
  TubeParams p(4, 0);
  for (double lam = 0.5; lam < 250.0; lam += 3.3) {
    auto h = fundamental_solutions(q, lam);
    double F = h.F.real();
    double a = (3 * F + 1) * (3 * F + 1) / 2 - 1;
    double b = (3 * F - 1) * (3 * F - 1) / 2 - 1;
    auto d = lyapunov_eval(h, p);
    CHECK(d.f1.real() == doctest::Approx(std::max(a, b)).epsilon(1e-9));
    CHECK(d.f2.real() == doctest::Approx(std::min(a, b)).epsilon(1e-9));
  }
}

TEST_CASE("characteristic polynomial factorization") {
  auto q = Potential::parse("delta g=10 a=0.5");
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi), radius(0.5, 2.0);
  for (double lam : {7.0, 60.0, -15.0}) {
    auto h = fundamental_solutions(q, lam);
    for (int k = 0; k < 4; ++k) {
      TubeParams p(4, k);
      auto m = armchair::build_monodromy(h, p).m;
      auto d = lyapunov_eval(h, p);

      // tau = 0 reduces to the determinant identity
      CHECK(armchair::char_poly_residual(m, d, 0.0) < 1e-9);

      for (int trial = 0; trial < 20; ++trial) {
        cdouble tau = std::polar(trial % 2 ? radius(rng) : 1.0, angle(rng));
        CHECK(armchair::char_poly_residual(m, d, tau) < 1e-8);
      }

      // the multipliers of each branch are eigenvalues of the cell matrix
      for (cdouble f : {d.f1, d.f2}) {
        auto [tau, tau_inv] = armchair::branch_multipliers(f);
        CHECK(std::abs(tau * tau_inv - 1.0) < 1e-10);
        armchair::Mat4 shifted = m;
        for (int i = 0; i < 4; ++i) shifted(i, i) -= tau;
        double scale = std::pow(std::max(1.0, m.max_abs() + std::abs(tau)), 4);
        CHECK(std::abs(shifted.det()) / scale < 1e-8);
      }
    }
  }
}

TEST_CASE("branch tracking is direction independent away from branch points") {
  auto q = Potential::parse("delta g=5 a=0.3");
  TubeParams p(4, 1);
  const int n = 400;
  const double lo = 0.5, hi = 150.0;
  std::vector<cdouble> up_f1(n), up_f2(n), down_f1(n), down_f2(n);
  std::vector<double> rho(n);

  BranchTracker fwd;
  for (int i = 0; i < n; ++i) {
    double lam = lo + (hi - lo) * i / (n - 1);
    auto d = fwd.eval(fundamental_solutions(q, lam), p);
    up_f1[i] = d.f1;
    up_f2[i] = d.f2;
    rho[i] = d.rho.real();
  }
  BranchTracker bwd;
  for (int i = n - 1; i >= 0; --i) {
    double lam = lo + (hi - lo) * i / (n - 1);
    auto d = bwd.eval(fundamental_solutions(q, lam), p);
    down_f1[i] = d.f1;
    down_f2[i] = d.f2;
  }
  for (int i = 0; i < n; ++i) {
    if (std::abs(rho[i]) < 1e-6) continue;
    CHECK(std::abs(up_f1[i] - down_f1[i]) < 1e-8 * (1.0 + std::abs(up_f1[i])));
    CHECK(std::abs(up_f2[i] - down_f2[i]) < 1e-8 * (1.0 + std::abs(up_f2[i])));
  }
}

TEST_CASE("monotonicity inside bands") {
  // where f is inside (-1,1) and rho is not small, dF/dlambda stays nonzero
  auto q = Potential::parse("delta g=10 a=0.5");
  TubeParams p(4, 1);
  int checked = 0;
  for (double lam = 2.0; lam < 300.0 && checked < 60; lam += 1.7) {
    auto d = lyapunov_eval(fundamental_solutions(q, lam), p);
    if (std::abs(d.rho) < 1e-6) continue;
    if (d.rho.real() < 0.0) continue;
    for (int branch = 1; branch <= 2; ++branch) {
      double f = branch == 1 ? d.f1.real() : d.f2.real();
      if (std::abs(f) > 0.95) continue;
      auto fv = [&](double x) {
        auto dd = lyapunov_eval(fundamental_solutions(q, x), p);
        return branch == 1 ? dd.f1.real() : dd.f2.real();
      };
      double deriv = armchair::fd_derivative(fv, lam, 1e-6 * (1.0 + lam));
      CHECK(std::abs(deriv) > 1e-8 * (1.0 + std::abs(lam)));
      ++checked;
    }
  }
  CHECK(checked >= 40);
}

}  // TEST_SUITE
