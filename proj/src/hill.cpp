#include "armchair/hill.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>

#include "armchair/errors.hpp"
#include "armchair/roots.hpp"

namespace armchair {

namespace {

namespace ode = boost::numeric::odeint;

double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
  return acc;
}

const std::vector<double>& segment_coeffs(const Potential& q, double t) {
  for (const auto& s : q.segments())
    if (t >= s.t_lo - 1e-14 && t <= s.t_hi + 1e-14) return s.coeffs;
  return q.segments().back().coeffs;
}

// Integrates y over [a,b] with the density of the covering segment.
// State layout is caller-defined; the rhs closure maps it.
template <class State, class Rhs>
void integrate_interval(Rhs& rhs, State& y, double a, double b,
                        double dt_max, const OdeOptions& opts) {
  auto ctrl = ode::make_controlled(opts.abs_tol, opts.rel_tol,
                                   ode::runge_kutta_fehlberg78<State>());
  double t = a;
  double dt = std::min(dt_max, b - a);
  long steps = 0, rejects = 0;
  const double t_end = b - 1e-15 * (1.0 + std::abs(b));
  while (t < t_end) {
    if (dt > b - t) dt = b - t;
    auto res = ctrl.try_step(rhs, y, t, dt);
    if (res == ode::fail) {
      if (dt < 1e-14 * (1.0 + std::abs(b)) || ++rejects > 1000000) {
        std::ostringstream os;
        os << "integration step underflow at t=" << t;
        throw numerical_error(os.str());
      }
      continue;
    }
    if (++steps > 2000000)
      throw numerical_error("integration step limit exceeded");
    if (dt > dt_max) dt = dt_max;
  }
}

double max_step_for(cdouble lambda) {
  double z = std::sqrt(std::abs(lambda));
  return 0.5 / std::max(1.0, z);
}

}  // namespace

double wronskian_residual(const HillData& h) {
  cdouble w = h.theta1 * h.phi1p - h.theta1p * h.phi1;
  double scale = std::max(1.0, std::abs(h.theta1 * h.phi1p) +
                                   std::abs(h.theta1p * h.phi1));
  return std::abs(w - 1.0) / scale;
}

HillData fundamental_solutions(const Potential& q, cdouble lambda,
                               const OdeOptions& opts) {
  using state_t = std::array<cdouble, 4>;  // θ, θ', φ, φ'
  state_t y{1.0, 0.0, 0.0, 1.0};
  const double dt_max = max_step_for(lambda);
  auto bps = q.breakpoints();
  for (size_t i = 0; i + 1 < bps.size(); ++i) {
    double a = bps[i], b = bps[i + 1];
    const auto& coeffs = segment_coeffs(q, 0.5 * (a + b));
    auto rhs = [&](const state_t& s, state_t& ds, double t) {
      cdouble w = horner(coeffs, t) - lambda;
      ds[0] = s[1];
      ds[1] = w * s[0];
      ds[2] = s[3];
      ds[3] = w * s[2];
    };
    integrate_interval(rhs, y, a, b, dt_max, opts);
    for (const auto& d : q.deltas())
      if (std::abs(d.a - b) <= 1e-12 && b < 1.0 - 1e-12) {
        y[1] += d.g * y[0];
        y[3] += d.g * y[2];
      }
  }
  HillData h;
  h.lambda = lambda;
  h.theta1 = y[0];
  h.theta1p = y[1];
  h.phi1 = y[2];
  h.phi1p = y[3];
  h.F = 0.5 * (h.phi1p + h.theta1);
  h.Fm = 0.5 * (h.phi1p - h.theta1);
  return h;
}

double phi_l2_norm_sq(const Potential& q, double mu, const OdeOptions& opts) {
  using state_t = std::array<cdouble, 3>;  // φ, φ', ∫φ²
  state_t y{0.0, 1.0, 0.0};
  const double dt_max = max_step_for(mu);
  auto bps = q.breakpoints();
  for (size_t i = 0; i + 1 < bps.size(); ++i) {
    double a = bps[i], b = bps[i + 1];
    const auto& coeffs = segment_coeffs(q, 0.5 * (a + b));
    auto rhs = [&](const state_t& s, state_t& ds, double t) {
      ds[0] = s[1];
      ds[1] = (horner(coeffs, t) - mu) * s[0];
      ds[2] = s[0] * s[0];
    };
    integrate_interval(rhs, y, a, b, dt_max, opts);
    for (const auto& d : q.deltas())
      if (std::abs(d.a - b) <= 1e-12 && b < 1.0 - 1e-12) y[1] += d.g * y[0];
  }
  return y[2].real();
}

int phi_oscillation_count(const Potential& q, double lambda,
                          const OdeOptions& opts) {
  using state_t = std::array<cdouble, 2>;  // φ, φ'
  state_t y{0.0, 1.0};
  const double dt_max = max_step_for(lambda);
  int count = 0;
  int prev_sign = 0;  // φ(0) = 0
  auto bps = q.breakpoints();
  for (size_t i = 0; i + 1 < bps.size(); ++i) {
    double a = bps[i], b = bps[i + 1];
    const auto& coeffs = segment_coeffs(q, 0.5 * (a + b));
    auto rhs = [&](const state_t& s, state_t& ds, double t) {
      ds[0] = s[1];
      ds[1] = (horner(coeffs, t) - lambda) * s[0];
    };
    // manual stepping so every accepted step can update the sign count
    auto ctrl = ode::make_controlled(opts.abs_tol, opts.rel_tol,
                                     ode::runge_kutta_fehlberg78<state_t>());
    double t = a;
    double dt = std::min(dt_max, b - a);
    const double t_end = b - 1e-15 * (1.0 + std::abs(b));
    long guard = 0;
    while (t < t_end) {
      if (dt > b - t) dt = b - t;
      if (ctrl.try_step(rhs, y, t, dt) == ode::fail) {
        if (dt < 1e-14 || ++guard > 1000000)
          throw numerical_error("oscillation count: step underflow");
        continue;
      }
      double v = y[0].real();
      int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
      if (s != 0) {
        if (prev_sign != 0 && s != prev_sign) ++count;
        prev_sign = s;
      }
      if (dt > dt_max) dt = dt_max;
      if (++guard > 2000000)
        throw numerical_error("oscillation count: step limit exceeded");
    }
    for (const auto& d : q.deltas())
      if (std::abs(d.a - b) <= 1e-12 && b < 1.0 - 1e-12) y[1] += d.g * y[0];
  }
  return count;
}

namespace {

std::vector<double> simple_zero_scan(
    const Potential& q, double lambda_max,
    const std::function<double(double)>& value, double z_step) {
  double lo = q.lower_spectral_bound();
  if (lambda_max <= lo) return {};
  auto grid = oscillation_grid(lo, lambda_max, z_step);
  auto hits = find_real_roots(value, grid);
  std::vector<double> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(h.x);
  return out;
}

}  // namespace

std::vector<double> dirichlet_eigenvalues(const Potential& q,
                                          double lambda_max,
                                          const OdeOptions& opts) {
  auto value = [&](double lam) {
    return fundamental_solutions(q, lam, opts).phi1.real();
  };
  for (double z_step : {0.125, 0.03125}) {
    auto roots = simple_zero_scan(q, lambda_max, value, z_step);
    int osc = phi_oscillation_count(q, lambda_max, opts);
    int m = static_cast<int>(roots.size());
    bool boundary = !roots.empty() &&
                    lambda_max - roots.back() <=
                        1e-6 * (1.0 + std::abs(lambda_max));
    if (osc == m || (boundary && osc == m - 1)) return roots;
  }
  throw numerical_error(
      "dirichlet_eigenvalues: root count disagrees with oscillation count");
}

std::vector<double> neumann_eigenvalues(const Potential& q, double lambda_max,
                                        const OdeOptions& opts) {
  auto value = [&](double lam) {
    return fundamental_solutions(q, lam, opts).theta1p.real();
  };
  auto roots = simple_zero_scan(q, lambda_max, value, 0.125);
  auto check = simple_zero_scan(q, lambda_max, value, 0.0625);
  if (roots.size() != check.size())
    throw numerical_error(
        "neumann_eigenvalues: count unstable under grid refinement");
  return roots;
}

std::vector<HillEdge> hill_band_edges(const Potential& q, double lambda_max,
                                      const OdeOptions& opts) {
  double lo = q.lower_spectral_bound();
  if (lambda_max <= lo) return {};
  auto grid = oscillation_grid(lo, lambda_max);
  auto F = [&](double lam) {
    return fundamental_solutions(q, lam, opts).F.real();
  };
  RootScanOptions sopts;
  sopts.detect_double = true;
  auto plus = find_real_roots([&](double x) { return F(x) - 1.0; }, grid, sopts);
  auto minus = find_real_roots([&](double x) { return F(x) + 1.0; }, grid, sopts);

  struct Event {
    double x;
    int level;  // +1 or -1
  };
  std::vector<Event> ev;
  for (const auto& r : plus)
    for (int m = 0; m < r.multiplicity; ++m) ev.push_back({r.x, +1});
  for (const auto& r : minus)
    for (int m = 0; m < r.multiplicity; ++m) ev.push_back({r.x, -1});
  std::stable_sort(ev.begin(), ev.end(),
                   [](const Event& a, const Event& b) { return a.x < b.x; });

  std::vector<HillEdge> edges;
  if (ev.empty()) return edges;
  if (ev.front().level != +1)
    throw numerical_error("band edges: lowest F=±1 solution is not F=+1");
  edges.push_back({ev.front().x, 0, true, true});
  size_t i = 1;
  int n = 1;
  while (i < ev.size()) {
    int want = (n % 2 == 0) ? +1 : -1;
    if (ev[i].level != want)
      throw numerical_error("band edges: interlacing pattern violated");
    edges.push_back({ev[i].x, n, false, n % 2 == 0});
    ++i;
    if (i < ev.size()) {
      if (ev[i].level != want)
        throw numerical_error("band edges: gap edge pair mismatched");
      edges.push_back({ev[i].x, n, true, n % 2 == 0});
      ++i;
    }
    ++n;
  }
  return edges;
}

std::vector<std::pair<double, double>> hill_bands(
    const std::vector<HillEdge>& edges, double lambda_max) {
  std::vector<std::pair<double, double>> bands;
  double open = 0.0;
  bool in_band = false;
  for (const auto& e : edges) {
    if (e.upper) {
      open = e.lambda;
      in_band = true;
    } else if (in_band) {
      bands.emplace_back(open, e.lambda);
      in_band = false;
    }
  }
  if (in_band && open < lambda_max) bands.emplace_back(open, lambda_max);
  return bands;
}

}  // namespace armchair
