#pragma once

#include <string>
#include <vector>

namespace armchair {

// One polynomial piece of the edge-potential density: q(t) = Σ c_i t^i
// on [t_lo, t_hi), with t the global coordinate on [0,1].
struct PolySegment {
  double t_lo = 0.0;
  double t_hi = 1.0;
  std::vector<double> coeffs;  // empty or all-zero means the zero density
};

// Point interaction g·δ(t − a): the derivative of a solution jumps by
// g·y(a) across t = a.
struct DeltaTerm {
  double g = 0.0;
  double a = 0.5;
};

// Edge potential: piecewise-polynomial density on [0,1] plus finitely many
// delta terms. Immutable after construction; safe to share across threads.
//
// Text grammar (one directive per line, ';' also accepted as a separator,
// '#' starts a comment):
//   zero
//   poly [t_lo,t_hi] c0 c1 ... cn
//   delta g=<real> a=<real>
//   delta_family v=<real> eps=<real> k=<int> N=<int>
class Potential {
 public:
  static Potential zero();
  static Potential parse(const std::string& text);

  // Single delta of coupling 1/v at a = 1/2 + cos(πk/N)·eps + eps².
  static Potential delta_family(double v, double eps, int k, int N);

  // Direct construction; validates the segment/delta invariants.
  Potential(std::vector<PolySegment> segments, std::vector<DeltaTerm> deltas);

  const std::vector<PolySegment>& segments() const { return segments_; }
  const std::vector<DeltaTerm>& deltas() const { return deltas_; }

  double density(double t) const;

  // q(t) == q(1-t): mirrored density pieces and delta pairs (g,a)/(g,1-a).
  bool is_even(double tol = 1e-12) const;

  // Sorted breakpoints of [0,1]: segment bounds plus delta positions.
  std::vector<double> breakpoints() const;

  // Upper bound for sup |density| (coefficient-sum bound, t in [0,1]).
  double density_bound() const;
  // Σ|g| over delta terms.
  double total_coupling() const;
  // Crude lower bound for the Hill / Dirichlet / Neumann spectrum; scans for
  // real eigenvalue problems start below this.
  double lower_spectral_bound() const;

  std::string serialize() const;
  std::string to_json() const;
  static Potential from_json(const std::string& json_text);

  bool operator==(const Potential& o) const;

 private:
  Potential() = default;
  void validate() const;

  std::vector<PolySegment> segments_;
  std::vector<DeltaTerm> deltas_;
};

}  // namespace armchair
