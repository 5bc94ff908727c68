#pragma once

// Local Heun function Hl(a, q; alpha, beta, gamma, delta; z).
//
// The function is the solution of
//
//   H'' + (gamma/z + delta/(z-1) + epsilon/(z-a)) H' + (alpha beta z - q)/(z(z-1)(z-a)) H = 0
//
// analytic at z = 0 with H(0) = 1. Inside |z| < min(|a|, 1) it is summed from
// its power series; elsewhere it is continued along a path by re-expanding the
// ODE solution in local Taylor series. Fractional powers use the principal
// branch and the continuation refuses to cross the cuts [s, s*inf) for the
// finite singular points s in {1, a}.

#include <vector>

#include "kinkheun/common.hpp"

namespace kinkheun::heun {

inline constexpr int kMaxTerms = 10000;
inline constexpr double kDiskMargin = 0.9;
inline constexpr double kDefaultGammaGuard = 1e-8;

class Params {
 public:
  // epsilon is derived from the Fuchs relation alpha + beta + 1 = gamma + delta + epsilon.
  Params(cplx a, cplx q, cplx alpha, cplx beta, cplx gamma, cplx delta);

  cplx a() const { return a_; }
  cplx q() const { return q_; }
  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }
  cplx gamma() const { return gamma_; }
  cplx delta() const { return delta_; }
  cplx epsilon() const { return epsilon_; }

  // min(|a|, 1): radius of the series disk around z = 0.
  double convergence_radius() const;

  // Parameters of the Hl factor in the second local solution z^{1-gamma} Hl(...).
  Params second_solution_params() const;

 private:
  cplx a_, q_, alpha_, beta_, gamma_, delta_, epsilon_;
};

struct RecurrenceCoeffs {
  cplx R, P, Q;
};

// R_n = (n+alpha)(n+beta), P_n = -q - n(n-1+gamma)(1+a) - n(a delta + epsilon),
// Q_n = a n (n-1+gamma). Coefficients obey R_{n-1}h_{n-1} + P_n h_n + Q_{n+1}h_{n+1} = 0.
RecurrenceCoeffs recurrence_coeffs(const Params& p, int n);

struct SeriesState {
  std::vector<cplx> coefficients;  // h_0 .. h_{n_used-1}
  int n_used = 0;
  bool truncated = false;          // series terminated as a polynomial
};

struct SeriesResult {
  cplx value;
  cplx deriv;
  SeriesState state;
};

// Power series of Hl and its z-derivative. Refuses |z| > 0.9 min(|a|,1).
SeriesResult series(const Params& p, cplx z, double tol);

// z^{1-gamma} Hl(second_solution_params; z) and its z-derivative.
Jet second_solution(const Params& p, cplx z, double tol, double gamma_guard = kDefaultGammaGuard);

struct ContinuationPath {
  std::vector<cplx> waypoints;  // first inside the series disk, last is the target
  double min_singularity_distance = 0.1;
};

// Straight segment from a point on the disk toward the target when it clears
// the singular points by `clearance`, otherwise a two-segment detour through a
// perpendicular offset point on the target's side of the real axis.
ContinuationPath default_path(const Params& p, cplx z_target, double clearance = 0.1);

// Throws PathError when a segment comes closer than min_singularity_distance
// to {0, 1, a} or crosses a branch cut.
void validate_path(const Params& p, const ContinuationPath& path);

Jet continue_to(const Params& p, cplx z_target, const ContinuationPath& path, double tol);

// Series inside the disk, default-path continuation outside.
Jet evaluate(const Params& p, cplx z, double tol);

}  // namespace kinkheun::heun
