#pragma once

// Independent check of the Heun pipeline: direct adaptive integration of
//
//   u'' - 4iK sech(2Kx) u' + (E^2 - M^2 + 4EK sech(2Kx)) u = 0
//
// in x, plane-wave fits on the asymptotic tails, and finite-difference
// residuals of the second-order equation and of the first-order Dirac pair
//
//   -E u + i u' + i M conj(g) v = 0,   E v + i v' + i M g u = 0.

#include <vector>

#include "kinkheun/common.hpp"
#include "kinkheun/heun.hpp"
#include "kinkheun/soliton.hpp"

namespace kinkheun::oracle {

struct IntegrationConfig {
  double x_start = 0.0;
  double x_end = 1.0;
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double max_step = 0.05;
};

struct Sample {
  double x;
  cplx u;
  cplx du;
};

using Trajectory = std::vector<Sample>;

// Integrates from cfg.x_start with (u_init, du_init) and records the state at
// each of `sample_x` (which must lie between x_start and x_end; any order).
// Throws StepFailure when the step size drops below max_step / 2^10.
Trajectory integrate_u(const soliton::Background& bg, const soliton::SpectralPoint& sp, const IntegrationConfig& cfg,
                       cplx u_init, cplx du_init, const std::vector<double>& sample_x);

inline constexpr double kTailInner = 25.0;  // tail windows are |2Kx| in [inner, outer]
inline constexpr double kTailOuter = 35.0;
inline constexpr double kFitTolerance = 1e-4;

// u = A e^{ikx} + B e^{-ikx} on each tail. right: x > 0, left: x < 0.
struct TailFit {
  cplx right_plus, right_minus;
  cplx left_plus, left_minus;
  double residual;  // worst relative scatter of the per-sample amplitudes
};

// Throws FitError when a window holds no samples or the residual exceeds kFitTolerance.
TailFit fit_tails(const Trajectory& traj, const soliton::Background& bg, const soliton::SpectralPoint& sp);

struct OracleCoefficients {
  cplx c1, c2;
  double fit_residual;
};

// c1, c2 in the basis normalization used by the Wronskian matching: the
// right-tail e^{ikx} amplitude is scaled to that of the transmitted solution,
// and the left amplitudes are divided by the incident/reflected amplitudes.
OracleCoefficients extract_scattering(const Trajectory& traj, const soliton::Background& bg,
                                      const soliton::SpectralPoint& sp);

// Plane-wave start at x = +outer/(2|K|), integrated to -outer/(2|K|), tails sampled
// with `tail_samples` points per window.
OracleCoefficients oracle_coefficients(const soliton::Background& bg, const soliton::SpectralPoint& sp,
                                       double rel_tol = 1e-12, double abs_tol = 1e-14, int tail_samples = 41);

struct ResidualReport {
  double max_rel_residual = 0.0;
  double worst_x = 0.0;
  int samples = 0;
};

// Samples u_i, v_i at x_i = x_first + i h. Derivatives by 9-point central
// differences; interior points only (at least 9 samples). Each equation's residual is divided by
// the sum of the magnitudes of its terms.
ResidualReport residuals(double x_first, double h, const std::vector<cplx>& u, const std::vector<cplx>& v,
                         const soliton::Background& bg, const soliton::SpectralPoint& sp);

// Hl and dHl/dz by adaptive integration of the Heun equation itself along the
// straight segment from z_start * z/|z| to z, started from the three-term
// Frobenius polynomial at z_start. Independent of the Taylor re-expansion.
Jet heun_ode(const heun::Params& p, cplx z, double rel_tol = 1e-13, double abs_tol = 1e-15, double z_start = 1e-4);

}  // namespace kinkheun::oracle
