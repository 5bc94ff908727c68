#pragma once

// Bound states as zeros of c1 continued to k = i kappa, kappa = sqrt(M^2 - E^2),
// and the Levinson check against the phase-shift sweep.

#include <functional>
#include <vector>

#include "kinkheun/common.hpp"
#include "kinkheun/soliton.hpp"

namespace kinkheun::spectrum {

inline constexpr int kDefaultGridPoints = 512;
inline constexpr double kDefaultRootTol = 1e-6;
inline constexpr double kEdgeMargin = 1e-6;       // |E| within this fraction of M of M is rejected
inline constexpr double kCandidateRatio = 0.5;    // grid minima below this fraction of the median
inline constexpr double kZeroEnergyRatio = 1e-6;  // |E| below this fraction of M counts as the zero mode

// c1 at k = i kappa with the transmitted solution matched at x = 0.
cplx c1_bound_indicator(const soliton::Background& bg, double E, double tol = kDefaultTol);

struct BoundState {
  double E;
  double kappa;
  double residual;           // |c1| at the root
  double relative_residual;  // residual / median |c1| over the grid
  int index;                 // position in the E-sorted list
};

struct Root {
  double x;
  double residual;
  double relative_residual;
};

// Scan |f| on a uniform grid over [lo, hi], refine every local minimum below
// kCandidateRatio * median by golden section on |f|^2 followed by secant
// polish of the complex f, and keep roots with |f| < tol_root * median.
std::vector<Root> find_roots(const std::function<cplx(double)>& f, double lo, double hi, int grid_points,
                             double tol_root);

std::vector<BoundState> find_bound_states(const soliton::Background& bg, int grid_points = kDefaultGridPoints,
                                          double tol_root = kDefaultRootTol, double tol = kDefaultTol);

struct LevinsonReport {
  double delta_at_zero;
  double delta_at_infinity;
  int n_b;
  double discrepancy;  // |(delta_at_zero - delta_at_infinity) - pi (n_b - 1/2)|
};

// delta(0) from three-point Richardson extrapolation on k_min, 2k_min, 4k_min:
// (8 d(h) - 6 d(2h) + d(4h)) / 3.
double richardson_zero(double d1, double d2, double d4);

// Bound states with E > kZeroEnergyRatio * M (positive channel); E = 0 is not counted.
int count_positive_channel(const soliton::Background& bg, const std::vector<BoundState>& states);

LevinsonReport levinson_check(const soliton::Background& bg, double k_min, double k_max, int samples,
                              const std::vector<BoundState>& states, double tol = kDefaultTol);
LevinsonReport levinson_check(const soliton::Background& bg, double k_min, double k_max, int samples,
                              double tol = kDefaultTol);

}  // namespace kinkheun::spectrum
