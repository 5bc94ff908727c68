#pragma once

// Wronskian matching of the transmitted solution against the left-side
// incident/reflected pair, and the scattering quantities derived from it.
//
// On the transmitted side (x -> +inf) the solution is a pure plane wave T.
// On the left it is c1 L1 + c2 L2 with L1 ~ e^{ikx} and L2 ~ e^{-ikx}:
//
//   c1 = W(T, L2)/W(L1, L2),   c2 = -W(T, L1)/W(L1, L2)   at x = x0.
//
// Kink (K > 0): T = U1_FIRST, L1 = U2_FIRST, L2 = U2_SECOND.
// Antikink (K < 0): the families swap roles, T = U2_FIRST, L1 = U1_FIRST, L2 = U1_SECOND.

#include <vector>

#include "kinkheun/common.hpp"
#include "kinkheun/soliton.hpp"

namespace kinkheun::scattering {

inline constexpr double kDefaultKMin = 1e-3;
inline constexpr double kDegenerateRatio = 1e-10;

// W(f, g) = f g' - g f'.
cplx wronskian(const Jet& f, const Jet& g);

struct Basis {
  soliton::LocalSolution transmitted;
  soliton::LocalSolution incident;
  soliton::LocalSolution reflected;
};

Basis matching_basis(const soliton::Background& bg, const soliton::SpectralPoint& sp);

// W(L1, L2) at x0 from Abel's identity for the u-equation:
//   W(x) = 2ik C1 C2 exp(2i gd(2Kx)),  gd(y) = arctan(sinh y),
// with C1, C2 the asymptotic amplitudes of L1, L2. Exact, and finite where
// the series for L1 is not (gamma -> 0 at E = 0 on the bound-state line).
cplx abel_wronskian(const soliton::Background& bg, const soliton::SpectralPoint& sp, double x0);

struct ScatteringData {
  cplx c1, c2;
  cplx t;        // transmitted amplitude relative to a unit incident wave
  cplx r;        // reflected amplitude, flux-normalized
  double delta;  // -arg c1
  double x0;
};

// Transmission and reflection probabilities |t|^2, |r|^2.
double transmission(const ScatteringData& d);
double reflection(const ScatteringData& d);

// Real k only, with |k|/|K| >= k_min.
ScatteringData match_coefficients(const soliton::Background& bg, const soliton::SpectralPoint& sp,
                                  double x0 = 0.0, double tol = kDefaultTol, double k_min = kDefaultKMin);

// The matched spinor: T for x >= x0 and c1 L1 + c2 L2 for x < x0. The two
// representations can be queried separately on the overlap.
class MatchedWave {
 public:
  MatchedWave(const soliton::Background& bg, const soliton::SpectralPoint& sp, double x0 = 0.0,
              double tol = kDefaultTol);

  const ScatteringData& data() const { return data_; }
  const Basis& basis() const { return basis_; }

  Jet right_u(double x) const;
  Jet left_u(double x) const;
  Jet incident_u(double x) const;   // c1 L1
  Jet reflected_u(double x) const;  // c2 L2
  Jet u(double x) const { return x >= data_.x0 ? right_u(x) : left_u(x); }

  cplx v_of(double x, const Jet& u) const;
  cplx v(double x) const { return v_of(x, u(x)); }

 private:
  soliton::Background bg_;
  soliton::SpectralPoint sp_;
  Basis basis_;
  ScatteringData data_;
  double tol_;
};

struct PhaseShift {
  double delta_u;
  double delta_v;
};

// Both components acquire the same phase, -arg c1 (principal value).
PhaseShift phase_shift(const soliton::Background& bg, double k, double tol = kDefaultTol);

struct SweepPoint {
  double k;
  double E;
  ScatteringData data;  // data.delta is unwrapped
};

// Scattering data at each k (sorted ascending on output). delta is unwrapped by
// nearest-branch continuation from the largest k, whose principal value is
// kept. Where neighbouring samples still differ by >= pi/2 the interval is
// bisected (up to max_refine levels) and the refined samples are kept.
std::vector<SweepPoint> sweep(const soliton::Background& bg, std::vector<double> ks,
                              soliton::Branch branch = soliton::Branch::positive, double tol = kDefaultTol,
                              int max_refine = 8);

// n log-spaced values in [k_min, k_max].
std::vector<double> log_grid(double k_min, double k_max, int n);

}  // namespace kinkheun::scattering
