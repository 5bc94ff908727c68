#pragma once

// Sine-Gordon kink background and the four local spinor solutions built from
// local Heun functions.
//
// The upper spinor component obeys
//
//   u'' - 4iK sech(2Kx) u' + (E^2 - M^2 + 4EK sech(2Kx)) u = 0,
//
// and the lower one is v = (i/M) h(x) (E u - i u'), h = ((1+ie^{-2Kx})/(1-ie^{-2Kx}))^2.
//
// Two Moebius-related Heun arguments cover the real line:
//   U1 family: z = 1/(1 - i e^{2Kx}),  z -> 0 as 2Kx -> +inf
//   U2 family: z = 1/(1 + i e^{-2Kx}), z -> 0 as 2Kx -> -inf
// Each family has a plane-wave solution (FIRST, ~e^{ikx} where z -> 0) and a
// second solution (SECOND, ~e^{-ikx} where z -> 0).

#include <string_view>

#include "kinkheun/common.hpp"
#include "kinkheun/heun.hpp"

namespace kinkheun::soliton {

enum class Sign { kink, antikink };

class Background {
 public:
  Background(double M, Sign sign, double beta = 1.0);
  // Checked constructor: requires |K| == M.
  static Background from_scale(double M, double K, double beta = 1.0);

  double M() const { return M_; }
  double K() const { return K_; }
  double beta() const { return beta_; }
  Sign sign() const { return K_ > 0.0 ? Sign::kink : Sign::antikink; }

 private:
  double M_, K_, beta_;
};

enum class Branch { positive, negative };

// Energy and momentum tied by E^2 = M^2 + k^2. Scattering states have real k;
// bound-state candidates carry k = i kappa with kappa = sqrt(M^2 - E^2) > 0.
class SpectralPoint {
 public:
  static SpectralPoint scattering(const Background& bg, double k, Branch branch = Branch::positive);
  static SpectralPoint bound(const Background& bg, double E);

  double E() const { return E_; }
  cplx k() const { return k_; }
  bool is_bound() const { return k_.real() == 0.0 && k_.imag() > 0.0; }

 private:
  SpectralPoint(double E, cplx k) : E_(E), k_(k) {}
  double E_;
  cplx k_;
};

enum class Family { U1_FIRST, U1_SECOND, U2_FIRST, U2_SECOND };

std::string_view to_string(Family f);
bool is_u1(Family f);
bool is_first(Family f);

// Gauge exponents of f(z) = z^mu (z-1)^nu (z-a)^sigma; sigma = 0, mu = -nu.
struct FrameExponents {
  cplx mu, nu, sigma;
};

class LocalSolution {
 public:
  Family family() const { return family_; }
  const heun::Params& params() const { return params_; }
  const FrameExponents& exponents() const { return exponents_; }
  const Background& background() const { return bg_; }
  const SpectralPoint& spectral() const { return sp_; }

  // C such that u -> C e^{+ikx} (FIRST) or C e^{-ikx} (SECOND) on the side where z -> 0.
  cplx asymptotic_amplitude() const;

 private:
  friend LocalSolution build_solution(Family, const Background&, const SpectralPoint&);
  LocalSolution(Family f, heun::Params p, FrameExponents e, Background bg, SpectralPoint sp)
      : family_(f), params_(p), exponents_(e), bg_(bg), sp_(sp) {}

  Family family_;
  heun::Params params_;  // parameters of the Hl factor that is actually evaluated
  FrameExponents exponents_;
  Background bg_;
  SpectralPoint sp_;
};

// phi(x) = -(2/beta) arctan(e^{2Kx}).
double kink_profile(const Background& bg, double x);

// Topological charge (beta/2pi)(phi(+inf) - phi(-inf)) in the kink/antikink convention (+-1/2).
double topological_charge(const Background& bg);

// Dirac coupling g(x) = e^{2i beta phi} in the form the static equations use,
// g = -((1+ie^{-2Kx})/(1-ie^{-2Kx}))^2; the equation for u carries conj(g).
cplx dirac_coupling(const Background& bg, double x);

cplx map_to_z(Family family, const Background& bg, double x);
// dz/dx for the family's map.
cplx dz_dx(Family family, const Background& bg, double x);

LocalSolution build_solution(Family family, const Background& bg, const SpectralPoint& sp);

// Upper component u(x) and du/dx.
Jet eval_u(const LocalSolution& sol, double x, double tol);

// Lower component from (u, u') at x: v = (i/M) h(x) (E u - i u').
cplx eval_v(const Background& bg, const SpectralPoint& sp, double x, const Jet& u);
cplx eval_v(const LocalSolution& sol, double x, double tol);

// Same lower component written through the Heun argument of `family`:
//   v = (iE u +/- 2K z(z-1) du/dz) / (4M (z-1/2)^2)   (+ for U1, - for U2)
// which must agree with eval_v.
cplx eval_v_z(Family family, const Background& bg, const SpectralPoint& sp, cplx z, cplx u, cplx du_dz);

}  // namespace kinkheun::soliton
