#include "kinkheun/soliton.hpp"

#include <cmath>

namespace kinkheun::soliton {

namespace {

// Beyond this |2Kx| the exponentials e^{+-2Kx} over/underflow.
constexpr double kExpGuard = 700.0;

// (1 + i s)/(1 - i s) with s = e^{-2Kx}, evaluated without overflow.
cplx mobius_ratio(double two_kx) {
  if (two_kx < 0.0) {
    const double inv = two_kx < -kExpGuard ? 0.0 : std::exp(two_kx);  // 1/s
    return (inv + I) / (inv - I);
  }
  const double s = std::exp(-two_kx);
  return (1.0 + I * s) / (1.0 - I * s);
}

// log(i + e^{y}) and log(1 - i e^{y}) on the principal branch, without overflow.
cplx log_i_plus_exp(double y) {
  if (y > 0.0) return y + std::log(1.0 + I * std::exp(-y));
  return std::log(I + std::exp(y));
}

cplx log_one_minus_i_exp(double y) {
  if (y > 0.0) return y + std::log(std::exp(-y) - I);
  return std::log(1.0 - I * std::exp(y));
}

// 1/(1 + i e^{-y}) and 1/(e^{-y} - i), both bounded for all real y.
cplx inv_one_plus_i_expm(double y) {
  if (y < -kExpGuard) return 0.0;
  return 1.0 / (1.0 + I * std::exp(-y));
}

cplx inv_expm_minus_i(double y) {
  if (y < -kExpGuard) return 0.0;
  return 1.0 / (std::exp(-y) - I);
}

bool near_nonpositive_integer(cplx x, double guard) {
  const double n = std::round(x.real());
  return n <= 0.0 && std::abs(x - n) < guard;
}

}  // namespace

Background::Background(double M, Sign sign, double beta)
    : M_(M), K_(sign == Sign::kink ? M : -M), beta_(beta) {
  if (!(M > 0.0) || !std::isfinite(M)) throw DomainError("fermion mass M must be positive and finite");
  if (beta == 0.0 || !std::isfinite(beta)) throw DomainError("coupling beta must be nonzero and finite");
}

Background Background::from_scale(double M, double K, double beta) {
  if (std::abs(K) != M) throw DomainError("kink scale must satisfy |K| == M");
  return Background(M, K > 0.0 ? Sign::kink : Sign::antikink, beta);
}

SpectralPoint SpectralPoint::scattering(const Background& bg, double k, Branch branch) {
  if (!std::isfinite(k)) throw DomainError("momentum must be finite");
  const double E = std::hypot(bg.M(), k);
  return {branch == Branch::positive ? E : -E, cplx{k, 0.0}};
}

SpectralPoint SpectralPoint::bound(const Background& bg, double E) {
  if (!(std::abs(E) < bg.M())) throw DomainError("bound-state energy must satisfy |E| < M");
  const double kappa = std::sqrt((bg.M() - E) * (bg.M() + E));
  return {E, cplx{0.0, kappa}};
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::U1_FIRST: return "U1_FIRST";
    case Family::U1_SECOND: return "U1_SECOND";
    case Family::U2_FIRST: return "U2_FIRST";
    case Family::U2_SECOND: return "U2_SECOND";
  }
  return "?";
}

bool is_u1(Family f) { return f == Family::U1_FIRST || f == Family::U1_SECOND; }
bool is_first(Family f) { return f == Family::U1_FIRST || f == Family::U2_FIRST; }

cplx LocalSolution::asymptotic_amplitude() const {
  const cplx ratio = kPi * sp_.k() / bg_.K();
  switch (family_) {
    case Family::U1_FIRST: return std::exp(ratio / 4.0);
    case Family::U1_SECOND: return std::exp(-ratio / 4.0);
    case Family::U2_FIRST: return std::exp(-ratio / 4.0);
    case Family::U2_SECOND: return std::exp(-ratio);
  }
  return 0.0;
}

double kink_profile(const Background& bg, double x) {
  return -2.0 / bg.beta() * std::atan(std::exp(2.0 * bg.K() * x));
}

double topological_charge(const Background& bg) {
  // The charge of a configuration is read off the profile of opposite K sign.
  const double half_turn = kPi / bg.beta();
  const double jump = bg.K() > 0.0 ? half_turn : -half_turn;  // phi_{-K}(+inf) - phi_{-K}(-inf)
  return bg.beta() / (2.0 * kPi) * jump;
}

cplx dirac_coupling(const Background& bg, double x) {
  const cplx r = mobius_ratio(2.0 * bg.K() * x);
  return -(r * r);
}

cplx map_to_z(Family family, const Background& bg, double x) {
  const double y = 2.0 * bg.K() * x;
  if (is_u1(family)) {
    if (y > kExpGuard) return 0.0;
    if (y < -kExpGuard) return 1.0;
    return 1.0 / (1.0 - I * std::exp(y));
  }
  if (y < -kExpGuard) return 0.0;
  if (y > kExpGuard) return 1.0;
  return 1.0 / (1.0 + I * std::exp(-y));
}

cplx dz_dx(Family family, const Background& bg, double x) {
  const cplx z = map_to_z(family, bg, x);
  const double sign = is_u1(family) ? 1.0 : -1.0;
  return sign * 2.0 * bg.K() * z * (z - 1.0);
}

LocalSolution build_solution(Family family, const Background& bg, const SpectralPoint& sp) {
  const cplx k = sp.k();
  const double K = bg.K();
  const double E = sp.E();
  const cplx r = k / K;
  if (std::abs(r) < 1e-13) throw DegenerateGammaError("k = 0: local exponents coincide");

  const bool u1 = is_u1(family);
  const double s = u1 ? 1.0 : -1.0;
  const heun::Params base(0.5, s * I * (E + k) / K, -1.0, 0.0, 1.0 - s * I * r, 1.0 + s * I * r);
  const FrameExponents frame{-s * I * r / 2.0, s * I * r / 2.0, 0.0};

  if (is_first(family)) {
    if (near_nonpositive_integer(base.gamma(), heun::kDefaultGammaGuard)) {
      throw DegenerateGammaError("gamma of the plane-wave solution is a non-positive integer");
    }
    return LocalSolution(family, base, frame, bg, sp);
  }
  const heun::Params shifted = base.second_solution_params();
  if (near_nonpositive_integer(shifted.gamma(), heun::kDefaultGammaGuard)) {
    throw DegenerateGammaError("2 - gamma is a non-positive integer");
  }
  return LocalSolution(family, shifted, frame, bg, sp);
}

Jet eval_u(const LocalSolution& sol, double x, double tol) {
  const Family f = sol.family();
  const auto& bg = sol.background();
  const cplx k = sol.spectral().k();
  const double K = bg.K();
  const double y = 2.0 * K * x;

  const cplx z = map_to_z(f, bg, x);
  if (z == cplx{1.0}) throw DomainError("Heun argument saturated at the singular point z = 1");
  const Jet hl = heun::evaluate(sol.params(), z, tol);

  const cplx ikx = I * k * x;
  const cplx ratio = kPi * k / K;
  cplx log_pre;
  cplx dlog;
  switch (f) {
    case Family::U1_FIRST:
      log_pre = ratio / 4.0 + ikx;
      dlog = I * k;
      break;
    case Family::U2_FIRST:
      log_pre = -ratio / 4.0 + ikx;
      dlog = I * k;
      break;
    case Family::U2_SECOND:
      // e^{-pi k/2K} e^{-ikx} (i + e^{2Kx})^{ik/K}
      log_pre = -ratio / 2.0 - ikx + I * k / K * log_i_plus_exp(y);
      dlog = -I * k + 2.0 * I * k * inv_one_plus_i_expm(y);
      break;
    case Family::U1_SECOND:
      // e^{pi k/4K} e^{ikx} (1 - i e^{2Kx})^{-ik/K}
      log_pre = ratio / 4.0 + ikx - I * k / K * log_one_minus_i_exp(y);
      dlog = I * k - 2.0 * k * inv_expm_minus_i(y);
      break;
  }
  const cplx pre = std::exp(log_pre);
  const cplx dz = dz_dx(f, bg, x);
  return {pre * hl.value, pre * (dlog * hl.value + hl.deriv * dz)};
}

cplx eval_v(const Background& bg, const SpectralPoint& sp, double x, const Jet& u) {
  const cplx r = mobius_ratio(2.0 * bg.K() * x);
  return I / bg.M() * (r * r) * (sp.E() * u.value - I * u.deriv);
}

cplx eval_v(const LocalSolution& sol, double x, double tol) {
  return eval_v(sol.background(), sol.spectral(), x, eval_u(sol, x, tol));
}

cplx eval_v_z(Family family, const Background& bg, const SpectralPoint& sp, cplx z, cplx u, cplx du_dz) {
  const double sign = is_u1(family) ? 1.0 : -1.0;
  const cplx zc = z - 0.5;
  return (I * sp.E() * u + sign * 2.0 * bg.K() * z * (z - 1.0) * du_dz) / (4.0 * bg.M() * zc * zc);
}

}  // namespace kinkheun::soliton
