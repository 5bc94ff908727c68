#include <doctest.h>

#include <cmath>
#include <vector>

#include "kinkheun/oracle.hpp"
#include "kinkheun/scattering.hpp"
#include "kinkheun/spectrum.hpp"
#include "support.hpp"

using namespace kinkheun;
using namespace kinkheun::oracle;
using soliton::Background;
using soliton::Family;
using soliton::Sign;
using soliton::SpectralPoint;
using support::rel;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  return out;
}

// u and v of the matched Heun solution on x_first + i h.
void sample_matched(const scattering::MatchedWave& w, const Background& bg, const SpectralPoint& sp, double x_first,
                    double h, int n, std::vector<cplx>& u, std::vector<cplx>& v) {
  u.resize(n);
  v.resize(n);
  for (int i = 0; i < n; ++i) {
    const double x = x_first + i * h;
    const Jet j = w.u(x);
    u[i] = j.value;
    v[i] = soliton::eval_v(bg, sp, x, j);
  }
}

}  // namespace

TEST_CASE("asymptotic region propagates plane waves") {
  const Background bg(5.0, Sign::kink);
  const double k = 2.5;
  const auto sp = SpectralPoint::scattering(bg, k);
  IntegrationConfig cfg;
  cfg.x_start = 3.0;  // 2Kx = 30
  cfg.x_end = 2.0;
  const auto xs = linspace(3.0, 2.0, 21);
  const auto traj = integrate_u(bg, sp, cfg, std::exp(I * k * 3.0), I * k * std::exp(I * k * 3.0), xs);
  REQUIRE(traj.size() == xs.size());
  for (const auto& s : traj) CHECK(std::abs(s.u - std::exp(I * k * s.x)) < 1e-6);
}

TEST_CASE("integration from the transmitted side reproduces the matched Heun solution") {
  for (auto sign : {Sign::kink, Sign::antikink}) {
    const Background bg(5.0, sign);
    const auto sp = SpectralPoint::scattering(bg, 2.5);
    const scattering::MatchedWave w(bg, sp);
    const double x0 = 6.0 / 5.0;
    const Jet start = soliton::eval_u(w.basis().transmitted, x0, kDefaultTol);
    IntegrationConfig cfg;
    cfg.x_start = x0;
    cfg.x_end = -x0;
    const auto xs = linspace(x0, -x0, 49);
    const auto traj = integrate_u(bg, sp, cfg, start.value, start.deriv, xs);
    for (const auto& s : traj) {
      CHECK(rel(s.u, w.u(s.x).value) < 1e-6);
      CHECK(rel(s.du, w.u(s.x).deriv) < 1e-6);
    }
  }
}

TEST_CASE("bound solution decays in both directions under integration") {
  const Background bg(5.0, Sign::kink);
  const auto sp = SpectralPoint::bound(bg, 4.231807015500);
  const double kappa = sp.k().imag();
  const Jet start = soliton::eval_u(soliton::build_solution(Family::U1_FIRST, bg, sp), 0.0, kDefaultTol);
  for (double dir : {1.0, -1.0}) {
    IntegrationConfig cfg;
    cfg.x_start = 0.0;
    cfg.x_end = dir * 1.2;
    const auto xs = linspace(0.4 * dir, 1.2 * dir, 9);
    const auto traj = integrate_u(bg, sp, cfg, start.value, start.deriv, xs);
    for (std::size_t i = 1; i < traj.size(); ++i) {
      CHECK(std::abs(traj[i].u) < std::abs(traj[i - 1].u) * std::exp(-0.9 * kappa * 0.1));
    }
  }
}

TEST_CASE("tail fit of a free plane wave") {
  const Background bg(5.0, Sign::kink);
  const double k = 2.5;
  const auto sp = SpectralPoint::scattering(bg, k);
  // Test double: the coupling is switched off, u = e^{ikx} on both tails.
  Trajectory traj;
  for (double x : linspace(-3.5, 3.5, 281)) traj.push_back({x, std::exp(I * k * x), I * k * std::exp(I * k * x)});
  const auto fit = fit_tails(traj, bg, sp);
  CHECK(std::abs(fit.right_plus - 1.0) < 1e-14);
  CHECK(std::abs(fit.left_minus) < 1e-14);
  const auto oc = extract_scattering(traj, bg, sp);
  const auto basis = scattering::matching_basis(bg, sp);
  const cplx t = basis.transmitted.asymptotic_amplitude() / (oc.c1 * basis.incident.asymptotic_amplitude());
  CHECK(std::abs(t - 1.0) < 1e-13);
  CHECK(std::abs(oc.c2) < 1e-13);
}

TEST_CASE("oracle coefficients agree with the Wronskian matching") {
  for (auto sign : {Sign::kink, Sign::antikink}) {
    const Background bg(5.0, sign);
    const double k = 2.5;
    const auto sp = SpectralPoint::scattering(bg, k);
    const auto d = scattering::match_coefficients(bg, sp);
    const auto o = oracle_coefficients(bg, sp);
    CHECK(rel(o.c1, d.c1) < 1e-6);
    CHECK(rel(o.c2, d.c2) < 1e-6);
    CHECK(o.fit_residual < kFitTolerance);

    // Flux from the oracle amplitudes alone.
    const auto basis = scattering::matching_basis(bg, sp);
    const cplx cin = basis.incident.asymptotic_amplitude();
    const cplx t = basis.transmitted.asymptotic_amplitude() / (o.c1 * cin);
    const cplx r = o.c2 * basis.reflected.asymptotic_amplitude() / (o.c1 * cin) * std::sqrt((sp.E() - k) / (sp.E() + k));
    CHECK(std::abs(std::norm(t) + std::norm(r) - 1.0) < 1e-6);
  }
}

TEST_CASE("oracle agreement over a log grid of momenta") {
  const Background bg(5.0, Sign::kink);
  for (double k : scattering::log_grid(0.25, 10.0, 10)) {
    const auto sp = SpectralPoint::scattering(bg, k);
    const auto d = scattering::match_coefficients(bg, sp);
    const auto o = oracle_coefficients(bg, sp);
    CAPTURE(k);
    CHECK(std::abs(o.c1 - d.c1) <= 1e-6 * std::abs(d.c1));
    CHECK(std::abs(o.c2 - d.c2) <= 1e-6 * std::abs(d.c1));
  }
}

TEST_CASE("tightening the integrator shrinks the discrepancy") {
  const Background bg(5.0, Sign::kink);
  const auto sp = SpectralPoint::scattering(bg, 2.5);
  const auto d = scattering::match_coefficients(bg, sp);
  double prev = 1.0;
  for (double t : {1e-8, 1e-9, 1e-10, 1e-11}) {
    const double err = rel(oracle_coefficients(bg, sp, t, 1e-2 * t).c1, d.c1);
    CAPTURE(t);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("fit and step failures") {
  const Background bg(5.0, Sign::kink);
  const auto sp = SpectralPoint::scattering(bg, 2.5);
  IntegrationConfig cfg;
  cfg.x_start = 1.0;
  cfg.x_end = -1.0;
  const Jet start = soliton::eval_u(soliton::build_solution(Family::U1_FIRST, bg, sp), 1.0, kDefaultTol);
  const auto core = integrate_u(bg, sp, cfg, start.value, start.deriv, linspace(1.0, -1.0, 41));
  CHECK_THROWS_AS(fit_tails(core, bg, sp), FitError);

  // Core data placed inside the tail windows does not look like plane waves.
  Trajectory fake = core;
  for (auto& s : fake) s.x *= 3.0;
  CHECK_THROWS_AS(fit_tails(fake, bg, sp), FitError);

  IntegrationConfig strict = cfg;
  strict.rel_tol = 1e-300;
  strict.abs_tol = 1e-300;
  CHECK_THROWS_AS(integrate_u(bg, sp, strict, start.value, start.deriv, {0.0}), StepFailure);

  IntegrationConfig bad = cfg;
  bad.x_end = bad.x_start;
  CHECK_THROWS_AS(integrate_u(bg, sp, bad, start.value, start.deriv, {}), DomainError);
  CHECK_THROWS_AS(integrate_u(bg, sp, cfg, start.value, start.deriv, {2.0}), DomainError);
}

TEST_CASE("Dirac and second-order residuals of the matched solution") {
  const Background bg(5.0, Sign::kink);
  const auto sp = SpectralPoint::scattering(bg, 2.5);
  const scattering::MatchedWave w(bg, sp);
  std::vector<cplx> u, v;
  sample_matched(w, bg, sp, -2.0, 0.01, 401, u, v);
  const auto coarse = residuals(-2.0, 0.01, u, v, bg, sp);
  CHECK(coarse.max_rel_residual <= 1e-6);
  CHECK(coarse.samples == 401 - 8);

  sample_matched(w, bg, sp, -2.0, 0.005, 801, u, v);
  const auto fine = residuals(-2.0, 0.005, u, v, bg, sp);
  CHECK(fine.max_rel_residual < 2.0 * coarse.max_rel_residual);

  // Detector sensitivity.
  sample_matched(w, bg, sp, -2.0, 0.01, 401, u, v);
  for (int i = 0; i < 401; ++i) u[i] *= 1.0 + 1e-3 * (-2.0 + 0.01 * i);
  CHECK(residuals(-2.0, 0.01, u, v, bg, sp).max_rel_residual >= 1e-4);

  CHECK_THROWS_AS(residuals(-2.0, 0.01, std::vector<cplx>(5), std::vector<cplx>(5), bg, sp), DomainError);
}

TEST_CASE("valence bound state satisfies the Dirac system") {
  const Background bg(5.0, Sign::kink);
  const double E = 4.231807015500;
  const auto sp = SpectralPoint::bound(bg, E);
  const auto right = soliton::build_solution(Family::U1_FIRST, bg, sp);
  const auto left = soliton::build_solution(Family::U2_SECOND, bg, sp);
  const cplx scale = soliton::eval_u(right, 0.0, kDefaultTol).value / soliton::eval_u(left, 0.0, kDefaultTol).value;
  const int n = 401;
  std::vector<cplx> u(n), v(n);
  for (int i = 0; i < n; ++i) {
    const double x = -2.0 + 0.01 * i;
    Jet j = x >= 0.0 ? soliton::eval_u(right, x, kDefaultTol) : soliton::eval_u(left, x, kDefaultTol);
    if (x < 0.0) j = {scale * j.value, scale * j.deriv};
    u[i] = j.value;
    v[i] = soliton::eval_v(bg, sp, x, j);
  }
  CHECK(residuals(-2.0, 0.01, u, v, bg, sp).max_rel_residual <= 1e-5);
}

TEST_CASE("Heun ODE oracle reproduces a closed form") {
  // alpha = 0, q = 0: Hl = 1 identically.
  const heun::Params flat(0.5, 0.0, 0.0, 1.3, 1.1, 0.7);
  const Jet j = heun_ode(flat, {0.3, 0.4});
  CHECK(std::abs(j.value - 1.0) < 1e-12);
  CHECK(std::abs(j.deriv) < 1e-12);
}
