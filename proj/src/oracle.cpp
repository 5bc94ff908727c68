#include "kinkheun/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <boost/numeric/odeint.hpp>

#include "kinkheun/scattering.hpp"

namespace kinkheun::oracle {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<cplx, 2>;

struct UEquation {
  double K;
  double E;
  cplx k2;  // E^2 - M^2

  void operator()(const State& s, State& ds, double x) const {
    const double sech = 1.0 / std::cosh(2.0 * K * x);
    ds[0] = s[1];
    ds[1] = 4.0 * I * K * sech * s[1] - (k2 + 4.0 * E * K * sech) * s[0];
  }
};

double sech(double y) { return 1.0 / std::cosh(y); }

}  // namespace

Trajectory integrate_u(const soliton::Background& bg, const soliton::SpectralPoint& sp, const IntegrationConfig& cfg,
                       cplx u_init, cplx du_init, const std::vector<double>& sample_x) {
  if (cfg.x_start == cfg.x_end) throw DomainError("integration interval is empty");
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || !(cfg.max_step > 0.0)) {
    throw DomainError("integration tolerances and max_step must be positive");
  }
  const double dir = cfg.x_end > cfg.x_start ? 1.0 : -1.0;
  for (double x : sample_x) {
    if ((x - cfg.x_start) * dir < 0.0 || (cfg.x_end - x) * dir < 0.0) throw DomainError("sample outside interval");
  }

  // Visit samples in integration order, report them in the caller's order.
  std::vector<std::size_t> order(sample_x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return (sample_x[a] - sample_x[b]) * dir < 0.0; });

  const UEquation eq{bg.K(), sp.E(), (sp.E() - bg.M()) * (sp.E() + bg.M())};
  // Step length is capped here rather than through odeint's max_dt, which
  // loses the sign of backward steps in this Boost version.
  auto stepper = odeint::make_controlled(cfg.abs_tol, cfg.rel_tol, odeint::runge_kutta_fehlberg78<State>());
  const double floor = cfg.max_step / 1024.0;

  State s{u_init, du_init};
  double x = cfg.x_start;
  double dt = dir * cfg.max_step / 8.0;
  Trajectory out(sample_x.size());
  for (std::size_t idx : order) {
    const double target = sample_x[idx];
    while ((target - x) * dir > 0.0) {
      const double remaining = target - x;
      dt = dir * std::min(std::abs(dt), cfg.max_step);
      const bool clipped = std::abs(remaining) <= std::abs(dt);
      double step = clipped ? remaining : dt;
      const double before = x;
      const auto res = stepper.try_step(eq, s, x, step);
      if (res == odeint::success) {
        if (clipped) x = target;
        if (!clipped || std::abs(step) > std::abs(dt)) dt = step;
      } else {
        dt = step;
        x = before;
        if (std::abs(dt) < floor) throw StepFailure("step size fell below max_step/1024");
      }
      if (!is_finite(s[0]) || !is_finite(s[1])) throw StepFailure("integration produced a non-finite state");
    }
    out[idx] = {target, s[0], s[1]};
  }
  return out;
}

namespace {

struct Window {
  cplx plus{};
  cplx minus{};
  double residual = 0.0;
  int count = 0;
};

Window fit_window(const Trajectory& traj, const soliton::Background& bg, cplx k, bool right) {
  Window w;
  std::vector<std::pair<cplx, cplx>> amps;
  for (const auto& s : traj) {
    const double y = std::abs(2.0 * bg.K() * s.x);
    if ((s.x > 0.0) != right || y < kTailInner || y > kTailOuter) continue;
    const cplx e = std::exp(I * k * s.x);
    const cplx du_ik = s.du / (I * k);
    amps.emplace_back(0.5 * (s.u + du_ik) / e, 0.5 * (s.u - du_ik) * e);
  }
  w.count = static_cast<int>(amps.size());
  if (amps.empty()) return w;
  for (const auto& a : amps) {
    w.plus += a.first;
    w.minus += a.second;
  }
  w.plus /= static_cast<double>(amps.size());
  w.minus /= static_cast<double>(amps.size());
  const double scale = std::abs(w.plus) + std::abs(w.minus);
  for (const auto& a : amps) {
    w.residual = std::max(w.residual, (std::abs(a.first - w.plus) + std::abs(a.second - w.minus)) / scale);
  }
  return w;
}

}  // namespace

TailFit fit_tails(const Trajectory& traj, const soliton::Background& bg, const soliton::SpectralPoint& sp) {
  const cplx k = sp.k();
  if (k == cplx{0.0}) throw FitError("tail fit needs k != 0");
  const Window r = fit_window(traj, bg, k, true);
  const Window l = fit_window(traj, bg, k, false);
  if (r.count == 0 || l.count == 0) throw FitError("trajectory does not reach both tail windows");
  TailFit fit{r.plus, r.minus, l.plus, l.minus, std::max(r.residual, l.residual)};
  if (!(fit.residual <= kFitTolerance)) throw FitError("tail residual exceeds tolerance");
  return fit;
}

OracleCoefficients extract_scattering(const Trajectory& traj, const soliton::Background& bg,
                                      const soliton::SpectralPoint& sp) {
  const TailFit fit = fit_tails(traj, bg, sp);
  const auto basis = scattering::matching_basis(bg, sp);
  const cplx scale = basis.transmitted.asymptotic_amplitude() / fit.right_plus;
  return {fit.left_plus * scale / basis.incident.asymptotic_amplitude(),
          fit.left_minus * scale / basis.reflected.asymptotic_amplitude(), fit.residual};
}

OracleCoefficients oracle_coefficients(const soliton::Background& bg, const soliton::SpectralPoint& sp,
                                       double rel_tol, double abs_tol, int tail_samples) {
  const double scale = 1.0 / (2.0 * std::abs(bg.K()));
  const double x_far = kTailOuter * scale;
  std::vector<double> xs;
  for (int i = 0; i < tail_samples; ++i) {
    const double y = kTailInner + (kTailOuter - kTailInner) * i / std::max(1, tail_samples - 1);
    xs.push_back(y * scale);
    xs.push_back(-y * scale);
  }
  IntegrationConfig cfg;
  cfg.x_start = x_far;
  cfg.x_end = -x_far;
  cfg.rel_tol = rel_tol;
  cfg.abs_tol = abs_tol;
  cfg.max_step = 0.25 * scale;
  const cplx k = sp.k();
  const cplx u0 = std::exp(I * k * x_far);
  const auto traj = integrate_u(bg, sp, cfg, u0, I * k * u0, xs);
  return extract_scattering(traj, bg, sp);
}

ResidualReport residuals(double x_first, double h, const std::vector<cplx>& u, const std::vector<cplx>& v,
                         const soliton::Background& bg, const soliton::SpectralPoint& sp) {
  if (u.size() != v.size()) throw DomainError("u and v sample counts differ");
  if (!(h > 0.0)) throw DomainError("grid spacing must be positive");
  if (u.size() < 9) throw DomainError("need at least 9 samples for the stencils");
  ResidualReport rep;
  const double M = bg.M();
  const double K = bg.K();
  const double E = sp.E();
  const cplx k2 = (E - M) * (E + M);
  // 9-point central stencils, 8th order.
  static constexpr std::array<double, 5> w1{0.0, 4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  static constexpr std::array<double, 5> w2{-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};
  const auto d1 = [h](const std::vector<cplx>& f, std::size_t i) {
    cplx acc = 0.0;
    for (std::size_t j = 1; j < w1.size(); ++j) acc += w1[j] * (f[i + j] - f[i - j]);
    return acc / h;
  };
  const auto d2 = [h](const std::vector<cplx>& f, std::size_t i) {
    cplx acc = w2[0] * f[i];
    for (std::size_t j = 1; j < w2.size(); ++j) acc += w2[j] * (f[i + j] + f[i - j]);
    return acc / (h * h);
  };
  for (std::size_t i = 4; i + 4 < u.size(); ++i) {
    const double x = x_first + h * static_cast<double>(i);
    const double s = sech(2.0 * K * x);
    const cplx g = soliton::dirac_coupling(bg, x);
    const cplx du = d1(u, i);
    const cplx ddu = d2(u, i);
    const cplx dv = d1(v, i);

    const cplx t_pot = (k2 + 4.0 * E * K * s) * u[i];
    const cplx t_drag = 4.0 * I * K * s * du;
    const double r2 = std::abs(ddu - t_drag + t_pot) / (std::abs(ddu) + std::abs(t_drag) + std::abs(t_pot));

    const cplx a1 = -E * u[i];
    const cplx a2 = I * du;
    const cplx a3 = I * M * std::conj(g) * v[i];
    const double r11 = std::abs(a1 + a2 + a3) / (std::abs(a1) + std::abs(a2) + std::abs(a3));

    const cplx b1 = E * v[i];
    const cplx b2 = I * dv;
    const cplx b3 = I * M * g * u[i];
    const double r21 = std::abs(b1 + b2 + b3) / (std::abs(b1) + std::abs(b2) + std::abs(b3));

    const double worst = std::max({r2, r11, r21});
    if (worst > rep.max_rel_residual) {
      rep.max_rel_residual = worst;
      rep.worst_x = x;
    }
    ++rep.samples;
  }
  return rep;
}

namespace {

struct HeunEquation {
  heun::Params p;
  cplx z0;
  cplx dz;  // z(s) = z0 + s dz

  void operator()(const State& st, State& ds, double s) const {
    const cplx z = z0 + s * dz;
    const cplx za = z - p.a();
    const cplx z1 = z - 1.0;
    const cplx h2 = -(p.gamma() / z + p.delta() / z1 + p.epsilon() / za) * st[1] -
                    (p.alpha() * p.beta() * z - p.q()) / (z * z1 * za) * st[0];
    ds[0] = st[1] * dz;
    ds[1] = h2 * dz;
  }
};

}  // namespace

Jet heun_ode(const heun::Params& p, cplx z, double rel_tol, double abs_tol, double z_start) {
  if (std::abs(z) <= z_start) throw DomainError("target inside the Frobenius start radius");
  // h_{n+1} = -(R_{n-1} h_{n-1} + P_n h_n) / Q_{n+1}
  std::array<cplx, 4> h{1.0, 0.0, 0.0, 0.0};
  for (int n = 0; n < 3; ++n) {
    const auto c = heun::recurrence_coeffs(p, n);
    const cplx prev = n > 0 ? heun::recurrence_coeffs(p, n - 1).R * h[n - 1] : cplx{0.0};
    h[n + 1] = -(prev + c.P * h[n]) / heun::recurrence_coeffs(p, n + 1).Q;
  }
  const cplx z0 = z_start * z / std::abs(z);
  State st{1.0 + z0 * (h[1] + z0 * (h[2] + z0 * h[3])), h[1] + z0 * (2.0 * h[2] + 3.0 * z0 * h[3])};
  const HeunEquation eq{p, z0, z - z0};
  auto stepper = odeint::make_controlled(abs_tol, rel_tol, odeint::runge_kutta_fehlberg78<State>());
  odeint::integrate_adaptive(stepper, eq, st, 0.0, 1.0, 1e-6);
  return {st[0], st[1]};
}

}  // namespace kinkheun::oracle
