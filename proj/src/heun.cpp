#include "kinkheun/heun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace kinkheun::heun {

namespace {

// Number of consecutive negligible terms required before a sum is accepted.
constexpr int kQuietTerms = 3;

bool near_nonpositive_integer(cplx x, double guard) {
  const double n = std::round(x.real());
  return n <= 0.0 && std::abs(x - n) < guard;
}

bool near_integer(cplx x, double guard) { return std::abs(x - std::round(x.real())) < guard; }

// Exact (to rounding) non-positive integer -N, returned as N; -1 otherwise.
int terminating_order(cplx x) {
  const double n = std::round(x.real());
  if (n > 0.0 || std::abs(x - n) > 1e-12) return -1;
  return static_cast<int>(-n);
}

std::array<cplx, 3> singular_points(const Params& p) { return {cplx{0.0}, cplx{1.0}, p.a()}; }

double distance_to_segment(cplx s, cplx from, cplx to) {
  const cplx d = to - from;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(s - from);
  const double t = std::clamp(((s - from) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(s - (from + t * d));
}

double segment_clearance(const Params& p, cplx from, cplx to) {
  double best = std::numeric_limits<double>::infinity();
  for (cplx s : singular_points(p)) best = std::min(best, distance_to_segment(s, from, to));
  return best;
}

double point_clearance(const Params& p, cplx z) {
  double best = std::numeric_limits<double>::infinity();
  for (cplx s : singular_points(p)) best = std::min(best, std::abs(z - s));
  return best;
}

// Cuts run radially outward from the finite singular points 1 and a.
bool crosses_cut(const Params& p, cplx from, cplx to) {
  for (cplx s : {cplx{1.0}, p.a()}) {
    const double r = std::abs(s);
    const cplx rot = std::conj(s) / r;
    const cplx P = from * rot;
    const cplx Q = to * rot;
    const double y1 = P.imag();
    const double y2 = Q.imag();
    if ((y1 > 0.0 && y2 > 0.0) || (y1 < 0.0 && y2 < 0.0)) continue;
    if (y1 == y2) {
      if (std::max(P.real(), Q.real()) >= r) return true;
      continue;
    }
    const double t = y1 / (y1 - y2);
    if (P.real() + t * (Q.real() - P.real()) >= r) return true;
  }
  return false;
}

bool on_cut(const Params& p, cplx z) { return crosses_cut(p, z, z); }

// Re-expands the Heun ODE around z0 (an ordinary point) with initial data
// `at` and sums the local Taylor series at z1. Works on the scaled terms
// g_n = b_n (z1 - z0)^n so nothing overflows.
Jet taylor_step(const Params& p, cplx z0, const Jet& at, cplx z1, double tol) {
  const cplx a = p.a();
  const cplx ab = p.alpha() * p.beta();
  const cplx g = p.gamma(), d = p.delta(), e = p.epsilon();
  const cplx s = g + d + e;

  // z(z-1)(z-a) = c0 + c1 t + c2 t^2 + t^3
  const cplx c0 = z0 * (z0 - 1.0) * (z0 - a);
  const cplx c1 = 3.0 * z0 * z0 - 2.0 * (1.0 + a) * z0 + a;
  const cplx c2 = 3.0 * z0 - (1.0 + a);
  const cplx c3 = 1.0;
  // gamma(z-1)(z-a) + delta z(z-a) + epsilon z(z-1) = d0 + d1 t + d2 t^2
  const cplx lin = g * (1.0 + a) + d * a + e;
  const cplx d0 = s * z0 * z0 - lin * z0 + g * a;
  const cplx d1 = 2.0 * s * z0 - lin;
  const cplx d2 = s;
  // alpha beta z - q = e0 + e1 t
  const cplx e0 = ab * z0 - p.q();
  const cplx e1 = ab;

  const cplx h = z1 - z0;
  if (h == cplx{0.0}) return at;

  cplx gm1{0.0};            // g_{n-1}
  cplx gn = at.value;       // g_n
  cplx gn1 = at.deriv * h;  // g_{n+1}
  cplx value = gn + gn1;
  cplx deriv = at.deriv;
  int quiet = 0;
  for (int n = 0; n < kMaxTerms; ++n) {
    const double dn = n;
    const cplx rhs = (c1 * (dn + 1.0) * dn + d0 * (dn + 1.0)) * h * gn1 +
                     (c2 * dn * (dn - 1.0) + d1 * dn + e0) * h * h * gn +
                     (c3 * (dn - 1.0) * (dn - 2.0) + d2 * (dn - 1.0) + e1) * h * h * h * gm1;
    const cplx gn2 = -rhs / (c0 * (dn + 2.0) * (dn + 1.0));
    const cplx dterm = (dn + 2.0) * gn2 / h;
    value += gn2;
    deriv += dterm;
    if (!is_finite(value) || !is_finite(deriv)) {
      throw ConvergenceError("Taylor re-expansion produced a non-finite value");
    }
    const bool small = std::abs(gn2) <= tol * std::abs(value) &&
                       std::abs(dterm) <= tol * (std::abs(deriv) + std::abs(value));
    quiet = small ? quiet + 1 : 0;
    if (quiet >= kQuietTerms) return {value, deriv};
    gm1 = gn;
    gn = gn1;
    gn1 = gn2;
  }
  throw ConvergenceError("Taylor re-expansion did not converge within the term cap");
}

}  // namespace

Params::Params(cplx a, cplx q, cplx alpha, cplx beta, cplx gamma, cplx delta)
    : a_(a), q_(q), alpha_(alpha), beta_(beta), gamma_(gamma), delta_(delta),
      epsilon_(alpha + beta + 1.0 - gamma - delta) {
  for (cplx v : {a, q, alpha, beta, gamma, delta}) {
    if (!is_finite(v)) throw DomainError("Heun parameters must be finite");
  }
  if (std::abs(a) < 1e-14 || std::abs(a - 1.0) < 1e-14) {
    throw DomainError("Heun parameter a must differ from 0 and 1");
  }
}

double Params::convergence_radius() const { return std::min(std::abs(a_), 1.0); }

Params Params::second_solution_params() const {
  const cplx shift = (epsilon_ + delta_ * a_) * (1.0 - gamma_);
  return Params(a_, q_ + shift, alpha_ - gamma_ + 1.0, beta_ - gamma_ + 1.0, 2.0 - gamma_, delta_);
}

RecurrenceCoeffs recurrence_coeffs(const Params& p, int n) {
  const double dn = n;
  const cplx R = (dn + p.alpha()) * (dn + p.beta());
  const cplx P = -p.q() - dn * (dn - 1.0 + p.gamma()) * (1.0 + p.a()) -
                 dn * (p.a() * p.delta() + p.epsilon());
  const cplx Q = p.a() * dn * (dn - 1.0 + p.gamma());
  return {R, P, Q};
}

SeriesResult series(const Params& p, cplx z, double tol) {
  if (!(tol > 0.0)) throw DomainError("series tolerance must be positive");
  if (!is_finite(z)) throw DomainError("series argument must be finite");
  const double limit = kDiskMargin * p.convergence_radius();
  if (std::abs(z) > limit) {
    std::ostringstream msg;
    msg << "|z| = " << std::abs(z) << " outside the series disk (limit " << limit << ")";
    throw DomainError(msg.str());
  }
  if (near_nonpositive_integer(p.gamma(), 1e-14)) {
    throw DegenerateGammaError("gamma is a non-positive integer; Hl is undefined");
  }

  const int order_a = terminating_order(p.alpha());
  const int order_b = terminating_order(p.beta());

  SeriesResult out{cplx{1.0}, cplx{0.0}, {}};
  auto& h = out.state.coefficients;
  h.reserve(64);
  h.push_back(1.0);

  cplx zpow{1.0};  // z^n for the newest coefficient h_n
  double hmax = 1.0;
  int quiet = 0;
  for (int n = 0; n + 1 < kMaxTerms; ++n) {
    const auto rn = recurrence_coeffs(p, n);
    const auto rnext = recurrence_coeffs(p, n + 1);
    const cplx prev = n > 0 ? recurrence_coeffs(p, n - 1).R * h[n - 1] : cplx{0.0};
    cplx hn1 = -(prev + rn.P * h[n]) / rnext.Q;

    if ((order_a == n || order_b == n) && std::abs(hn1) <= 1e-14 * hmax) {
      // h_{N+1} = 0 with alpha or beta = -N: every later coefficient vanishes.
      h.push_back(0.0);
      out.state.truncated = true;
      break;
    }
    h.push_back(hn1);
    hmax = std::max(hmax, std::abs(hn1));

    const cplx dterm = static_cast<double>(n + 1) * hn1 * zpow;
    zpow *= z;
    const cplx term = hn1 * zpow;
    out.value += term;
    out.deriv += dterm;
    if (!is_finite(out.value) || !is_finite(out.deriv)) {
      throw ConvergenceError("Heun series overflowed");
    }
    const bool small = std::abs(term) <= tol * std::abs(out.value) &&
                       std::abs(dterm) <= tol * (std::abs(out.deriv) + std::abs(out.value));
    quiet = small ? quiet + 1 : 0;
    if (quiet >= kQuietTerms) break;
    if (n + 2 >= kMaxTerms) throw ConvergenceError("Heun series hit the term cap");
  }
  out.state.n_used = static_cast<int>(h.size());
  return out;
}

Jet second_solution(const Params& p, cplx z, double tol, double gamma_guard) {
  if (near_integer(p.gamma(), gamma_guard)) {
    throw DegenerateGammaError("gamma is (near) an integer; the second local solution is logarithmic");
  }
  if (z == cplx{0.0}) throw DomainError("second local solution is evaluated at z != 0 only");
  const auto inner = series(p.second_solution_params(), z, tol);
  const cplx expo = 1.0 - p.gamma();
  const cplx power = std::exp(expo * std::log(z));
  return {power * inner.value, expo * power / z * inner.value + power * inner.deriv};
}

void validate_path(const Params& p, const ContinuationPath& path) {
  if (path.waypoints.empty()) throw PathError("continuation path has no waypoints");
  if (std::abs(path.waypoints.front()) > kDiskMargin * p.convergence_radius()) {
    throw PathError("continuation path must start inside the series disk");
  }
  for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
    const cplx from = path.waypoints[i - 1];
    const cplx to = path.waypoints[i];
    if (segment_clearance(p, from, to) < path.min_singularity_distance) {
      throw PathError("continuation segment passes too close to a singular point");
    }
    if (crosses_cut(p, from, to)) throw PathError("continuation segment crosses a branch cut");
  }
}

ContinuationPath default_path(const Params& p, cplx z_target, double clearance) {
  const double radius = p.convergence_radius();
  if (std::abs(z_target) <= kDiskMargin * radius) return {{z_target}, clearance};

  const double target_clearance = point_clearance(p, z_target);
  if (target_clearance == 0.0) throw DomainError("target is a singular point of the Heun equation");
  if (on_cut(p, z_target)) throw DomainError("target lies on a branch cut");

  const cplx start = 0.5 * radius * z_target / std::abs(z_target);
  const double need = std::min(clearance, 0.5 * target_clearance);

  if (segment_clearance(p, start, z_target) >= need && !crosses_cut(p, start, z_target)) {
    return {{start, z_target}, need};
  }

  // Two-segment detour. The last segment necessarily ends close to whichever
  // singular point the target sits next to, so that point is left out of the
  // score used to rank candidates.
  const cplx mid = 0.5 * (start + z_target);
  const double len = std::abs(z_target - start);
  const cplx normal = I * (z_target - start) / len;
  const double preferred = z_target.imag() >= 0.0 ? 1.0 : -1.0;
  const double side0 = (normal * preferred).imag() >= 0.0 ? preferred : -preferred;

  auto score_tail = [&](cplx from) {
    double best = std::numeric_limits<double>::infinity();
    for (cplx s : singular_points(p)) {
      if (target_clearance < clearance && std::abs(z_target - s) == target_clearance) continue;
      best = std::min(best, distance_to_segment(s, from, z_target));
    }
    return best;
  };

  double best_score = -1.0;
  cplx best_offset{};
  for (double side : {side0, -side0}) {
    for (double frac : {0.25, 0.5, 0.75, 1.0, 1.5}) {
      const cplx offset = mid + side * frac * len * normal;
      if (segment_clearance(p, start, offset) < need || segment_clearance(p, offset, z_target) < need) continue;
      if (crosses_cut(p, start, offset) || crosses_cut(p, offset, z_target)) continue;
      const double score = std::min(segment_clearance(p, start, offset), score_tail(offset));
      if (score > best_score) {
        best_score = score;
        best_offset = offset;
      }
    }
  }
  if (best_score < 0.0) throw PathError("no admissible continuation path to the target");
  return {{start, best_offset, z_target}, need};
}

Jet continue_to(const Params& p, cplx z_target, const ContinuationPath& path, double tol) {
  if (!(tol > 0.0)) throw DomainError("continuation tolerance must be positive");
  ContinuationPath full = path;
  if (full.waypoints.empty() || full.waypoints.back() != z_target) full.waypoints.push_back(z_target);
  validate_path(p, full);

  const auto first = series(p, full.waypoints.front(), tol);
  Jet cur{first.value, first.deriv};
  cplx at = full.waypoints.front();

  constexpr int kMaxSteps = 100000;
  int steps = 0;
  for (std::size_t i = 1; i < full.waypoints.size(); ++i) {
    const cplx goal = full.waypoints[i];
    while (at != goal) {
      const double clear = point_clearance(p, at);
      if (clear <= 0.0) throw PathError("continuation reached a singular point");
      const double max_step = 0.5 * clear;
      const cplx remaining = goal - at;
      const cplx next = std::abs(remaining) <= max_step ? goal : at + max_step * remaining / std::abs(remaining);
      cur = taylor_step(p, at, cur, next, tol);
      at = next;
      if (++steps > kMaxSteps) throw ConvergenceError("continuation exceeded the step budget");
    }
  }
  return cur;
}

Jet evaluate(const Params& p, cplx z, double tol) {
  if (std::abs(z) <= kDiskMargin * p.convergence_radius()) {
    const auto s = series(p, z, tol);
    return {s.value, s.deriv};
  }
  return continue_to(p, z, default_path(p, z), tol);
}

}  // namespace kinkheun::heun
