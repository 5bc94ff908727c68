#include "kinkheun/scattering.hpp"

#include <algorithm>
#include <cmath>

namespace kinkheun::scattering {

using soliton::Background;
using soliton::Family;
using soliton::SpectralPoint;

cplx wronskian(const Jet& f, const Jet& g) { return f.value * g.deriv - g.value * f.deriv; }

Basis matching_basis(const Background& bg, const SpectralPoint& sp) {
  if (bg.sign() == soliton::Sign::kink) {
    return {soliton::build_solution(Family::U1_FIRST, bg, sp), soliton::build_solution(Family::U2_FIRST, bg, sp),
            soliton::build_solution(Family::U2_SECOND, bg, sp)};
  }
  return {soliton::build_solution(Family::U2_FIRST, bg, sp), soliton::build_solution(Family::U1_FIRST, bg, sp),
          soliton::build_solution(Family::U1_SECOND, bg, sp)};
}

cplx abel_wronskian(const Background& bg, const SpectralPoint& sp, double x0) {
  const cplx ratio = kPi * sp.k() / bg.K();
  // Amplitudes of the left pair, in either orientation.
  const cplx c_inc = bg.K() > 0.0 ? std::exp(-ratio / 4.0) : std::exp(ratio / 4.0);
  const cplx c_ref = bg.K() > 0.0 ? std::exp(-ratio) : std::exp(-ratio / 4.0);
  const double gd = std::atan(std::sinh(2.0 * bg.K() * x0));
  return 2.0 * I * sp.k() * c_inc * c_ref * std::exp(2.0 * I * gd);
}

double transmission(const ScatteringData& d) { return std::norm(d.t); }
double reflection(const ScatteringData& d) { return std::norm(d.r); }

namespace {

ScatteringData assemble(const Basis& b, const SpectralPoint& sp, cplx c1, cplx c2, double x0) {
  const double E = sp.E();
  const cplx k = sp.k();
  const cplx ct = b.transmitted.asymptotic_amplitude();
  const cplx ci = b.incident.asymptotic_amplitude();
  const cplx cr = b.reflected.asymptotic_amplitude();
  ScatteringData d;
  d.c1 = c1;
  d.c2 = c2;
  d.t = ct / (c1 * ci);
  d.r = c2 * cr / (c1 * ci) * std::sqrt((E - k) / (E + k));
  d.delta = -std::arg(c1);
  d.x0 = x0;
  return d;
}

}  // namespace

ScatteringData match_coefficients(const Background& bg, const SpectralPoint& sp, double x0, double tol,
                                  double k_min) {
  if (sp.k().imag() != 0.0) throw DomainError("matching requires real momentum");
  if (std::abs(sp.k()) < k_min * std::abs(bg.K())) throw DomainError("|k|/|K| below k_min");
  const Basis b = matching_basis(bg, sp);
  const Jet tr = soliton::eval_u(b.transmitted, x0, tol);
  const Jet l1 = soliton::eval_u(b.incident, x0, tol);
  const Jet l2 = soliton::eval_u(b.reflected, x0, tol);

  const cplx w12 = wronskian(l1, l2);
  const double scale = std::abs(l1.value) * std::abs(l2.deriv) + std::abs(l2.value) * std::abs(l1.deriv);
  if (!(std::abs(w12) >= kDegenerateRatio * scale)) throw DegenerateBasisError("left basis nearly dependent");

  const cplx c1 = wronskian(tr, l2) / w12;
  const cplx c2 = -wronskian(tr, l1) / w12;
  return assemble(b, sp, c1, c2, x0);
}

MatchedWave::MatchedWave(const Background& bg, const SpectralPoint& sp, double x0, double tol)
    : bg_(bg), sp_(sp), basis_(matching_basis(bg, sp)), data_(match_coefficients(bg, sp, x0, tol)), tol_(tol) {}

Jet MatchedWave::right_u(double x) const { return soliton::eval_u(basis_.transmitted, x, tol_); }

Jet MatchedWave::incident_u(double x) const {
  const Jet j = soliton::eval_u(basis_.incident, x, tol_);
  return {data_.c1 * j.value, data_.c1 * j.deriv};
}

Jet MatchedWave::reflected_u(double x) const {
  const Jet j = soliton::eval_u(basis_.reflected, x, tol_);
  return {data_.c2 * j.value, data_.c2 * j.deriv};
}

Jet MatchedWave::left_u(double x) const {
  const Jet a = incident_u(x);
  const Jet b = reflected_u(x);
  return {a.value + b.value, a.deriv + b.deriv};
}

cplx MatchedWave::v_of(double x, const Jet& u) const { return soliton::eval_v(bg_, sp_, x, u); }

PhaseShift phase_shift(const Background& bg, double k, double tol) {
  const auto d = match_coefficients(bg, SpectralPoint::scattering(bg, k), 0.0, tol);
  return {d.delta, d.delta};
}

namespace {

double nearest_branch(double value, double reference) {
  return value + 2.0 * kPi * std::round((reference - value) / (2.0 * kPi));
}

struct Sampler {
  const Background& bg;
  soliton::Branch branch;
  double tol;

  SweepPoint at(double k) const {
    const auto sp = SpectralPoint::scattering(bg, k, branch);
    return {k, sp.E(), match_coefficients(bg, sp, 0.0, tol)};
  }
};

// Unwraps lo against the already unwrapped hi, bisecting when the step is too large.
// Refined samples strictly between lo and hi are appended to `mids` in ascending order.
void descend(const Sampler& s, SweepPoint& lo, const SweepPoint& hi, int depth, std::vector<SweepPoint>& mids) {
  lo.data.delta = nearest_branch(lo.data.delta, hi.data.delta);
  if (std::abs(lo.data.delta - hi.data.delta) < kPi / 2.0 || depth <= 0) return;
  const double km = lo.k > 0.0 ? std::sqrt(lo.k * hi.k) : 0.5 * (lo.k + hi.k);
  SweepPoint mid = s.at(km);
  std::vector<SweepPoint> upper;
  descend(s, mid, hi, depth - 1, upper);
  std::vector<SweepPoint> lower;
  descend(s, lo, mid, depth - 1, lower);
  mids.insert(mids.end(), lower.begin(), lower.end());
  mids.push_back(mid);
  mids.insert(mids.end(), upper.begin(), upper.end());
}

}  // namespace

std::vector<SweepPoint> sweep(const Background& bg, std::vector<double> ks, soliton::Branch branch, double tol,
                              int max_refine) {
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.empty()) return {};

  const Sampler s{bg, branch, tol};
  std::vector<SweepPoint> raw;
  raw.reserve(ks.size());
  for (double k : ks) raw.push_back(s.at(k));

  // Built from the top down, reversed at the end.
  std::vector<SweepPoint> out{raw.back()};
  for (std::size_t i = raw.size() - 1; i-- > 0;) {
    SweepPoint lo = raw[i];
    std::vector<SweepPoint> mids;
    descend(s, lo, out.back(), max_refine, mids);
    out.insert(out.end(), mids.rbegin(), mids.rend());
    out.push_back(lo);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<double> log_grid(double k_min, double k_max, int n) {
  if (!(k_min > 0.0) || !(k_max > k_min) || n < 2) throw DomainError("log grid needs 0 < k_min < k_max, n >= 2");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double a = std::log(k_min);
  const double b = std::log(k_max);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = k_min;
  out.back() = k_max;
  return out;
}

}  // namespace kinkheun::scattering
