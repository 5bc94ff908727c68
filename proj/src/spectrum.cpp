#include "kinkheun/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "kinkheun/scattering.hpp"

namespace kinkheun::spectrum {

using soliton::Background;
using soliton::Family;
using soliton::SpectralPoint;

cplx c1_bound_indicator(const Background& bg, double E, double tol) {
  if (!(std::abs(E) < bg.M() * (1.0 - kEdgeMargin))) throw DomainError("bound-state energy too close to |E| = M");
  const auto sp = SpectralPoint::bound(bg, E);
  const bool kink = bg.sign() == soliton::Sign::kink;
  // L1 is not built: its gamma vanishes at E = 0. Abel's identity supplies W(L1, L2).
  const auto tr = soliton::build_solution(kink ? Family::U1_FIRST : Family::U2_FIRST, bg, sp);
  const auto l2 = soliton::build_solution(kink ? Family::U2_SECOND : Family::U1_SECOND, bg, sp);
  const Jet jt = soliton::eval_u(tr, 0.0, tol);
  const Jet j2 = soliton::eval_u(l2, 0.0, tol);
  return scattering::wronskian(jt, j2) / scattering::abel_wronskian(bg, sp, 0.0);
}

namespace {

constexpr double kGolden = 0.6180339887498949;

double golden_min(const std::function<double(double)>& g, double a, double b, int iters) {
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int i = 0; i < iters && (b - a) > 1e-15 * (std::abs(a) + std::abs(b) + 1e-300); ++i) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kGolden * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kGolden * (b - a);
      gd = g(d);
    }
  }
  return gc < gd ? c : d;
}

// Secant iteration on the complex f along the real line, kept inside [lo, hi].
double secant_polish(const std::function<cplx(double)>& f, double x, double h, double lo, double hi) {
  double x0 = x - h;
  double x1 = x;
  cplx f0 = f(x0);
  cplx f1 = f(x1);
  double best = x1;
  double best_abs = std::abs(f1);
  for (int i = 0; i < 30; ++i) {
    const cplx df = f1 - f0;
    if (df == cplx{0.0}) break;
    const double x2 = x1 - (f1 * (x1 - x0) / df).real();
    if (!(x2 > lo && x2 < hi)) break;
    const cplx f2 = f(x2);
    if (std::abs(f2) < best_abs) {
      best = x2;
      best_abs = std::abs(f2);
    }
    if (x2 == x1) break;
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
  }
  return best;
}

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

}  // namespace

std::vector<Root> find_roots(const std::function<cplx(double)>& f, double lo, double hi, int grid_points,
                             double tol_root) {
  if (grid_points < 32) throw DomainError("grid_points must be at least 32");
  if (!(hi > lo)) throw DomainError("empty scan interval");
  const auto n = static_cast<std::size_t>(grid_points);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  std::vector<double> xs(n);
  std::vector<double> mod(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = lo + step * static_cast<double>(i);
    mod[i] = std::abs(f(xs[i]));
  }
  const double med = median(mod);
  if (!(med > 0.0)) return {};

  std::vector<Root> roots;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(mod[i] <= mod[i - 1] && mod[i] <= mod[i + 1] && mod[i] < kCandidateRatio * med)) continue;
    const double a = xs[i - 1];
    const double b = xs[i + 1];
    const auto g = [&](double x) { return std::norm(f(x)); };
    double x = golden_min(g, a, b, 200);
    x = secant_polish(f, x, 1e-3 * step, a, b);
    const double res = std::abs(f(x));
    if (res < tol_root * med) roots.push_back({x, res, res / med});
  }
  return roots;
}

std::vector<BoundState> find_bound_states(const Background& bg, int grid_points, double tol_root, double tol) {
  const double M = bg.M();
  // Stay strictly inside the rejected edge band.
  const double edge = M * (1.0 - 2.0 * kEdgeMargin);
  const auto f = [&](double E) { return c1_bound_indicator(bg, E, tol); };
  const auto roots = find_roots(f, -edge, edge, grid_points, tol_root);
  std::vector<BoundState> out;
  for (const auto& r : roots) {
    out.push_back({r.x, std::sqrt((M - r.x) * (M + r.x)), r.residual, r.relative_residual, 0});
  }
  std::sort(out.begin(), out.end(), [](const BoundState& a, const BoundState& b) { return a.E < b.E; });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i);
  return out;
}

double richardson_zero(double d1, double d2, double d4) { return (8.0 * d1 - 6.0 * d2 + d4) / 3.0; }

int count_positive_channel(const Background& bg, const std::vector<BoundState>& states) {
  return static_cast<int>(std::count_if(states.begin(), states.end(), [&](const BoundState& s) {
    return s.E > kZeroEnergyRatio * bg.M();
  }));
}

LevinsonReport levinson_check(const Background& bg, double k_min, double k_max, int samples,
                              const std::vector<BoundState>& states, double tol) {
  if (!(k_min > 0.0) || !(k_max > 4.0 * k_min)) throw DomainError("levinson_check needs 0 < 4 k_min < k_max");
  auto ks = scattering::log_grid(k_min, k_max, samples);
  ks.push_back(2.0 * k_min);
  ks.push_back(4.0 * k_min);
  const auto pts = scattering::sweep(bg, ks, soliton::Branch::positive, tol);

  const auto delta_at = [&](double k) {
    const auto it = std::find_if(pts.begin(), pts.end(), [&](const scattering::SweepPoint& p) { return p.k == k; });
    return it->data.delta;
  };
  LevinsonReport rep;
  rep.delta_at_zero = richardson_zero(delta_at(k_min), delta_at(2.0 * k_min), delta_at(4.0 * k_min));
  rep.delta_at_infinity = pts.back().data.delta;
  rep.n_b = count_positive_channel(bg, states);
  rep.discrepancy = std::abs((rep.delta_at_zero - rep.delta_at_infinity) - kPi * (rep.n_b - 0.5));
  return rep;
}

LevinsonReport levinson_check(const Background& bg, double k_min, double k_max, int samples, double tol) {
  return levinson_check(bg, k_min, k_max, samples, find_bound_states(bg), tol);
}

}  // namespace kinkheun::spectrum
