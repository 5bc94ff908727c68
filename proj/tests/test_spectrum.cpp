#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "kinkheun/spectrum.hpp"
#include "support.hpp"

using namespace kinkheun;
using namespace kinkheun::spectrum;
using soliton::Background;
using soliton::Sign;
using soliton::SpectralPoint;

namespace {

const std::vector<BoundState>& kink_states() {
  static const auto states = find_bound_states(Background(5.0, Sign::kink));
  return states;
}

bool has_root_near(const std::vector<BoundState>& s, double E, double tol) {
  return std::any_of(s.begin(), s.end(), [&](const BoundState& b) { return std::abs(b.E - E) <= tol; });
}

}  // namespace

TEST_CASE("indicator domain") {
  const Background bg(5.0, Sign::kink);
  CHECK(SpectralPoint::bound(bg, 0.0).k().imag() == 5.0);
  CHECK_THROWS_AS(c1_bound_indicator(bg, 5.0 * (1 - 1e-7)), DomainError);
  CHECK_THROWS_AS(c1_bound_indicator(bg, -5.0 * (1 - 1e-7)), DomainError);
  CHECK_NOTHROW(c1_bound_indicator(bg, 5.0 * (1 - 1e-5)));
}

TEST_CASE("indicator vanishes at the zero mode and the valence mode") {
  const Background bg(5.0, Sign::kink);
  const double scale = std::abs(c1_bound_indicator(bg, 2.0));
  CHECK(std::abs(c1_bound_indicator(bg, 0.0)) < 1e-10 * scale);
  CHECK(std::abs(c1_bound_indicator(bg, 4.231807015500)) < 1e-9 * scale);
  CHECK(std::abs(c1_bound_indicator(bg, -4.0)) > 1e-2 * scale);
}

TEST_CASE("kink bound states") {
  const auto& s = kink_states();
  REQUIRE(s.size() == 2);
  CHECK(has_root_near(s, 0.0, 1e-6 * 5.0));
  CHECK(has_root_near(s, 4.0, 0.05 * 5.0));
  CHECK(s[1].E == doctest::Approx(4.231807015500).epsilon(1e-9));
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].index == static_cast<int>(i));
    CHECK(s[i].kappa == doctest::Approx(std::sqrt(25.0 - s[i].E * s[i].E)).epsilon(1e-14));
    CHECK(s[i].relative_residual <= kDefaultRootTol);
    if (i > 0) CHECK(s[i].E > s[i - 1].E);
  }
  CHECK(count_positive_channel(Background(5.0, Sign::kink), s) == 1);
}

TEST_CASE("antikink spectrum mirrors the kink") {
  const auto anti = find_bound_states(Background(5.0, Sign::antikink));
  const auto& kink = kink_states();
  REQUIRE(anti.size() == kink.size());
  for (const auto& b : kink) CHECK(has_root_near(anti, -b.E, 1e-9 * 5.0));
  CHECK(count_positive_channel(Background(5.0, Sign::antikink), anti) == 0);
}

TEST_CASE("bound-state wavefunctions decay on both sides") {
  const Background bg(5.0, Sign::kink);
  for (const auto& b : kink_states()) {
    const auto sp = SpectralPoint::bound(bg, b.E);
    // The incident family is singular at E = 0, so build only the two that carry the state.
    const auto right = soliton::build_solution(soliton::Family::U1_FIRST, bg, sp);
    const auto left = soliton::build_solution(soliton::Family::U2_SECOND, bg, sp);
    const double kappa = b.kappa;
    for (double side : {1.0, -1.0}) {
      const auto& sol = side > 0 ? right : left;
      const double x3 = side * 3.0 / 5.0;
      const double c = std::abs(soliton::eval_u(sol, x3, kDefaultTol).value) * std::exp(0.9 * kappa * 3.0 / 5.0);
      for (double ax = 3.0 / 5.0; ax <= 6.0 / 5.0 + 1e-12; ax += 0.05) {
        const double u = std::abs(soliton::eval_u(sol, side * ax, kDefaultTol).value);
        CHECK(u <= c * std::exp(-0.9 * kappa * ax) * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("root finder on synthetic functions") {
  // Two simple zeros of a complex function of a real variable.
  const auto f = [](double x) { return cplx{(x - 0.3) * (x + 0.71), 0.2 * (x - 0.3) * (x + 0.71)}; };
  const auto roots = find_roots(f, -1.0, 1.0, 64, 1e-6);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].x == doctest::Approx(-0.71).epsilon(1e-10));
  CHECK(roots[1].x == doctest::Approx(0.3).epsilon(1e-10));

  // A near miss (|f| has a positive minimum) is not a root.
  const auto g = [](double x) { return cplx{x - 0.2, 0.05}; };
  CHECK(find_roots(g, -1.0, 1.0, 64, 1e-6).empty());

  // Free Dirac field: the transmitted wave is the incident one, c1 = 1 everywhere.
  const auto free = [](double) { return cplx{1.0, 0.0}; };
  CHECK(find_roots(free, -1.0, 1.0, 512, 1e-6).empty());

  CHECK_THROWS_AS(find_roots(f, -1.0, 1.0, 31, 1e-6), DomainError);
  CHECK_THROWS_AS(find_bound_states(Background(5.0, Sign::kink), 20), DomainError);
}

TEST_CASE("indicator is continuous away from roots") {
  const Background bg(5.0, Sign::kink);
  const int n = 200;
  const double lo = -5.0 * (1 - 1e-3), hi = 5.0 * (1 - 1e-3);
  const double h = (hi - lo) / (n - 1);
  std::vector<cplx> f(n);
  for (int i = 0; i < n; ++i) f[i] = c1_bound_indicator(bg, lo + i * h);
  for (int i = 1; i + 2 < n; ++i) {
    const double step = std::abs(f[i + 1] - f[i]);
    const double slope = std::max(std::abs(f[i] - f[i - 1]), std::abs(f[i + 2] - f[i + 1]));
    CHECK(step <= 10.0 * slope + 1e-14);
  }
}

TEST_CASE("Richardson extrapolation is exact on quadratics") {
  const auto d = [](double h) { return 1.25 - 3.0 * h + 0.7 * h * h; };
  CHECK(richardson_zero(d(0.01), d(0.02), d(0.04)) == doctest::Approx(1.25).epsilon(1e-13));
}

TEST_CASE("Levinson jump, formula") {
  const Background bg(5.0, Sign::kink);
  const auto none = levinson_check(bg, 0.05, 100.0, 64, std::vector<BoundState>{});
  CHECK(none.n_b == 0);
  CHECK(none.discrepancy ==
        doctest::Approx(std::abs(none.delta_at_zero - none.delta_at_infinity + kPi / 2)).epsilon(1e-15));
  const auto with = levinson_check(bg, 0.05, 100.0, 64, kink_states());
  CHECK(with.n_b == 1);
  CHECK(with.discrepancy ==
        doctest::Approx(std::abs(with.delta_at_zero - with.delta_at_infinity - kPi / 2)).epsilon(1e-15));
}

TEST_CASE("Levinson's theorem in the small-mass configuration") {
  const double M = 2.15e-5;
  const Background bg(M, Sign::kink);
  const auto rep = levinson_check(bg, 0.01 * M, 50.0 * M, 200);
  CHECK(rep.n_b == 1);
  CHECK(rep.delta_at_zero - rep.delta_at_infinity == doctest::Approx(kPi / 2).epsilon(0.05 * 2));
  CHECK(rep.discrepancy <= 0.05 * kPi);
}
