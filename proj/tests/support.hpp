#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>

#include "kinkheun/common.hpp"
#include "kinkheun/heun.hpp"

namespace support {

using kinkheun::cplx;

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// Fixed seed, overridable through KINKHEUN_SEED.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("KINKHEUN_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240607ULL;
}

class Gen {
 public:
  explicit Gen(std::uint64_t s = seed()) : eng_(s) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  cplx box(double half) { return {uniform(-half, half), uniform(-half, half)}; }
  cplx polar(double rmin, double rmax) {
    const double r = uniform(rmin, rmax);
    const double t = uniform(-kinkheun::kPi, kinkheun::kPi);
    return std::polar(r, t);
  }

  // a away from 0 and 1, gamma with Re in [0.5, 2.5] (never a non-positive integer).
  kinkheun::heun::Params heun_params() {
    cplx a;
    do {
      a = polar(0.5, 3.0);
    } while (std::abs(a - 1.0) < 0.3);
    const cplx gamma{uniform(0.5, 2.5), uniform(-1.0, 1.0)};
    return {a, box(2.0), box(2.0), box(2.0), gamma, box(2.0)};
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace support
