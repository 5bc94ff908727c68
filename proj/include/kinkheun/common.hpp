#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace kinkheun {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// Default relative tolerance for series and local Taylor sums.
inline constexpr double kDefaultTol = 1e-15;

// A function value together with its first derivative at one point.
struct Jet {
  cplx value{};
  cplx deriv{};
};

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Error hierarchy. Every numerical failure surfaced by the library derives
// from Error so callers (the CLI in particular) can map it to one exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class DegenerateGammaError : public Error {
 public:
  using Error::Error;
};

class PathError : public Error {
 public:
  using Error::Error;
};

class DegenerateBasisError : public Error {
 public:
  using Error::Error;
};

class StepFailure : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace kinkheun
