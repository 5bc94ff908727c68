#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kinkheun/io.hpp"
#include "kinkheun/scattering.hpp"
#include "kinkheun/spectrum.hpp"

namespace py = pybind11;
using namespace kinkheun;

namespace {

soliton::Sign parse_sign(const std::string& s) {
  if (s == "kink") return soliton::Sign::kink;
  if (s == "antikink") return soliton::Sign::antikink;
  throw DomainError("sign must be 'kink' or 'antikink'");
}

soliton::Branch parse_branch(const std::string& s) {
  if (s == "positive") return soliton::Branch::positive;
  if (s == "negative") return soliton::Branch::negative;
  throw DomainError("branch must be 'positive' or 'negative'");
}

py::dict to_dict(const scattering::ScatteringData& d) {
  py::dict out;
  out["c1"] = d.c1;
  out["c2"] = d.c2;
  out["t"] = d.t;
  out["r"] = d.r;
  out["T"] = scattering::transmission(d);
  out["R"] = scattering::reflection(d);
  out["delta"] = d.delta;
  out["x0"] = d.x0;
  return out;
}

}  // namespace

PYBIND11_MODULE(_kinkheun, m) {
  m.doc() = "Dirac fermion on a sine-Gordon kink via local Heun functions";

  py::register_exception<Error>(m, "KinkheunError", PyExc_RuntimeError);
  // Registered later, so tried first.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const DomainError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "heun",
      [](cplx a, cplx q, cplx alpha, cplx beta, cplx gamma, cplx delta, cplx z, double tol) {
        const Jet j = heun::evaluate(heun::Params(a, q, alpha, beta, gamma, delta), z, tol);
        return py::make_tuple(j.value, j.deriv);
      },
      py::arg("a"), py::arg("q"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("delta"), py::arg("z"),
      py::arg("tol") = kDefaultTol, "Local Heun function and its z-derivative, continued along the default path.");

  m.def(
      "kink_profile",
      [](double M, double x, const std::string& sign, double beta) {
        return soliton::kink_profile(soliton::Background(M, parse_sign(sign), beta), x);
      },
      py::arg("M"), py::arg("x"), py::arg("sign") = "kink", py::arg("beta") = 1.0);

  m.def(
      "match",
      [](double M, double k, const std::string& sign, const std::string& branch, double x0) {
        const soliton::Background bg(M, parse_sign(sign));
        return to_dict(scattering::match_coefficients(bg, soliton::SpectralPoint::scattering(bg, k, parse_branch(branch)),
                                                      x0));
      },
      py::arg("M"), py::arg("k"), py::arg("sign") = "kink", py::arg("branch") = "positive", py::arg("x0") = 0.0,
      "Scattering coefficients c1, c2, amplitudes t, r, probabilities T, R and the phase shift.");

  m.def(
      "phase_sweep",
      [](double M, double k_min, double k_max, int samples, const std::string& sign) {
        const soliton::Background bg(M, parse_sign(sign));
        py::list out;
        for (const auto& p : scattering::sweep(bg, scattering::log_grid(k_min, k_max, samples))) {
          py::dict d = to_dict(p.data);
          d["k"] = p.k;
          d["E"] = p.E;
          out.append(d);
        }
        return out;
      },
      py::arg("M"), py::arg("k_min"), py::arg("k_max"), py::arg("samples") = 200, py::arg("sign") = "kink");

  m.def(
      "bound_states",
      [](double M, const std::string& sign, int grid_points, double tol_root) {
        py::list out;
        for (const auto& b : spectrum::find_bound_states(soliton::Background(M, parse_sign(sign)), grid_points, tol_root)) {
          out.append(py::dict(py::arg("E") = b.E, py::arg("kappa") = b.kappa, py::arg("residual") = b.residual));
        }
        return out;
      },
      py::arg("M"), py::arg("sign") = "kink", py::arg("grid_points") = spectrum::kDefaultGridPoints,
      py::arg("tol_root") = spectrum::kDefaultRootTol);

  m.def(
      "levinson",
      [](double M, double k_min, double k_max, int samples) {
        const auto r = spectrum::levinson_check(soliton::Background(M, soliton::Sign::kink), k_min, k_max, samples);
        return py::dict(py::arg("delta_at_zero") = r.delta_at_zero, py::arg("delta_at_infinity") = r.delta_at_infinity,
                        py::arg("n_b") = r.n_b, py::arg("discrepancy") = r.discrepancy);
      },
      py::arg("M"), py::arg("k_min"), py::arg("k_max"), py::arg("samples") = 200);

  m.def(
      "validate",
      [](double M, double k) {
        io::RunConfig cfg;
        cfg.M = M;
        cfg.k = k;
        py::list out;
        for (const auto& c : io::cmd_validate(cfg).checks) {
          out.append(py::dict(py::arg("name") = c.name, py::arg("value") = c.value, py::arg("tolerance") = c.tolerance,
                              py::arg("pass") = c.pass));
        }
        return out;
      },
      py::arg("M") = 5.0, py::arg("k") = 2.5, "Oracle cross-checks; same suite as the CLI validate subcommand.");
}
