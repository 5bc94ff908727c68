#include "kinkheun/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include "kinkheun/heun.hpp"
#include "kinkheun/oracle.hpp"
#include "kinkheun/scattering.hpp"
#include "kinkheun/spectrum.hpp"

namespace kinkheun::io {

using nlohmann::json;
using soliton::Background;
using soliton::SpectralPoint;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kUnitarityTol = 1e-6;
constexpr double kCrossCheckTol = 1e-6;
constexpr double kContinuityTol = 1e-6;
constexpr double kLevinsonTol = 0.05 * kPi;

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

std::string_view to_string(soliton::Sign s) { return s == soliton::Sign::kink ? "kink" : "antikink"; }
std::string_view to_string(soliton::Branch b) { return b == soliton::Branch::positive ? "positive" : "negative"; }

}  // namespace

void RunConfig::validate() const {
  if (!positive_finite(M)) throw UsageError("--M must be positive and finite");
  if (beta == 0.0 || !std::isfinite(beta)) throw UsageError("--beta must be nonzero and finite");
  if (!std::isfinite(k)) throw UsageError("--k must be finite");
  if (!positive_finite(k_grid.min)) throw UsageError("--k-min must be positive");
  if (!(k_grid.max > k_grid.min) || !std::isfinite(k_grid.max)) throw UsageError("--k-max must exceed --k-min");
  if (k_grid.samples < 2) throw UsageError("--samples must be at least 2");
  if (!positive_finite(tol.series) || !positive_finite(tol.continuation) || !positive_finite(tol.root)) {
    throw UsageError("tolerances must be positive");
  }
  if (!(x_max >= 0.0) || !std::isfinite(x_max)) throw UsageError("--x-max must be non-negative");
  if (x_samples < 2) throw UsageError("--samples must be at least 2");
}

Background RunConfig::background() const { return Background(M, K_sign, beta); }

bool Output::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

json to_json(const RunConfig& cfg) {
  json j;
  j["M"] = cfg.M;
  j["K_sign"] = to_string(cfg.K_sign);
  j["beta"] = cfg.beta;
  j["k"] = cfg.k;
  j["k_grid"] = {{"min", cfg.k_grid.min}, {"max", cfg.k_grid.max}, {"samples", cfg.k_grid.samples}};
  j["E_branch"] = to_string(cfg.E_branch);
  j["tolerances"] = {{"series", cfg.tol.series}, {"continuation", cfg.tol.continuation}, {"root", cfg.tol.root}};
  j["output_format"] = cfg.format == Format::csv ? "csv" : "json";
  j["output_path"] = cfg.output_path;
  j["seed"] = cfg.seed;
  j["degrees"] = cfg.degrees;
  return j;
}

std::vector<std::string> sweep_columns() { return {"k", "E", "c1_re", "c1_im", "c2_re", "c2_im", "T", "R", "delta"}; }

std::vector<double> sweep_row(const SweepRecord& r, bool degrees) {
  const double delta = degrees ? r.delta * 180.0 / kPi : r.delta;
  return {r.k, r.E, r.c1.real(), r.c1.imag(), r.c2.real(), r.c2.imag(), r.T, r.R, delta};
}

json to_json(const SweepRecord& r) {
  json j = json::object();
  const auto cols = sweep_columns();
  const auto row = sweep_row(r, false);
  for (std::size_t i = 0; i < cols.size(); ++i) j[cols[i]] = row[i];
  return j;
}

SweepRecord sweep_record_from_json(const json& j) {
  const auto d = [&](const char* key) { return j.at(key).get<double>(); };
  return {d("k"), d("E"), {d("c1_re"), d("c1_im")}, {d("c2_re"), d("c2_im")}, d("T"), d("R"), d("delta")};
}

void write_csv(const Output& out, std::ostream& os) {
  if (out.columns.empty()) {
    os << "check,value,tolerance,pass\n";
    for (const auto& c : out.checks) {
      os << c.name << ',' << format_double(c.value) << ',' << format_double(c.tolerance) << ','
         << (c.pass ? "true" : "false") << '\n';
    }
  } else {
    for (std::size_t i = 0; i < out.columns.size(); ++i) os << (i ? "," : "") << out.columns[i];
    os << '\n';
    for (const auto& row : out.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
      os << '\n';
    }
    for (const auto& c : out.checks) {
      os << "# check " << c.name << " value=" << format_double(c.value) << " tolerance=" << format_double(c.tolerance)
         << " pass=" << (c.pass ? "true" : "false") << '\n';
    }
  }
  for (const auto& n : out.notes) os << "# " << n << '\n';
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void write_json(const RunConfig& cfg, const Output& out, std::ostream& os) {
  json j = out.extra;
  j["config"] = to_json(cfg);
  json records = json::array();
  for (const auto& row : out.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < out.columns.size() && i < row.size(); ++i) r[out.columns[i]] = number_or_null(row[i]);
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  json checks = json::array();
  for (const auto& c : out.checks) {
    checks.push_back({{"name", c.name},
                      {"value", number_or_null(c.value)},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass},
                      {"detail", c.detail}});
  }
  j["checks"] = std::move(checks);
  if (!out.notes.empty()) j["notes"] = out.notes;
  os << j.dump(2) << '\n';
}

void emit(const RunConfig& cfg, const Output& out) {
  const auto write = [&](std::ostream& os) {
    if (cfg.format == Format::csv) {
      write_csv(out, os);
    } else {
      write_json(cfg, out, os);
    }
  };
  if (cfg.output_path.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + cfg.output_path);
  write(f);
  if (!f) throw UsageError("failed writing " + cfg.output_path);
}

Output cmd_profile(const RunConfig& cfg) {
  cfg.validate();
  const Background bg = cfg.background();
  const double x_max = cfg.x_max > 0.0 ? cfg.x_max : 4.0 / bg.M();
  const int n = cfg.x_samples;
  Output out;
  out.columns = {"x", "phi"};
  for (int i = 0; i < n; ++i) {
    const double x = x_max * (2.0 * i - (n - 1)) / (n - 1);
    out.rows.push_back({x, soliton::kink_profile(bg, x)});
  }
  out.extra["topological_charge"] = soliton::topological_charge(bg);
  return out;
}

Output cmd_scatter(const RunConfig& cfg) {
  cfg.validate();
  const Background bg = cfg.background();
  const auto sp = SpectralPoint::scattering(bg, cfg.k, cfg.E_branch);
  const scattering::MatchedWave w(bg, sp, 0.0, cfg.tol.series);
  const double x_max = cfg.x_max > 0.0 ? cfg.x_max : 10.0 / std::abs(bg.K());
  const int n = cfg.x_samples;

  Output out;
  out.columns = {"x",    "side",  "u_re",   "u_im",   "du_re",  "du_im",
                 "v_re", "v_im", "inc_re", "inc_im", "ref_re", "ref_im"};
  std::vector<double> left0;
  std::vector<double> right0;
  for (int i = 0; i < n; ++i) {
    const double x = -x_max + x_max * i / (n - 1);
    const Jet u = w.left_u(x);
    const cplx v = w.v_of(x, u);
    const Jet inc = w.incident_u(x);
    const Jet ref = w.reflected_u(x);
    out.rows.push_back({x, -1.0, u.value.real(), u.value.imag(), u.deriv.real(), u.deriv.imag(), v.real(), v.imag(),
                        inc.value.real(), inc.value.imag(), ref.value.real(), ref.value.imag()});
  }
  left0 = out.rows.back();
  for (int i = 0; i < n; ++i) {
    const double x = x_max * i / (n - 1);
    const Jet u = w.right_u(x);
    const cplx v = w.v_of(x, u);
    out.rows.push_back(
        {x, 1.0, u.value.real(), u.value.imag(), u.deriv.real(), u.deriv.imag(), v.real(), v.imag(), 0, 0, 0, 0});
    if (i == 0) right0 = out.rows.back();
  }
  double jump = 0.0;
  for (std::size_t c = 2; c < 8; ++c) jump = std::max(jump, std::abs(left0[c] - right0[c]));
  out.checks.push_back({"continuity_x0", jump, kContinuityTol, jump < kContinuityTol, "max |left - right| at x = 0"});

  const auto& d = w.data();
  out.extra["scattering"] = {{"c1", {d.c1.real(), d.c1.imag()}}, {"c2", {d.c2.real(), d.c2.imag()}},
                             {"t", {d.t.real(), d.t.imag()}},    {"r", {d.r.real(), d.r.imag()}},
                             {"T", scattering::transmission(d)}, {"R", scattering::reflection(d)},
                             {"delta", d.delta},                 {"E", sp.E()}};
  out.notes.push_back("E=" + format_double(sp.E()) + " c1=" + format_double(d.c1.real()) + "," +
                      format_double(d.c1.imag()) + " c2=" + format_double(d.c2.real()) + "," +
                      format_double(d.c2.imag()));
  return out;
}

std::vector<SweepRecord> sweep_records(const RunConfig& cfg) {
  cfg.validate();
  const Background bg = cfg.background();
  const auto ks = scattering::log_grid(cfg.k_grid.min, cfg.k_grid.max, cfg.k_grid.samples);
  const auto pts = scattering::sweep(bg, ks, cfg.E_branch, cfg.tol.series);
  std::vector<SweepRecord> recs;
  recs.reserve(pts.size());
  for (const auto& p : pts) {
    recs.push_back({p.k, p.E, p.data.c1, p.data.c2, scattering::transmission(p.data), scattering::reflection(p.data),
                    p.data.delta});
  }
  return recs;
}

Output cmd_phase_sweep(const RunConfig& cfg) {
  const auto recs = sweep_records(cfg);
  Output out;
  out.columns = sweep_columns();
  double max_step = 0.0;
  double max_unit = 0.0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    out.rows.push_back(sweep_row(recs[i], cfg.degrees));
    max_unit = std::max(max_unit, std::abs(recs[i].T + recs[i].R - 1.0));
    if (i > 0) max_step = std::max(max_step, std::abs(recs[i].delta - recs[i - 1].delta));
  }
  out.checks.push_back({"unwrap_step", max_step, kPi / 2.0, max_step < kPi / 2.0, "max |delta_{i+1} - delta_i|"});
  out.checks.push_back({"unitarity", max_unit, kUnitarityTol, max_unit <= kUnitarityTol, "max |T + R - 1|"});
  const double drop = recs.front().delta - recs.back().delta;
  out.extra["delta_drop"] = drop;
  out.notes.push_back("delta(k_min)-delta(k_max)=" + format_double(drop) + " rad");
  return out;
}

Output cmd_bound_states(const RunConfig& cfg) {
  cfg.validate();
  const Background bg = cfg.background();
  const auto states = spectrum::find_bound_states(bg, spectrum::kDefaultGridPoints, cfg.tol.root, cfg.tol.series);
  const auto rep =
      spectrum::levinson_check(bg, cfg.k_grid.min, cfg.k_grid.max, cfg.k_grid.samples, states, cfg.tol.series);
  Output out;
  out.columns = {"index", "E", "kappa", "residual"};
  for (const auto& s : states) out.rows.push_back({static_cast<double>(s.index), s.E, s.kappa, s.residual});
  out.checks.push_back({"levinson_discrepancy", rep.discrepancy, kLevinsonTol, rep.discrepancy <= kLevinsonTol,
                        "|delta(0) - delta(inf) - pi (n_b - 1/2)|"});
  out.extra["levinson"] = {{"delta_at_zero", rep.delta_at_zero},
                           {"delta_at_infinity", rep.delta_at_infinity},
                           {"n_b", rep.n_b},
                           {"discrepancy", rep.discrepancy}};
  out.notes.push_back("levinson delta_at_zero=" + format_double(rep.delta_at_zero) +
                      " delta_at_infinity=" + format_double(rep.delta_at_infinity) + " n_b=" + std::to_string(rep.n_b) +
                      " discrepancy=" + format_double(rep.discrepancy));
  return out;
}

namespace {

template <class F>
void run_check(Output& out, const std::string& name, double tolerance, F&& f) {
  try {
    const double v = f();
    out.checks.push_back({name, v, tolerance, v <= tolerance, ""});
  } catch (const std::exception& e) {
    out.checks.push_back({name, kNaN, tolerance, false, e.what()});
  }
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

Output cmd_validate(const RunConfig& cfg) {
  cfg.validate();
  const Background bg = cfg.background();
  const auto sp = SpectralPoint::scattering(bg, cfg.k, cfg.E_branch);
  const double tol = cfg.tol.series;
  const double inv_k = 1.0 / std::abs(bg.K());
  Output out;

  run_check(out, "continuation_vs_ode", cfg.tol.continuation, [&] {
    const auto sol = soliton::build_solution(soliton::Family::U1_FIRST, bg, sp);
    const cplx z{0.5, 0.5};
    return rel(heun::evaluate(sol.params(), z, tol).value, oracle::heun_ode(sol.params(), z).value);
  });

  std::optional<scattering::ScatteringData> data;
  std::optional<oracle::OracleCoefficients> orc;
  run_check(out, "oracle_c1", kCrossCheckTol, [&] {
    data = scattering::match_coefficients(bg, sp, 0.0, tol);
    orc = oracle::oracle_coefficients(bg, sp);
    return rel(orc->c1, data->c1);
  });
  run_check(out, "oracle_c2", kCrossCheckTol, [&] {
    if (!data || !orc) throw Error("oracle coefficients unavailable");
    return rel(orc->c2, data->c2);
  });

  run_check(out, "unitarity", kUnitarityTol, [&] {
    if (!data) throw Error("scattering data unavailable");
    return std::abs(scattering::transmission(*data) + scattering::reflection(*data) - 1.0);
  });

  run_check(out, "matching_invariance", kCrossCheckTol, [&] {
    const cplx ref = scattering::match_coefficients(bg, sp, 0.0, tol).c1;
    double worst = 0.0;
    for (double s : {-0.2, -0.1, 0.1, 0.2}) {
      worst = std::max(worst, rel(scattering::match_coefficients(bg, sp, s * inv_k, tol).c1, ref));
    }
    return worst;
  });

  run_check(out, "overlap_agreement", kCrossCheckTol, [&] {
    const scattering::MatchedWave w(bg, sp, 0.0, tol);
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double x = (-0.5 + 0.05 * i) * inv_k;
      const Jet l = w.left_u(x);
      const Jet r = w.right_u(x);
      worst = std::max(worst, std::abs(l.value - r.value) / std::abs(r.value));
      worst = std::max(worst, std::abs(l.deriv - r.deriv) / std::abs(r.deriv));
    }
    return worst;
  });

  run_check(out, "residual_max", kCrossCheckTol, [&] {
    const scattering::MatchedWave w(bg, sp, 0.0, tol);
    const int n = 401;
    const double x0 = -10.0 * inv_k;
    const double h = 20.0 * inv_k / (n - 1);
    std::vector<cplx> u;
    std::vector<cplx> v;
    for (int i = 0; i < n; ++i) {
      const double x = x0 + h * i;
      const Jet j = w.u(x);
      u.push_back(j.value);
      v.push_back(w.v_of(x, j));
    }
    return oracle::residuals(x0, h, u, v, bg, sp).max_rel_residual;
  });
  return out;
}

Output cmd_heun_eval(const RunConfig& cfg) {
  cfg.validate();
  if (!cfg.z) throw UsageError("heun-eval needs --z");
  const Background bg = cfg.background();
  const auto sp = SpectralPoint::scattering(bg, cfg.k, cfg.E_branch);
  const auto sol = soliton::build_solution(cfg.family, bg, sp);
  const Jet j = heun::evaluate(sol.params(), *cfg.z, cfg.tol.series);
  Output out;
  out.columns = {"z_re", "z_im", "value_re", "value_im", "deriv_re", "deriv_im"};
  out.rows.push_back({cfg.z->real(), cfg.z->imag(), j.value.real(), j.value.imag(), j.deriv.real(), j.deriv.imag()});
  const auto& p = sol.params();
  out.notes.push_back("family=" + std::string(soliton::to_string(cfg.family)) + " q=" + format_double(p.q().real()) +
                      "," + format_double(p.q().imag()) + " gamma=" + format_double(p.gamma().real()) + "," +
                      format_double(p.gamma().imag()));
  return out;
}

}  // namespace kinkheun::io
