// kinkheun: scattering and bound states of a Dirac fermion on a sine-Gordon kink.
//
//   kinkheun profile | scatter | phase-sweep | bound-states | validate | heun-eval [flags]
//
// Exit codes: 0 ok, 1 validation failure, 2 usage error, 3 numerical failure.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "kinkheun/io.hpp"

using namespace kinkheun;

namespace {

cplx parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw io::UsageError("--z expects RE or RE,IM");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac fermion on a sine-Gordon kink via local Heun functions"};
  app.require_subcommand(1);
  app.fallthrough();

  io::RunConfig cfg;
  std::string z_text;

  auto* o_M = app.add_option("--M", cfg.M, "fermion mass M (K = +-M)");
  app.add_option("--K-sign", cfg.K_sign, "kink or antikink")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, soliton::Sign>{{"kink", soliton::Sign::kink}, {"antikink", soliton::Sign::antikink}}));
  app.add_option("--beta", cfg.beta, "coupling beta");
  app.add_option("--k", cfg.k, "momentum for scatter/validate/heun-eval");
  auto* o_kmin = app.add_option("--k-min", cfg.k_grid.min, "sweep lower k");
  auto* o_kmax = app.add_option("--k-max", cfg.k_grid.max, "sweep upper k");
  auto* o_samples = app.add_option("--samples", cfg.k_grid.samples, "sweep samples (x samples per side for scatter)");
  app.add_option("--E-branch", cfg.E_branch, "positive or negative energy")
      ->transform(CLI::CheckedTransformer(std::map<std::string, soliton::Branch>{
          {"positive", soliton::Branch::positive}, {"negative", soliton::Branch::negative}}));
  app.add_option("--tol-series", cfg.tol.series, "series / Taylor relative tolerance");
  app.add_option("--tol-continuation", cfg.tol.continuation, "continuation-vs-ODE pass threshold");
  app.add_option("--tol-root", cfg.tol.root, "bound-state residual, relative to the median |c1|");
  app.add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(std::map<std::string, io::Format>{{"csv", io::Format::csv},
                                                                           {"json", io::Format::json}}));
  app.add_option("--out", cfg.output_path, "output file (default stdout)");
  app.add_option("--seed", cfg.seed, "seed recorded with the run");
  app.add_flag("--degrees", cfg.degrees, "phase shifts in degrees");
  app.add_option("--x-max", cfg.x_max, "half-width of the x grid");
  app.add_option("--z", z_text, "Heun argument RE,IM for heun-eval");
  std::string family_text;
  app.add_option("--family", family_text, "local solution family for heun-eval")
      ->check(CLI::IsMember({"U1_FIRST", "U1_SECOND", "U2_FIRST", "U2_SECOND"}));

  auto* profile = app.add_subcommand("profile", "kink profile phi(x)");
  auto* scatter = app.add_subcommand("scatter", "matched u, v traces across x = 0");
  auto* phase = app.add_subcommand("phase-sweep", "phase shift, T and R against k");
  auto* bound = app.add_subcommand("bound-states", "zeros of c1 on |E| < M and the Levinson check");
  auto* validate = app.add_subcommand("validate", "oracle cross-checks");
  auto* heun_eval = app.add_subcommand("heun-eval", "evaluate one local Heun function");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? io::kOk : io::kUsage;
  }

  try {
    if (!z_text.empty()) cfg.z = parse_complex(z_text);
    for (auto f : {soliton::Family::U1_FIRST, soliton::Family::U1_SECOND, soliton::Family::U2_FIRST,
                   soliton::Family::U2_SECOND}) {
      if (family_text == soliton::to_string(f)) cfg.family = f;
    }
    // Bare invocations use the reference configurations.
    if (profile->parsed() && o_M->count() == 0) cfg.M = 1.5;
    if (phase->parsed() && o_M->count() == 0) cfg.M = 2.15e-5;
    if (phase->parsed() || bound->parsed()) {
      if (o_kmin->count() == 0) cfg.k_grid.min = 0.01 * cfg.M;
      if (o_kmax->count() == 0) cfg.k_grid.max = 50.0 * cfg.M;
    }
    if ((scatter->parsed() || profile->parsed()) && o_samples->count() > 0) cfg.x_samples = cfg.k_grid.samples;

    io::Output out;
    if (profile->parsed()) {
      out = io::cmd_profile(cfg);
    } else if (scatter->parsed()) {
      out = io::cmd_scatter(cfg);
    } else if (phase->parsed()) {
      out = io::cmd_phase_sweep(cfg);
    } else if (bound->parsed()) {
      out = io::cmd_bound_states(cfg);
    } else if (validate->parsed()) {
      out = io::cmd_validate(cfg);
    } else if (heun_eval->parsed()) {
      out = io::cmd_heun_eval(cfg);
    }
    io::emit(cfg, out);
    if (validate->parsed() && !out.all_pass()) {
      for (const auto& c : out.checks) {
        if (!c.pass) std::cerr << "FAILED " << c.name << " value=" << c.value << " tolerance=" << c.tolerance << '\n';
      }
      return io::kValidationFailed;
    }
    return io::kOk;
  } catch (const io::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return io::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return io::kNumerical;
  }
}
