#pragma once

// Run configuration, sweep records and the subcommand drivers behind the CLI.
// Every driver returns an Output table that can be written as CSV (header,
// rows, then '#' note lines) or JSON ({config, records, checks}).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kinkheun/common.hpp"
#include "kinkheun/soliton.hpp"

namespace kinkheun::io {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kUsage = 2, kNumerical = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct KGrid {
  double min = 0.05;
  double max = 20.0;
  int samples = 200;
};

struct Tolerances {
  double series = 1e-15;
  double continuation = 1e-8;
  double root = 1e-6;
};

struct RunConfig {
  double M = 5.0;
  soliton::Sign K_sign = soliton::Sign::kink;
  double beta = 1.0;
  double k = 2.5;
  KGrid k_grid;
  soliton::Branch E_branch = soliton::Branch::positive;
  Tolerances tol;
  Format format = Format::csv;
  std::string output_path;  // empty: stdout
  std::uint64_t seed = 20240607;
  bool degrees = false;
  double x_max = 0.0;       // 0: 10/|K| for scatter, 4/M for profile
  int x_samples = 201;      // per side for scatter, total for profile
  std::optional<cplx> z;    // heun-eval
  soliton::Family family = soliton::Family::U1_FIRST;

  // Throws UsageError on a violated invariant.
  void validate() const;
  soliton::Background background() const;
};

struct SweepRecord {
  double k;
  double E;
  cplx c1;
  cplx c2;
  double T;
  double R;
  double delta;

  bool operator==(const SweepRecord&) const = default;
};

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool pass;
  std::string detail;
};

struct Output {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> notes;  // CSV '#' lines; JSON "notes"
  std::vector<Check> checks;
  nlohmann::json extra = nlohmann::json::object();  // merged into the JSON top level

  bool all_pass() const;
};

// 17 significant digits, locale independent.
std::string format_double(double v);

nlohmann::json to_json(const RunConfig& cfg);
nlohmann::json to_json(const SweepRecord& r);
SweepRecord sweep_record_from_json(const nlohmann::json& j);
std::vector<std::string> sweep_columns();
std::vector<double> sweep_row(const SweepRecord& r, bool degrees);

void write_csv(const Output& out, std::ostream& os);
void write_json(const RunConfig& cfg, const Output& out, std::ostream& os);
// Writes to cfg.output_path or stdout in cfg.format.
void emit(const RunConfig& cfg, const Output& out);

Output cmd_profile(const RunConfig& cfg);
Output cmd_scatter(const RunConfig& cfg);
Output cmd_phase_sweep(const RunConfig& cfg);
Output cmd_bound_states(const RunConfig& cfg);
Output cmd_validate(const RunConfig& cfg);
Output cmd_heun_eval(const RunConfig& cfg);

std::vector<SweepRecord> sweep_records(const RunConfig& cfg);

}  // namespace kinkheun::io
