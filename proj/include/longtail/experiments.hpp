#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "longtail/bounds.hpp"
#include "longtail/distribution.hpp"
#include "longtail/metrics.hpp"
#include "longtail/prior.hpp"

namespace longtail {

// Raised for malformed or inconsistent configuration, including unknown
// config keys and bad CLI parameter sets. The CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key=value experiment configuration. Keys use dotted section prefixes
// (dist.p, mech.epsilon, ...); unknown keys are rejected so typos fail loud.
struct ExperimentConfig {
  // dist.*
  double p = 0.2;
  double k = 10.0;
  double c = 1.0;  // minority atom count N = ceil(c * m)
  std::optional<std::int64_t> n_minority;  // overrides c when set
  std::int64_t m = 10000;

  // prior.*
  std::string prior_preset = "uniform";  // "uniform" or "skewed:<q>"
  int n_labels = 2;

  // mech.*: at most one of epsilon / eta; eta = 0 is the non-private
  // baseline (epsilon = +infinity).
  std::optional<double> epsilon;
  std::optional<double> eta;

  // privacy.*
  double delta = 1e-3;

  // metrics.*
  std::int64_t trials = 200;
  std::uint64_t master_seed = 1;

  // sweep.*
  std::string sweep_variable = "epsilon";  // "epsilon" or "c"
  std::vector<double> grid;

  // verify.*
  double alpha = 1.0;
  std::int64_t rare_ell_max = 4;

  // synth.*
  double sigma = 0.1;

  // report.*
  double accuracy_threshold = 0.8;
  std::string out_path;
};

// Parses the flat format: one key=value per line, '#' lines and blank lines
// skipped, whitespace around keys and values trimmed. Duplicate keys and
// unknown keys raise ConfigError, as do out-of-domain values.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

// Derived pieces, shared by the sweep and verify drivers.
std::int64_t effective_n_minority(const ExperimentConfig& cfg);
DistributionSpec distribution_of(const ExperimentConfig& cfg);
LabelPrior prior_of(const ExperimentConfig& cfg);
// The configured flip rate: eta directly, or calibrated from epsilon.
// Empty when neither mech key is set.
std::optional<double> eta_of(const ExperimentConfig& cfg);

// One grid point's results. Bounds columns are the clamped bound values and
// are emitted even when flagged invalid (the _valid columns say which).
struct SweepRow {
  double swept = 0.0;
  double epsilon = 0.0;  // realized; +infinity for the eta = 0 baseline
  double err_overall = 0.0;
  double se_overall = 0.0;
  double err_minority = 0.0;
  double se_minority = 0.0;
  double err_majority = 0.0;
  double se_majority = 0.0;
  double gamma = 0.0;
  double se_gamma = 0.0;
  double thm2_gamma_lower = 0.0;
  bool thm2_valid = false;
  double thm3_err_lower = 0.0;
  double thm3_fair_upper = 0.0;
  bool thm3_valid = false;
  bool accuracy_ok = false;  // 1 - err_overall >= report.accuracy_threshold
  double wall_time_s = 0.0;  // excluded from the determinism contract
};

// Runs one Monte Carlo experiment per grid point (concurrently; rows come
// back in grid order) and attaches the analytic bounds evaluated at each
// point's realized parameters. Deterministic for a fixed master seed.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);

// CSV with a '# schema=1' first line; numeric fields use %.17g so a parse
// round-trips bit-exactly, booleans are 0/1.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
std::vector<SweepRow> parse_sweep_csv(std::istream& in);

// Minimal self-contained line plot of gamma against the swept variable.
void write_sweep_svg(const std::vector<SweepRow>& rows, std::ostream& out);

enum class VerifyStatus { pass, fail, not_applicable };

struct VerifyEntry {
  std::string name;
  VerifyStatus status = VerifyStatus::not_applicable;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyEntry> entries;

  bool all_passed() const {
    for (const auto& e : entries)
      if (e.status == VerifyStatus::fail) return false;
    return true;
  }
};

// Bound-versus-simulation checks. Statistical checks get slack
// 3 * stderr + 2/sqrt(m); the 2/sqrt(m) band absorbs finite-size effects in
// bounds that hold asymptotically. The non-private baseline (eta = 0) marks
// the privacy-dependent checks not-applicable instead of failing them.
VerifyReport verify_bounds(const ExperimentConfig& cfg);
void write_verify_report(const VerifyReport& report, std::ostream& out);

// Evaluates one named bound with key=value parameters and prints a labeled
// table (raw and clamped values, direction, validity). Unknown names and
// missing parameters raise ConfigError. Names: thm1, thm2, thm3, thm3eps,
// lemma2, s0, qthresh, lemma1floor, c2, gausstail, klbern, normcdf.
void eval_bounds_command(const std::string& name,
                         const std::map<std::string, std::string>& args,
                         std::ostream& out);

}  // namespace longtail
