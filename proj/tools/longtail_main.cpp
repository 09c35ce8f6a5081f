#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "longtail/experiments.hpp"
#include "longtail/rng.hpp"
#include "longtail/synthgen.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonFlags* flags, bool with_trials) {
  cmd->add_option("--config", flags->config_path,
                  "experiment config file (key=value lines)");
  cmd->add_option("--out", flags->out_path,
                  "output path (default: stdout; overrides report.out)");
  flags->seed_opt =
      cmd->add_option("--seed", flags->seed, "override metrics.seed");
  if (with_trials)
    flags->trials_opt = cmd->add_option("--trials", flags->trials,
                                        "override metrics.trials");
}

longtail::ExperimentConfig load_config(const CommonFlags& flags) {
  longtail::ExperimentConfig cfg;
  if (!flags.config_path.empty())
    cfg = longtail::parse_config_file(flags.config_path);
  if (flags.seed_opt && flags.seed_opt->count()) cfg.master_seed = flags.seed;
  if (flags.trials_opt && flags.trials_opt->count()) {
    if (flags.trials < 2)
      throw longtail::ConfigError("--trials must be >= 2");
    cfg.trials = flags.trials;
  }
  if (!flags.out_path.empty()) cfg.out_path = flags.out_path;
  return cfg;
}

template <typename Fn>
void with_output(const std::string& path, Fn fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw longtail::ConfigError("cannot open output file: " + path);
  fn(out);
}

std::map<std::string, std::string> parse_kv(
    const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw longtail::ConfigError("expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    if (!out.emplace(key, item.substr(eq + 1)).second)
      throw longtail::ConfigError("duplicate parameter: " + key);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"long-tail private learning: sweeps, bound checks, data"};
  app.require_subcommand(1);

  CommonFlags sweep_flags, verify_flags, synth_flags;
  std::string format = "csv";

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Monte Carlo sweep over epsilon or c, with bound columns");
  add_common(sweep, &sweep_flags, true);
  sweep->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "svg"}));

  CLI::App* verify = app.add_subcommand(
      "verify", "check analytic bounds against simulation");
  add_common(verify, &verify_flags, true);

  std::string bound_name;
  std::vector<std::string> bound_params;
  CLI::App* bounds =
      app.add_subcommand("bounds", "evaluate one analytic bound");
  bounds->add_option("name", bound_name, "evaluator name")->required();
  bounds->add_option("params", bound_params, "key=value parameters");

  CLI::App* gensynth = app.add_subcommand(
      "gensynth", "emit the continuous hypercube-cluster dataset as CSV");
  add_common(gensynth, &synth_flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sweep->parsed()) {
      const longtail::ExperimentConfig cfg = load_config(sweep_flags);
      const std::vector<longtail::SweepRow> rows = longtail::run_sweep(cfg);
      with_output(cfg.out_path, [&](std::ostream& out) {
        if (format == "svg")
          longtail::write_sweep_svg(rows, out);
        else
          longtail::write_sweep_csv(rows, out);
      });
      return 0;
    }
    if (verify->parsed()) {
      const longtail::ExperimentConfig cfg = load_config(verify_flags);
      const longtail::VerifyReport report = longtail::verify_bounds(cfg);
      with_output(cfg.out_path, [&](std::ostream& out) {
        longtail::write_verify_report(report, out);
      });
      return report.all_passed() ? 0 : 1;
    }
    if (bounds->parsed()) {
      longtail::eval_bounds_command(bound_name, parse_kv(bound_params),
                                    std::cout);
      return 0;
    }
    if (gensynth->parsed()) {
      const longtail::ExperimentConfig cfg = load_config(synth_flags);
      longtail::SynthParams params;
      params.p = cfg.p;
      params.k = cfg.k;
      params.m = cfg.m;
      params.c = cfg.n_minority
                     ? static_cast<double>(*cfg.n_minority) /
                           static_cast<double>(cfg.m)
                     : cfg.c;
      params.sigma = cfg.sigma;
      params.n_labels = cfg.n_labels;
      params.seed = cfg.master_seed;
      longtail::Rng rng(params.seed);
      const longtail::ContinuousDataset ds =
          longtail::generate_continuous(params, rng);
      with_output(cfg.out_path,
                  [&](std::ostream& out) { longtail::write_csv(ds, out); });
      return 0;
    }
  } catch (const longtail::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
