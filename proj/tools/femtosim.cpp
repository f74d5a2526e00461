// femtosim: command-line front end for the two-tier uplink simulator.
//
//   femtosim simulate        [options]   one replicate, metrics summary on stdout
//   femtosim sweep           [options]   grid sweep, all metrics to <out>/sweep.csv
//   femtosim figure <figN>   [options]   canned figure sweep to <out>/<figN>.csv
//   femtosim validate-config [options]
//
// Exit status: 0 success, 1 configuration error, 2 more than 10% of replicates
// flagged (power control did not converge).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "femto/config_io.hpp"
#include "femto/experiment.hpp"

namespace fs = std::filesystem;
using namespace femto;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitFlagged = 2;
constexpr double kFlaggedLimit = 0.10;

struct Options {
  std::string config_path;
  bool defaults = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> replicates;
  std::string out_dir = "out";
  std::string mode;
  std::vector<std::string> strategies;
  std::vector<std::string> settings;
  std::string figure;
  std::uint64_t replicate = 0;
  std::vector<double> n_f_values;
  std::vector<int> gamma_values;
  std::vector<double> epsilon_values;
};

NetworkConfig resolve_config(const Options& opt) {
  if (!opt.config_path.empty() && opt.defaults) {
    throw ConfigError("--config and --defaults are mutually exclusive");
  }
  Overrides overrides;
  for (const auto& s : opt.settings) overrides.push_back(split_override(s));
  if (opt.seed) overrides.emplace_back("seed", std::to_string(*opt.seed));
  if (opt.replicates) overrides.emplace_back("replicates", std::to_string(*opt.replicates));
  if (!opt.mode.empty()) overrides.emplace_back("femtocell_count_mode", opt.mode);
  return opt.config_path.empty() ? default_config(overrides)
                                 : parse_config_file(opt.config_path, overrides);
}

std::vector<Strategy> resolve_strategies(const Options& opt) {
  std::vector<Strategy> out;
  for (const auto& s : opt.strategies) out.push_back(parse_strategy(s));
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

int finish(const SweepResult& result) {
  double worst = 0.0;
  for (const auto& row : result.rows) worst = std::max(worst, row.flagged_fraction);
  if (worst > kFlaggedLimit) {
    std::cerr << "warning: " << worst * 100.0
              << "% of replicates at some grid point did not converge\n";
    return kExitFlagged;
  }
  return 0;
}

void print_record(std::ostream& out, Strategy strategy, const MetricsRecord& rec) {
  out << "[" << to_string(strategy) << "]\n";
  for (const auto& f : metric_fields()) {
    out << "  " << f.name << ": " << format_double(f.get(rec)) << '\n';
  }
}

int cmd_simulate(const Options& opt) {
  const auto config = resolve_config(opt);
  auto strategies = resolve_strategies(opt);
  if (strategies.empty()) strategies = {Strategy::split, Strategy::pc, Strategy::sic};
  std::cout << "seed: " << config.seed << "\nreplicate: " << opt.replicate
            << "\nn_f_mean: " << format_double(config.n_f_mean)
            << "\nkappa_m: " << format_double(config.kappa_m)
            << "\np_femto_const_dbm: " << format_double(config.femto_const_power_dbm()) << '\n';
  bool flagged = false;
  for (auto s : strategies) {
    const auto rec = run_replicate(config, s, opt.replicate);
    print_record(std::cout, s, rec);
    flagged = flagged || !rec.converged;
  }
  return flagged ? kExitFlagged : 0;
}

int cmd_sweep(const Options& opt) {
  SweepSpec spec;
  spec.base = resolve_config(opt);
  spec.replicates = spec.base.replicates;
  spec.n_f_values = opt.n_f_values.empty() ? default_n_f_axis() : opt.n_f_values;
  spec.gamma_values = opt.gamma_values.empty() ? std::vector<int>{spec.base.gamma} : opt.gamma_values;
  spec.epsilon_values =
      opt.epsilon_values.empty() ? std::vector<double>{spec.base.epsilon} : opt.epsilon_values;
  spec.strategies = resolve_strategies(opt);
  if (spec.strategies.empty()) spec.strategies = {Strategy::split, Strategy::pc, Strategy::sic};
  validate(spec);

  fs::create_directories(opt.out_dir);
  const auto result = run_sweep(spec);
  write_file(fs::path(opt.out_dir) / "sweep.csv", sweep_csv(result));
  write_file(fs::path(opt.out_dir) / "sweep.manifest.json", manifest_json(spec));
  std::cerr << "wrote " << (fs::path(opt.out_dir) / "sweep.csv").string() << '\n';
  return finish(result);
}

int cmd_figure(const Options& opt) {
  const auto id = parse_figure_id(opt.figure);
  FigureOptions fo;
  fo.base = resolve_config(opt);
  if (!opt.n_f_values.empty()) fo.n_f_values = opt.n_f_values;
  if (!opt.epsilon_values.empty()) fo.epsilon_values = opt.epsilon_values;
  const auto spec = figure_spec(id, fo);
  validate(spec);

  fs::create_directories(opt.out_dir);
  const auto data = figure_dataset(id, fo);
  const auto name = to_string(id);
  write_file(fs::path(opt.out_dir) / (name + ".csv"), data.csv);
  write_file(fs::path(opt.out_dir) / (name + ".manifest.json"), manifest_json(spec));
  std::cerr << "wrote " << (fs::path(opt.out_dir) / (name + ".csv")).string() << '\n';
  return finish(data.result);
}

int cmd_validate(const Options& opt) {
  const auto config = resolve_config(opt);
  std::cout << "configuration ok\n" << format_config(config);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-tier macrocell/femtocell uplink Monte Carlo simulator"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "key=value config file or run manifest");
    cmd->add_flag("--defaults", opt.defaults, "start from the built-in default network");
    cmd->add_option("--seed", opt.seed, "master seed");
    cmd->add_option("--replicates", opt.replicates, "Monte Carlo replicates per grid point");
    cmd->add_option("--mode", opt.mode, "femtocell count mode")
        ->check(CLI::IsMember({"poisson", "fixed"}));
    cmd->add_option("--set", opt.settings, "override a parameter, key=value (repeatable)");
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out_dir, "output directory (created if absent)");
    cmd->add_option("--n-f", opt.n_f_values, "N_f axis values")->delimiter(',');
    cmd->add_option("--epsilon", opt.epsilon_values, "epsilon axis values")->delimiter(',');
  };
  auto add_strategy = [&](CLI::App* cmd) {
    cmd->add_option("--strategy", opt.strategies, "split|pc|sic (repeatable or comma list)")
        ->delimiter(',')
        ->check(CLI::IsMember({"split", "pc", "sic"}));
  };

  auto* simulate = app.add_subcommand("simulate", "run one replicate and print its metrics");
  add_common(simulate);
  add_strategy(simulate);
  simulate->add_option("--replicate", opt.replicate, "replicate index");

  auto* sweep = app.add_subcommand("sweep", "sweep a parameter grid");
  add_common(sweep);
  add_strategy(sweep);
  add_output(sweep);
  sweep->add_option("--gamma", opt.gamma_values, "gamma axis values")->delimiter(',');

  auto* figure = app.add_subcommand("figure", "produce one figure dataset");
  add_common(figure);
  add_output(figure);
  figure->add_option("figure", opt.figure, "fig2 ... fig8")->required();

  auto* validate_cmd = app.add_subcommand("validate-config", "check a configuration");
  add_common(validate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(opt);
    if (sweep->parsed()) return cmd_sweep(opt);
    if (figure->parsed()) return cmd_figure(opt);
    return cmd_validate(opt);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
