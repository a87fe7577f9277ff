#include "cli/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli/dataset_io.hpp"
#include "cli/validation.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/oracle.hpp"
#include "qcorr/version.hpp"

namespace qcorr::cli {
namespace {

const std::vector<std::string> kFamilyNames = {"dephasing", "trit-flip", "trit-phase-flip",
                                               "depolarizing"};
const std::vector<std::string> kPresetNames = {"fig1", "fig2", "fig3", "fig4", "fig5",
                                               "fig6", "fig7", "fig8", "fig9", "fig10"};
const std::vector<std::string> kCustomFlags = {"channel-a", "channel-b", "qa", "qb", "t", "mode"};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Flat "key = value" file; '#' starts a comment line. Keys are flag names
// without dashes.
std::vector<std::string> read_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot read config file " + path);
  std::vector<std::string> tokens;
  std::string line;
  int line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") {
      throw UsageError(path + ":" + std::to_string(line_no) + ": invalid key");
    }
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

struct Options {
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
};

CLI::Option* add_value(CLI::App* app, Options& o, const std::string& name,
                       const std::string& help, const std::string& short_name = "") {
  const std::string names = short_name.empty() ? "--" + name : short_name + ",--" + name;
  return app->add_option(names, o.values[name], help)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

CLI::Option* add_bool(CLI::App* app, Options& o, const std::string& name, const std::string& help) {
  return app->add_flag("--" + name, o.flags[name], help)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

void add_output_flags(CLI::App* app, Options& o) {
  add_value(app, o, "output", "Output file, '-' for stdout", "-o");
  add_value(app, o, "format", "csv | json")->check(CLI::IsMember({"csv", "json"}));
  add_bool(app, o, "force", "Overwrite an existing output file");
}

void add_measure_flags(CLI::App* app, Options& o) {
  add_value(app, o, "gd-convention", "paper | raw")->check(CLI::IsMember({"paper", "raw"}));
  add_bool(app, o, "no-clamp", "Report negative GD-bound brackets unclamped");
  add_value(app, o, "seed", "Random seed (unsigned integer)")->check(CLI::NonNegativeNumber);
  add_bool(app, o, "oracle", "Also compute the brute-force geometric discord");
  add_value(app, o, "restarts", "Oracle restarts")->check(CLI::PositiveNumber);
}

void add_channel_flags(CLI::App* app, Options& o) {
  add_value(app, o, "channel-a", "Noise family on qutrit A")->check(CLI::IsMember(kFamilyNames));
  add_value(app, o, "channel-b", "Noise family on qutrit B")->check(CLI::IsMember(kFamilyNames));
  add_value(app, o, "qa", "Decay rate of A: value or min:max:steps");
  add_value(app, o, "qb", "Decay rate of B: value or min:max:steps");
  add_value(app, o, "t", "Time: value or min:max:steps");
}

double parse_number(const std::string& text, const std::string& flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("--" + flag + ": '" + text + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw UsageError("--" + flag + ": '" + text + "' is not a number");
  }
  if (v < 0.0) throw UsageError("--" + flag + ": must be non-negative");
  return v;
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

void emit(const std::string& text, const CliInvocation& inv, std::ostream& out) {
  if (inv.output_path == "-") {
    out << text;
    return;
  }
  write_text_file(resolve_output(inv.output_path), text, inv.has("force"));
}

OutputFormat format_of(const CliInvocation& inv) {
  return inv.has("format") ? *parse_output_format(inv.get("format")) : OutputFormat::Csv;
}

GdConvention convention_of(const CliInvocation& inv) {
  GdConvention conv;
  if (inv.has("gd-convention")) conv.prefactor = *parse_gd_prefactor(inv.get("gd-convention"));
  conv.clamp_nonnegative = !inv.has("no-clamp");
  return conv;
}

std::uint64_t seed_of(const CliInvocation& inv) {
  return inv.has("seed") ? std::stoull(inv.get("seed")) : 0;
}

int restarts_of(const CliInvocation& inv) {
  return inv.has("restarts") ? std::stoi(inv.get("restarts")) : oracle::kDefaultRestarts;
}

void maybe_write_report(const CliInvocation& inv, const RobustnessReport& report) {
  if (!inv.has("report")) return;
  write_text_file(resolve_output(inv.get("report")), report_to_json(report).dump(2) + "\n",
                  inv.has("force"));
}

int cmd_run(const CliInvocation& inv, std::ostream& out) {
  const ExperimentConfig cfg = to_experiment_config(inv);
  const SweepDataset ds = run_sweep(cfg);
  if (inv.has("report")) {
    ExperimentConfig rc = cfg;
    rc.mode = SweepMode::Time;
    if (rc.time.is_fixed()) rc.time = Range::linspace(0.0, rc.time.min, kPresetTimeSteps);
    maybe_write_report(inv, robustness_report(rc));
  }
  emit(format_dataset(ds, format_of(inv)), inv, out);
  return kExitOk;
}

int cmd_preset(const CliInvocation& inv, std::ostream& out) {
  const auto preset = find_preset(inv.get("name"));
  const SweepDataset ds =
      run_preset(*preset, convention_of(inv), inv.has("oracle"), seed_of(inv));
  maybe_write_report(inv, preset_robustness(*preset));
  emit(format_dataset(ds, format_of(inv)), inv, out);
  return kExitOk;
}

int cmd_validate(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  ValidationOptions options;
  if (inv.has("trit-flip-erratum")) options.trit_flip = TritFlipNormalization::Printed;
  if (inv.has("restarts")) options.oracle_restarts = restarts_of(inv);
  if (inv.has("seed")) options.seed = seed_of(inv);
  if (inv.has("oracle-states")) options.oracle_states = std::stoi(inv.get("oracle-states"));
  const auto summary = run_validation(options);
  print_summary(summary, out);
  if (summary.all_passed()) return kExitOk;
  for (const auto& c : summary.checks) {
    if (!c.passed) err << "failed: " << c.name << " (max deviation " << c.max_deviation << ")\n";
  }
  return kExitValidationFailed;
}

int cmd_oracle(const CliInvocation& inv, std::ostream& out) {
  const DensityMatrix rho = [&] {
    if (inv.has("isotropic")) return isotropic_family(parse_number(inv.get("isotropic"), "isotropic"));
    const ExperimentConfig cfg = to_experiment_config(inv);
    if (!cfg.rate_a.is_fixed() || !cfg.rate_b.is_fixed() || !cfg.time.is_fixed()) {
      throw UsageError("oracle needs fixed --qa, --qb and --t");
    }
    return evolve(make_bell_state(3), cfg.family_a, cfg.family_b, cfg.rate_a.min, cfg.rate_b.min,
                  cfg.time.min);
  }();
  const int restarts = restarts_of(inv);
  const std::uint64_t seed = seed_of(inv);
  const auto result = oracle::gd_exact(rho, restarts, seed);

  nlohmann::ordered_json j;
  j["negativity"] = negativity(rho);
  j["gd_lower_raw"] = gd_lower_bound(rho, {GdPrefactor::Raw, true});
  j["gd_lower_paper"] = gd_lower_bound(rho, {GdPrefactor::Paper, true});
  j["gd_exact_raw"] = result.value;
  j["gd_exact_paper"] = 2.0 * result.value;
  j["restarts"] = result.restarts_used;
  j["seed"] = result.seed;
  j["residual_gradient"] = result.residual_gradient;
  j["evaluations"] = result.evaluations;
  auto& basis = j["basis"] = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < result.basis.unitary().rows(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < result.basis.unitary().cols(); ++c) {
      const Complex z = result.basis.unitary()(r, c);
      row.push_back({z.real(), z.imag()});
    }
    basis.push_back(row);
  }
  emit(j.dump(2) + "\n", inv, out);
  return kExitOk;
}

}  // namespace

Range parse_range(const std::string& text, const std::string& flag) {
  const auto first = text.find(':');
  if (first == std::string::npos) return Range::fixed(parse_number(text, flag));
  const auto second = text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw UsageError("--" + flag + ": range must look like min:max:steps");
  }
  const double lo = parse_number(text.substr(0, first), flag);
  const double hi = parse_number(text.substr(first + 1, second - first - 1), flag);
  const std::string steps_text = text.substr(second + 1);
  int steps = 0;
  try {
    std::size_t used = 0;
    steps = std::stoi(steps_text, &used);
    if (used != steps_text.size()) steps = 0;
  } catch (const std::exception&) {
    steps = 0;
  }
  if (steps < 2) throw UsageError("--" + flag + ": range step count must be an integer >= 2");
  if (lo > hi) throw UsageError("--" + flag + ": range needs min <= max");
  return Range::linspace(lo, hi, steps);
}

CliInvocation parse_args(std::span<const std::string> args) {
  // Splice config-file entries in front of the command-line flags so that
  // the latter win under TakeLast.
  std::vector<std::string> tokens(args.begin(), args.end());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string path;
    std::size_t consumed = 0;
    if (tokens[i] == "--config") {
      if (i + 1 >= tokens.size()) throw UsageError("--config needs a file path");
      path = tokens[i + 1];
      consumed = 2;
    } else if (tokens[i].rfind("--config=", 0) == 0) {
      path = tokens[i].substr(9);
      consumed = 1;
    } else {
      continue;
    }
    if (i == 0) throw UsageError("--config must follow the command");
    auto from_file = read_config_file(path);
    tokens.erase(tokens.begin() + std::ptrdiff_t(i), tokens.begin() + std::ptrdiff_t(i + consumed));
    tokens.insert(tokens.begin() + 1, from_file.begin(), from_file.end());
    break;
  }

  CLI::App app{"Qutrit-qutrit correlation dynamics under local noise", "qcorr"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", kVersion);
  Options o;

  auto* run = app.add_subcommand("run", "Custom sweep over rates and time");
  add_channel_flags(run, o);
  add_value(run, o, "mode", "time | rate_time | rate_grid (default: inferred)")
      ->check(CLI::IsMember({"time", "rate_time", "rate_grid"}));
  add_value(run, o, "preset", "Run a figure preset (fig1..fig10)")->check(CLI::IsMember(kPresetNames));
  add_value(run, o, "report", "Write a robustness report (JSON) to this path");
  add_measure_flags(run, o);
  add_output_flags(run, o);

  auto* preset = app.add_subcommand("preset", "Reproduce a figure's data");
  add_value(preset, o, "name", "fig1..fig10")->required()->check(CLI::IsMember(kPresetNames));
  add_value(preset, o, "report", "Write a robustness report (JSON) to this path");
  add_measure_flags(preset, o);
  add_output_flags(preset, o);

  auto* validate = app.add_subcommand("validate", "Run the consistency checks");
  add_bool(validate, o, "trit-flip-erratum", "Use the sqrt(gamma) trit-flip weights");
  add_value(validate, o, "restarts", "Oracle restarts")->check(CLI::PositiveNumber);
  add_value(validate, o, "oracle-states", "Random states compared with the oracle")
      ->check(CLI::NonNegativeNumber);
  add_value(validate, o, "seed", "Random seed")->check(CLI::NonNegativeNumber);

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact geometric discord of one state");
  add_channel_flags(oracle_cmd, o);
  add_value(oracle_cmd, o, "isotropic", "Use the isotropic state with this weight instead");
  add_value(oracle_cmd, o, "restarts", "Oracle restarts")->check(CLI::PositiveNumber);
  add_value(oracle_cmd, o, "seed", "Random seed")->check(CLI::NonNegativeNumber);
  add_value(oracle_cmd, o, "output", "Output file, '-' for stdout", "-o");
  add_bool(oracle_cmd, o, "force", "Overwrite an existing output file");

  CliInvocation inv;
  std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    inv.help = true;
    inv.help_text = app.help();
    return inv;
  } catch (const CLI::CallForVersion&) {
    inv.help = true;
    inv.help_text = std::string(kVersion) + "\n";
    return inv;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  inv.command = name == "run" ? Command::Run
                : name == "preset" ? Command::Preset
                : name == "validate" ? Command::Validate
                : Command::Oracle;
  for (const auto* opt : chosen->get_options()) {
    if (opt->count() == 0) continue;
    if (opt->get_lnames().empty()) continue;
    const std::string key = opt->get_lnames().front();
    if (key == "help") continue;
    if (auto it = o.flags.find(key); it != o.flags.end()) {
      if (it->second) inv.flags[key] = "true";
    } else {
      inv.flags[key] = o.values.at(key);
    }
  }
  if (inv.has("output")) inv.output_path = inv.get("output");

  if (inv.command == Command::Run && inv.has("preset")) {
    for (const auto& flag : kCustomFlags) {
      if (inv.has(flag)) throw UsageError("--preset conflicts with --" + flag);
    }
  }
  // Range syntax is checked here so that malformed values are usage errors.
  for (const char* flag : {"qa", "qb", "t"}) {
    if (inv.has(flag)) parse_range(inv.get(flag), flag);
  }
  if (inv.has("isotropic")) {
    const double p = parse_number(inv.get("isotropic"), "isotropic");
    if (p > 1.0) throw UsageError("--isotropic: weight must lie in [0,1]");
  }
  if (inv.command == Command::Run && !inv.has("preset")) {
    try {
      validate_config(to_experiment_config(inv));
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }
  return inv;
}

ExperimentConfig to_experiment_config(const CliInvocation& inv) {
  ExperimentConfig cfg;
  if (inv.has("channel-a")) cfg.family_a = *parse_channel_family(inv.get("channel-a"));
  if (inv.has("channel-b")) cfg.family_b = *parse_channel_family(inv.get("channel-b"));
  if (inv.has("qa")) cfg.rate_a = parse_range(inv.get("qa"), "qa");
  if (inv.has("qb")) cfg.rate_b = parse_range(inv.get("qb"), "qb");
  if (inv.has("t")) cfg.time = parse_range(inv.get("t"), "t");
  cfg.mode = inv.has("mode") ? *parse_sweep_mode(inv.get("mode")) : infer_sweep_mode(cfg);
  cfg.gd = convention_of(inv);
  cfg.oracle_enabled = inv.has("oracle");
  cfg.oracle_restarts = restarts_of(inv);
  cfg.seed = seed_of(inv);
  return cfg;
}

int execute(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  if (inv.help) {
    out << inv.help_text;
    return kExitOk;
  }
  try {
    switch (inv.command) {
      case Command::Run:
        if (inv.has("preset")) {
          CliInvocation as_preset = inv;
          as_preset.flags["name"] = inv.get("preset");
          return cmd_preset(as_preset, out);
        }
        return cmd_run(inv, out);
      case Command::Preset: return cmd_preset(inv, out);
      case Command::Validate: return cmd_validate(inv, out, err);
      case Command::Oracle: return cmd_oracle(inv, out);
    }
  } catch (const IoError& e) {
    err << "qcorr: " << e.what() << '\n';
    return kExitIo;
  } catch (const UsageError& e) {
    err << "qcorr: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "qcorr: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "qcorr: " << e.what() << '\n';
    return kExitValidationFailed;
  }
  return kExitUsage;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CliInvocation inv;
  try {
    inv = parse_args(args);
  } catch (const UsageError& e) {
    err << "qcorr: " << e.what() << "\nRun 'qcorr --help' for usage.\n";
    return kExitUsage;
  }
  return execute(inv, out, err);
}

}  // namespace qcorr::cli
