#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>

#include "qcorr/error.hpp"
#include "qcorr/sweep.hpp"

namespace qcorr::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailed = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

/// Malformed command line or config file (exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Command { Run, Preset, Validate, Oracle };

struct CliInvocation {
  Command command = Command::Run;
  /// Flag name (without leading dashes) to its final value; flags given on
  /// the command line override values read from --config.
  std::map<std::string, std::string> flags;
  /// "-" means standard output.
  std::string output_path = "-";
  bool help = false;
  std::string help_text;

  bool has(const std::string& flag) const { return flags.count(flag) != 0; }
  const std::string& get(const std::string& flag) const { return flags.at(flag); }
};

/// Environment variable naming the directory that relative --output paths
/// are resolved against.
inline constexpr const char* kOutputDirEnv = "QCORR_OUTPUT_DIR";

/// Parses arguments (without the program name). Throws UsageError on an
/// unknown command or flag, a malformed value or range, an unknown channel
/// family, or preset flags mixed with custom sweep flags.
CliInvocation parse_args(std::span<const std::string> args);

/// "0.5" -> fixed value; "0:2:50" -> 50 points from 0 to 2. Throws UsageError.
Range parse_range(const std::string& text, const std::string& flag);

/// Experiment described by a `run` (or `oracle`) invocation.
ExperimentConfig to_experiment_config(const CliInvocation& inv);

/// Executes the invocation and returns the process exit code. Never throws.
int execute(const CliInvocation& inv, std::ostream& out, std::ostream& err);

/// parse_args + execute with exit-code mapping for usage errors.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qcorr::cli
