#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcorr/channels.hpp"
#include "qcorr/measures.hpp"

namespace qcorr {

/// Either a single fixed value (steps == 1, min == max) or `steps` evenly
/// spaced points from min to max inclusive.
struct Range {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  static Range fixed(double value) { return {value, value, 1}; }
  static Range linspace(double lo, double hi, int n) { return {lo, hi, n}; }

  bool is_fixed() const { return steps == 1; }
  std::vector<double> values() const;
  /// "0.5" or "0:2:50".
  std::string to_string() const;
  friend bool operator==(const Range&, const Range&) = default;
};

enum class SweepMode { Time, RateTime, RateGrid };

std::string_view to_string(SweepMode mode);
std::optional<SweepMode> parse_sweep_mode(std::string_view name);

struct ExperimentConfig {
  ChannelFamily family_a = ChannelFamily::Dephasing;
  ChannelFamily family_b = ChannelFamily::Dephasing;
  Range rate_a = Range::fixed(0.5);
  Range rate_b = Range::fixed(0.5);
  Range time = Range::linspace(0.0, 5.0, 200);
  SweepMode mode = SweepMode::Time;
  GdConvention gd{};
  bool oracle_enabled = false;
  int oracle_restarts = 32;
  std::uint64_t seed = 0;
};

/// Sweep mode implied by which axes are ranges: both rates ranged with a
/// fixed time is a rate grid, any ranged rate otherwise is rate_time, and
/// fixed rates give a time sweep.
SweepMode infer_sweep_mode(const ExperimentConfig& cfg);

/// Throws ConfigError naming the first offending field.
void validate_config(const ExperimentConfig& cfg);

/// Tabular sweep output. Rows are stored column-wise; `meta` is an ordered
/// list of key/value records describing how the rows were produced.
struct SweepDataset {
  std::vector<double> t;
  std::vector<double> q1;
  std::vector<double> q2;
  std::vector<double> negativity;
  std::vector<double> gd_lower;
  std::optional<std::vector<double>> gd_exact;
  std::vector<std::pair<std::string, std::string>> meta;

  std::size_t rows() const { return t.size(); }
  /// True when every column has rows() entries.
  bool consistent() const;
  /// Appends the rows of `other` (meta is not merged). Both datasets must
  /// agree on whether gd_exact is present.
  void append_rows(const SweepDataset& other);
};

/// Measures of the Bell state evolved under cfg's channels at one point.
struct CellResult {
  double negativity = 0.0;
  double gd_lower = 0.0;
  std::optional<double> gd_exact;
};

CellResult evaluate_cell(const ExperimentConfig& cfg, double rate_a, double rate_b, double time,
                         std::uint64_t cell_seed);

/// Time or rate_time sweep. Rows are ordered by (q1, q2, t), t fastest.
SweepDataset time_sweep(const ExperimentConfig& cfg);

/// Fixed-time grid over (q1, q2), row-major with q2 fastest.
SweepDataset rate_grid(const ExperimentConfig& cfg);

/// Dispatches on cfg.mode.
SweepDataset run_sweep(const ExperimentConfig& cfg);

/// Metadata records echoing cfg and the model conventions in force.
std::vector<std::pair<std::string, std::string>> describe_config(const ExperimentConfig& cfg);

enum class MoreRobust { Negativity, Gd, Tie, Undefined };
std::string_view to_string(MoreRobust winner);

struct RobustnessPoint {
  double t = 0.0;
  double normalized_negativity = 0.0;
  double normalized_gd = 0.0;
  MoreRobust winner = MoreRobust::Tie;
};

/// Compares N(t)/N(0) with GD(t)/GD(0) along a time grid. "More robust" is
/// defined as the larger normalized value; it is not a physical theorem.
struct RobustnessReport {
  static constexpr double kTieTolerance = 1e-12;
  static constexpr std::string_view kDefinition =
      "measure with the larger initial-value-normalized curve M(t)/M(0) is more robust; "
      "|difference| <= 1e-12 is a tie";

  ChannelFamily family_a{};
  ChannelFamily family_b{};
  double rate_a = 0.0;
  double rate_b = 0.0;
  bool negativity_defined = true;
  bool gd_defined = true;
  std::vector<RobustnessPoint> points;
  /// Times where normalized negativity - normalized GD changes sign
  /// (linear interpolation between grid points).
  std::vector<double> crossovers;
  int negativity_wins = 0;
  int gd_wins = 0;
  int ties = 0;
  MoreRobust overall = MoreRobust::Tie;
};

/// Requires fixed rates; sweeps cfg.time. A measure whose initial value is
/// zero is reported undefined instead of being divided by.
RobustnessReport robustness_report(const ExperimentConfig& cfg);

/// Figure presets: channel pairs with q2 = 0.5 for time panels and t = 1
/// for the rate grid.
struct FigurePreset {
  std::string_view name;
  ChannelFamily family_a;
  ChannelFamily family_b;
  std::string_view note;

  bool identical() const { return family_a == family_b; }
};

std::span<const FigurePreset> figure_presets();
std::optional<FigurePreset> find_preset(std::string_view name);

struct PresetPanel {
  std::string label;
  ExperimentConfig config;
};

inline constexpr double kPresetFixedRate = 0.5;
inline constexpr double kPresetGridTime = 1.0;
inline constexpr int kPresetTimeSteps = 200;
inline constexpr int kPresetRateSteps = 50;

/// Panels of one figure: rate_time over q1 in [0,2] (q2 = 0.5) and
/// t in [0,5]; for non-identical pairs also the mirrored q2 sweep; and
/// the 50x50 rate grid over [0,2]^2 at t = 1.
std::vector<PresetPanel> preset_panels(const FigurePreset& preset, GdConvention gd = {},
                                       bool oracle_enabled = false, std::uint64_t seed = 0);

/// All panels concatenated in order; meta records each panel's row range.
SweepDataset run_preset(const FigurePreset& preset, GdConvention gd = {},
                        bool oracle_enabled = false, std::uint64_t seed = 0);

/// Robustness report for a preset's pair at q1 = q2 = 0.5 over t in [0,5].
RobustnessReport preset_robustness(const FigurePreset& preset);

}  // namespace qcorr
