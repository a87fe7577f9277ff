#include "qcorr/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>

#include "qcorr/error.hpp"
#include "qcorr/oracle.hpp"
#include "qcorr/version.hpp"

namespace qcorr {
namespace {

std::string format_number(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.12g", v);
  return buf.data();
}

void check_range(const Range& r, const std::string& field) {
  if (r.steps < 1) throw ConfigError(field, "step count must be >= 1");
  if (!std::isfinite(r.min) || !std::isfinite(r.max)) throw ConfigError(field, "must be finite");
  if (r.min < 0.0) throw ConfigError(field, "must be non-negative");
  if (r.is_fixed() && r.min != r.max) throw ConfigError(field, "fixed value needs min == max");
  if (!r.is_fixed() && !(r.min <= r.max)) throw ConfigError(field, "range needs min <= max");
}

// Runs body(i) for i in [0, n); results are written by index, so the
// outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto n_threads = static_cast<unsigned>(std::min<std::size_t>(hw, n));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
}

struct Point {
  double q1, q2, t;
};

SweepDataset evaluate_points(const ExperimentConfig& cfg, const std::vector<Point>& points) {
  SweepDataset ds;
  const std::size_t n = points.size();
  ds.t.resize(n);
  ds.q1.resize(n);
  ds.q2.resize(n);
  ds.negativity.resize(n);
  ds.gd_lower.resize(n);
  if (cfg.oracle_enabled) ds.gd_exact.emplace(n);
  parallel_for(n, [&](std::size_t i) {
    const auto& p = points[i];
    const auto cell = evaluate_cell(cfg, p.q1, p.q2, p.t, cfg.seed + i);
    ds.t[i] = p.t;
    ds.q1[i] = p.q1;
    ds.q2[i] = p.q2;
    ds.negativity[i] = cell.negativity;
    ds.gd_lower[i] = cell.gd_lower;
    if (ds.gd_exact) (*ds.gd_exact)[i] = cell.gd_exact.value_or(0.0);
  });
  ds.meta = describe_config(cfg);
  return ds;
}

constexpr FigurePreset kPresets[] = {
    {"fig1", ChannelFamily::Dephasing, ChannelFamily::Dephasing,
     "caption reads 'phase-flip'; section order identifies the dephasing channel"},
    {"fig2", ChannelFamily::TritFlip, ChannelFamily::TritFlip, ""},
    {"fig3", ChannelFamily::TritPhaseFlip, ChannelFamily::TritPhaseFlip, ""},
    {"fig4", ChannelFamily::Depolarizing, ChannelFamily::Depolarizing, ""},
    {"fig5", ChannelFamily::Dephasing, ChannelFamily::TritFlip, ""},
    {"fig6", ChannelFamily::Dephasing, ChannelFamily::TritPhaseFlip, ""},
    {"fig7", ChannelFamily::Dephasing, ChannelFamily::Depolarizing, ""},
    {"fig8", ChannelFamily::TritFlip, ChannelFamily::TritPhaseFlip, ""},
    {"fig9", ChannelFamily::TritFlip, ChannelFamily::Depolarizing, ""},
    {"fig10", ChannelFamily::TritPhaseFlip, ChannelFamily::Depolarizing, ""},
};

}  // namespace

std::vector<double> Range::values() const {
  if (steps <= 1) return {min};
  std::vector<double> out(static_cast<std::size_t>(steps));
  const double step = (max - min) / (steps - 1);
  for (int i = 0; i < steps; ++i) out[std::size_t(i)] = min + step * i;
  out.back() = max;
  return out;
}

std::string Range::to_string() const {
  if (is_fixed()) return format_number(min);
  return format_number(min) + ":" + format_number(max) + ":" + std::to_string(steps);
}

std::string_view to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::Time: return "time";
    case SweepMode::RateTime: return "rate_time";
    case SweepMode::RateGrid: return "rate_grid";
  }
  return "unknown";
}

std::optional<SweepMode> parse_sweep_mode(std::string_view name) {
  for (auto m : {SweepMode::Time, SweepMode::RateTime, SweepMode::RateGrid}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

SweepMode infer_sweep_mode(const ExperimentConfig& cfg) {
  const bool ranged_a = !cfg.rate_a.is_fixed();
  const bool ranged_b = !cfg.rate_b.is_fixed();
  if (ranged_a && ranged_b && cfg.time.is_fixed()) return SweepMode::RateGrid;
  if (ranged_a || ranged_b) return SweepMode::RateTime;
  return SweepMode::Time;
}

void validate_config(const ExperimentConfig& cfg) {
  for (auto [family, field] : {std::pair{cfg.family_a, "family_a"}, {cfg.family_b, "family_b"}}) {
    if (family == ChannelFamily::Custom) {
      throw ConfigError(field, "sweeps need one of the four noise families");
    }
  }
  check_range(cfg.rate_a, "rate_a");
  check_range(cfg.rate_b, "rate_b");
  check_range(cfg.time, "time");
  if (cfg.oracle_enabled && cfg.oracle_restarts < 1) {
    throw ConfigError("oracle_restarts", "must be >= 1");
  }
  switch (cfg.mode) {
    case SweepMode::Time:
      if (!cfg.rate_a.is_fixed()) throw ConfigError("rate_a", "time sweep needs a fixed rate");
      if (!cfg.rate_b.is_fixed()) throw ConfigError("rate_b", "time sweep needs a fixed rate");
      break;
    case SweepMode::RateTime:
      if (cfg.rate_a.is_fixed() && cfg.rate_b.is_fixed()) {
        throw ConfigError("sweep_mode", "rate_time needs at least one ranged rate");
      }
      break;
    case SweepMode::RateGrid:
      if (!cfg.time.is_fixed()) throw ConfigError("time", "rate grid needs a fixed time");
      break;
  }
}

bool SweepDataset::consistent() const {
  const std::size_t n = t.size();
  return q1.size() == n && q2.size() == n && negativity.size() == n && gd_lower.size() == n &&
         (!gd_exact || gd_exact->size() == n);
}

void SweepDataset::append_rows(const SweepDataset& other) {
  if (gd_exact.has_value() != other.gd_exact.has_value()) {
    throw DimensionError("append_rows: datasets disagree on the gd_exact column");
  }
  t.insert(t.end(), other.t.begin(), other.t.end());
  q1.insert(q1.end(), other.q1.begin(), other.q1.end());
  q2.insert(q2.end(), other.q2.begin(), other.q2.end());
  negativity.insert(negativity.end(), other.negativity.begin(), other.negativity.end());
  gd_lower.insert(gd_lower.end(), other.gd_lower.begin(), other.gd_lower.end());
  if (gd_exact) gd_exact->insert(gd_exact->end(), other.gd_exact->begin(), other.gd_exact->end());
}

CellResult evaluate_cell(const ExperimentConfig& cfg, double rate_a, double rate_b, double time,
                         std::uint64_t cell_seed) {
  static const DensityMatrix bell = make_bell_state(3);
  const DensityMatrix rho = evolve(bell, cfg.family_a, cfg.family_b, rate_a, rate_b, time);
  CellResult out;
  out.negativity = negativity(rho);
  out.gd_lower = gd_lower_bound(rho, cfg.gd);
  if (cfg.oracle_enabled) {
    const double raw = oracle::gd_exact(rho, cfg.oracle_restarts, cell_seed).value;
    // The oracle value is a raw Hilbert-Schmidt distance; report it in the
    // configured convention so it is comparable with gd_lower.
    out.gd_exact = cfg.gd.prefactor == GdPrefactor::Paper ? 2.0 * raw : raw;
  }
  return out;
}

SweepDataset time_sweep(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.mode != SweepMode::Time && cfg.mode != SweepMode::RateTime) {
    throw ConfigError("sweep_mode", "time_sweep needs mode time or rate_time");
  }
  std::vector<Point> points;
  for (double q1 : cfg.rate_a.values())
    for (double q2 : cfg.rate_b.values())
      for (double t : cfg.time.values()) points.push_back({q1, q2, t});
  return evaluate_points(cfg, points);
}

SweepDataset rate_grid(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.mode != SweepMode::RateGrid) {
    throw ConfigError("sweep_mode", "rate_grid needs mode rate_grid");
  }
  std::vector<Point> points;
  const double t = cfg.time.min;
  for (double q1 : cfg.rate_a.values())
    for (double q2 : cfg.rate_b.values()) points.push_back({q1, q2, t});
  return evaluate_points(cfg, points);
}

SweepDataset run_sweep(const ExperimentConfig& cfg) {
  return cfg.mode == SweepMode::RateGrid ? rate_grid(cfg) : time_sweep(cfg);
}

std::vector<std::pair<std::string, std::string>> describe_config(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> meta = {
      {"generator", std::string("qcorr ") + kVersion},
      {"initial_state", "bell d=3"},
      {"channel_a", std::string(to_string(cfg.family_a))},
      {"channel_b", std::string(to_string(cfg.family_b))},
      {"qa", cfg.rate_a.to_string()},
      {"qb", cfg.rate_b.to_string()},
      {"t", cfg.time.to_string()},
      {"sweep_mode", std::string(to_string(cfg.mode))},
      {"gd_convention", std::string(to_string(cfg.gd.prefactor))},
      {"gd_clamp", cfg.gd.clamp_nonnegative ? "true" : "false"},
      {"oracle", cfg.oracle_enabled ? "true" : "false"},
      {"seed", std::to_string(cfg.seed)},
      {"gamma", "1-exp(-q*t)"},
      {"repair.trit_flip", "flip operators weighted sqrt(gamma/3)"},
      {"repair.depolarizing", "Weyl operators Y^a Z^b, Z=diag(1,w,w^2)"},
      {"repair.gd_eigen_range", "largest d1-1 eigenvalues, 2/n read as 2/d2"},
  };
  if (cfg.oracle_enabled) meta.emplace_back("oracle_restarts", std::to_string(cfg.oracle_restarts));
  return meta;
}

std::string_view to_string(MoreRobust winner) {
  switch (winner) {
    case MoreRobust::Negativity: return "negativity";
    case MoreRobust::Gd: return "gd";
    case MoreRobust::Tie: return "tie";
    case MoreRobust::Undefined: return "undefined";
  }
  return "unknown";
}

RobustnessReport robustness_report(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (!cfg.rate_a.is_fixed()) throw ConfigError("rate_a", "robustness report needs a fixed rate");
  if (!cfg.rate_b.is_fixed()) throw ConfigError("rate_b", "robustness report needs a fixed rate");

  RobustnessReport report;
  report.family_a = cfg.family_a;
  report.family_b = cfg.family_b;
  report.rate_a = cfg.rate_a.min;
  report.rate_b = cfg.rate_b.min;

  const auto initial = evaluate_cell(cfg, report.rate_a, report.rate_b, 0.0, cfg.seed);
  report.negativity_defined = initial.negativity > 0.0;
  report.gd_defined = initial.gd_lower > 0.0;

  const auto times = cfg.time.values();
  report.points.resize(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    const auto cell = evaluate_cell(cfg, report.rate_a, report.rate_b, times[i], cfg.seed);
    auto& p = report.points[i];
    p.t = times[i];
    p.normalized_negativity = report.negativity_defined ? cell.negativity / initial.negativity : 0.0;
    p.normalized_gd = report.gd_defined ? cell.gd_lower / initial.gd_lower : 0.0;
  });

  if (!report.negativity_defined || !report.gd_defined) {
    for (auto& p : report.points) p.winner = MoreRobust::Undefined;
    report.overall = MoreRobust::Undefined;
    return report;
  }

  double last_diff = 0.0;
  double last_t = 0.0;
  bool have_last = false;
  for (auto& p : report.points) {
    const double diff = p.normalized_negativity - p.normalized_gd;
    if (std::abs(diff) <= RobustnessReport::kTieTolerance) {
      p.winner = MoreRobust::Tie;
      ++report.ties;
      continue;
    }
    p.winner = diff > 0.0 ? MoreRobust::Negativity : MoreRobust::Gd;
    ++(diff > 0.0 ? report.negativity_wins : report.gd_wins);
    if (have_last && (diff > 0.0) != (last_diff > 0.0)) {
      report.crossovers.push_back(last_t + (p.t - last_t) * last_diff / (last_diff - diff));
    }
    last_diff = diff;
    last_t = p.t;
    have_last = true;
  }
  if (report.negativity_wins > report.gd_wins) {
    report.overall = MoreRobust::Negativity;
  } else if (report.gd_wins > report.negativity_wins) {
    report.overall = MoreRobust::Gd;
  } else {
    report.overall = MoreRobust::Tie;
  }
  return report;
}

std::span<const FigurePreset> figure_presets() { return kPresets; }

std::optional<FigurePreset> find_preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

std::vector<PresetPanel> preset_panels(const FigurePreset& preset, GdConvention gd,
                                       bool oracle_enabled, std::uint64_t seed) {
  ExperimentConfig base;
  base.family_a = preset.family_a;
  base.family_b = preset.family_b;
  base.gd = gd;
  base.oracle_enabled = oracle_enabled;
  base.seed = seed;

  const Range rate_axis = Range::linspace(0.0, 2.0, kPresetRateSteps);
  const Range time_axis = Range::linspace(0.0, 5.0, kPresetTimeSteps);

  std::vector<PresetPanel> panels;
  ExperimentConfig sweep_a = base;
  sweep_a.mode = SweepMode::RateTime;
  sweep_a.rate_a = rate_axis;
  sweep_a.rate_b = Range::fixed(kPresetFixedRate);
  sweep_a.time = time_axis;
  panels.push_back({"rate_time_q1", sweep_a});

  if (!preset.identical()) {
    ExperimentConfig sweep_b = base;
    sweep_b.mode = SweepMode::RateTime;
    sweep_b.rate_a = Range::fixed(kPresetFixedRate);
    sweep_b.rate_b = rate_axis;
    sweep_b.time = time_axis;
    panels.push_back({"rate_time_q2", sweep_b});
  }

  ExperimentConfig grid = base;
  grid.mode = SweepMode::RateGrid;
  grid.rate_a = rate_axis;
  grid.rate_b = rate_axis;
  grid.time = Range::fixed(kPresetGridTime);
  panels.push_back({"rate_grid", grid});
  return panels;
}

SweepDataset run_preset(const FigurePreset& preset, GdConvention gd, bool oracle_enabled,
                        std::uint64_t seed) {
  SweepDataset out;
  if (oracle_enabled) out.gd_exact.emplace();
  out.meta = {
      {"generator", std::string("qcorr ") + kVersion},
      {"preset", std::string(preset.name)},
      {"initial_state", "bell d=3"},
      {"channel_a", std::string(to_string(preset.family_a))},
      {"channel_b", std::string(to_string(preset.family_b))},
      {"gd_convention", std::string(to_string(gd.prefactor))},
      {"gd_clamp", gd.clamp_nonnegative ? "true" : "false"},
      {"oracle", oracle_enabled ? "true" : "false"},
      {"seed", std::to_string(seed)},
      {"gamma", "1-exp(-q*t)"},
      {"repair.trit_flip", "flip operators weighted sqrt(gamma/3)"},
      {"repair.depolarizing", "Weyl operators Y^a Z^b, Z=diag(1,w,w^2)"},
      {"repair.gd_eigen_range", "largest d1-1 eigenvalues, 2/n read as 2/d2"},
  };
  if (!preset.note.empty()) out.meta.emplace_back("note", std::string(preset.note));

  const auto panels = preset_panels(preset, gd, oracle_enabled, seed);
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto& panel = panels[i];
    const std::size_t first = out.rows();
    out.append_rows(run_sweep(panel.config));
    const auto& c = panel.config;
    out.meta.emplace_back("panel." + std::to_string(i + 1),
                          panel.label + " rows=" + std::to_string(first) + "-" +
                              std::to_string(out.rows() - 1) + " qa=" + c.rate_a.to_string() +
                              " qb=" + c.rate_b.to_string() + " t=" + c.time.to_string());
  }
  return out;
}

RobustnessReport preset_robustness(const FigurePreset& preset) {
  ExperimentConfig cfg;
  cfg.family_a = preset.family_a;
  cfg.family_b = preset.family_b;
  cfg.rate_a = Range::fixed(kPresetFixedRate);
  cfg.rate_b = Range::fixed(kPresetFixedRate);
  cfg.time = Range::linspace(0.0, 5.0, kPresetTimeSteps);
  cfg.mode = SweepMode::Time;
  return robustness_report(cfg);
}

}  // namespace qcorr
