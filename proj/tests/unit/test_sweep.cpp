#include <catch2/catch_amalgamated.hpp>

#include "qcorr/error.hpp"
#include "qcorr/oracle.hpp"
#include "qcorr/sweep.hpp"

using namespace qcorr;
using Catch::Approx;

namespace {

ExperimentConfig time_config(ChannelFamily fa, ChannelFamily fb, double qa, double qb,
                             Range t = Range::linspace(0.0, 5.0, 51)) {
  ExperimentConfig cfg;
  cfg.family_a = fa;
  cfg.family_b = fb;
  cfg.rate_a = Range::fixed(qa);
  cfg.rate_b = Range::fixed(qb);
  cfg.time = t;
  cfg.mode = infer_sweep_mode(cfg);
  return cfg;
}

}  // namespace

TEST_CASE("range values and text form", "[sweep]") {
  CHECK(Range::fixed(0.5).values() == std::vector<double>{0.5});
  const auto v = Range::linspace(0.0, 2.0, 5).values();
  REQUIRE(v.size() == 5);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 2.0);
  CHECK(v[2] == Approx(1.0));
  CHECK(Range::fixed(0.5).to_string() == "0.5");
  CHECK(Range::linspace(0.0, 2.0, 50).to_string() == "0:2:50");
}

TEST_CASE("sweep mode inference", "[sweep]") {
  ExperimentConfig cfg;
  CHECK(infer_sweep_mode(cfg) == SweepMode::Time);
  cfg.rate_a = Range::linspace(0, 2, 5);
  CHECK(infer_sweep_mode(cfg) == SweepMode::RateTime);
  cfg.rate_b = Range::linspace(0, 2, 5);
  cfg.time = Range::fixed(1.0);
  CHECK(infer_sweep_mode(cfg) == SweepMode::RateGrid);
  for (auto m : {SweepMode::Time, SweepMode::RateTime, SweepMode::RateGrid})
    CHECK(parse_sweep_mode(to_string(m)) == m);
  CHECK_FALSE(parse_sweep_mode("grid").has_value());
}

TEST_CASE("dephasing sweep follows the closed form", "[sweep]") {
  for (double qa : {0.1, 0.5, 1.3})
    for (double qb : {0.0, 0.5, 2.0}) {
      const auto ds = run_sweep(time_config(ChannelFamily::Dephasing, ChannelFamily::Dephasing, qa, qb));
      REQUIRE(ds.rows() == 51);
      for (std::size_t i = 0; i < ds.rows(); ++i) {
        CHECK(ds.negativity[i] ==
              Approx(oracle::analytic_negativity_dephasing(qa, qb, ds.t[i])).margin(1e-10));
      }
    }
}

TEST_CASE("depolarizing sweep follows the closed form", "[sweep]") {
  for (double qa : {0.2, 0.5, 1.0})
    for (double qb : {0.0, 0.5}) {
      const auto ds =
          run_sweep(time_config(ChannelFamily::Depolarizing, ChannelFamily::Depolarizing, qa, qb));
      for (std::size_t i = 0; i < ds.rows(); ++i) {
        CHECK(ds.negativity[i] ==
              Approx(oracle::analytic_negativity_depolarizing(qa, qb, ds.t[i])).margin(1e-10));
        const double p = std::exp(-(qa + qb) * ds.t[i]);
        CHECK(ds.gd_lower[i] == Approx(oracle::analytic_gd_isotropic(p)).margin(1e-10));
      }
    }
}

TEST_CASE("depolarizing negativity dies at ln4 / (qa + qb)", "[sweep]") {
  const double qa = 0.5, qb = 0.5;
  const double t_star = oracle::depolarizing_sudden_death_time(qa, qb);
  CHECK(t_star == Approx(std::log(4.0)));
  auto ds = run_sweep(time_config(ChannelFamily::Depolarizing, ChannelFamily::Depolarizing, qa, qb,
                                  Range::linspace(0.0, 5.0, 501)));
  for (std::size_t i = 0; i < ds.rows(); ++i) {
    if (ds.t[i] < t_star - 1e-9) CHECK(ds.negativity[i] > 0.0);
    if (ds.t[i] > t_star + 1e-9) CHECK(ds.negativity[i] == 0.0);
    // GD survives past the entanglement death.
    if (ds.t[i] < 5.0) CHECK(ds.gd_lower[i] > 0.0);
  }
}

TEST_CASE("every pair starts from the Bell values", "[sweep]") {
  for (auto fa : kNoiseFamilies)
    for (auto fb : kNoiseFamilies) {
      const auto cell = evaluate_cell(time_config(fa, fb, 0.5, 0.5), 0.5, 0.5, 0.0, 0);
      CHECK(cell.negativity == Approx(1.0).margin(1e-12));
      CHECK(cell.gd_lower == Approx(4.0 / 3.0).margin(1e-12));
    }
}

TEST_CASE("measures decay monotonically in time", "[sweep][property]") {
  for (auto fa : kNoiseFamilies)
    for (auto fb : kNoiseFamilies) {
      const auto ds = run_sweep(time_config(fa, fb, 0.7, 0.4));
      for (std::size_t i = 1; i < ds.rows(); ++i) {
        CHECK(ds.negativity[i] <= ds.negativity[i - 1] + 1e-12);
        CHECK(ds.gd_lower[i] <= ds.gd_lower[i - 1] + 1e-12);
        CHECK(ds.negativity[i] >= 0.0);
        CHECK(ds.gd_lower[i] >= 0.0);
      }
    }
}

TEST_CASE("rate grid has 2500 rows in row-major order", "[sweep]") {
  ExperimentConfig cfg;
  cfg.family_a = ChannelFamily::TritFlip;
  cfg.family_b = ChannelFamily::Depolarizing;
  cfg.rate_a = Range::linspace(0.0, 2.0, 50);
  cfg.rate_b = Range::linspace(0.0, 2.0, 50);
  cfg.time = Range::fixed(1.0);
  cfg.mode = infer_sweep_mode(cfg);
  const auto ds = run_sweep(cfg);
  REQUIRE(ds.rows() == 2500);
  CHECK(ds.consistent());
  CHECK_FALSE(ds.gd_exact.has_value());
  CHECK(ds.q1[0] == 0.0);
  CHECK(ds.q2[1] == Approx(2.0 / 49.0));
  CHECK(ds.q1[50] == Approx(2.0 / 49.0));
  CHECK(ds.q2[2499] == 2.0);
  for (double t : ds.t) CHECK(t == 1.0);
  // Zero rates leave the Bell state untouched.
  CHECK(ds.negativity[0] == Approx(1.0).margin(1e-12));
}

TEST_CASE("rate_time rows run t fastest", "[sweep]") {
  ExperimentConfig cfg;
  cfg.rate_a = Range::linspace(0.0, 2.0, 4);
  cfg.time = Range::linspace(0.0, 1.0, 3);
  cfg.mode = infer_sweep_mode(cfg);
  const auto ds = run_sweep(cfg);
  REQUIRE(ds.rows() == 12);
  CHECK(ds.t[0] == 0.0);
  CHECK(ds.t[1] == 0.5);
  CHECK(ds.t[3] == 0.0);
  CHECK(ds.q1[2] == 0.0);
  CHECK(ds.q1[3] == Approx(2.0 / 3.0));
}

TEST_CASE("sweeps are deterministic, with or without the oracle", "[sweep]") {
  auto cfg = time_config(ChannelFamily::TritPhaseFlip, ChannelFamily::Dephasing, 0.5, 0.9,
                         Range::linspace(0.0, 2.0, 3));
  cfg.oracle_enabled = true;
  cfg.oracle_restarts = 4;
  cfg.seed = 17;
  const auto a = run_sweep(cfg);
  const auto b = run_sweep(cfg);
  REQUIRE(a.gd_exact.has_value());
  CHECK(a.negativity == b.negativity);
  CHECK(a.gd_lower == b.gd_lower);
  CHECK(*a.gd_exact == *b.gd_exact);
  // Paper-mode bound never exceeds the paper-mode exact value.
  for (std::size_t i = 0; i < a.rows(); ++i) CHECK(a.gd_lower[i] <= (*a.gd_exact)[i] + 1e-7);
}

TEST_CASE("config validation names the offending field", "[sweep][error]") {
  auto expect_field = [](ExperimentConfig cfg, const std::string& field) {
    try {
      validate_config(cfg);
      FAIL("expected ConfigError for " << field);
    } catch (const ConfigError& e) {
      CHECK(e.field() == field);
    }
  };
  ExperimentConfig cfg;
  CHECK_NOTHROW(validate_config(cfg));
  auto bad = cfg;
  bad.rate_a = Range::fixed(-0.1);
  expect_field(bad, "rate_a");
  bad = cfg;
  bad.rate_b = Range::linspace(0.0, std::nan(""), 3);
  expect_field(bad, "rate_b");
  bad = cfg;
  bad.time = Range::linspace(-1.0, 1.0, 3);
  expect_field(bad, "time");
  bad = cfg;
  bad.family_a = ChannelFamily::Custom;
  expect_field(bad, "family_a");
  bad = cfg;
  bad.mode = SweepMode::RateGrid;
  expect_field(bad, "time");
  bad = cfg;
  bad.oracle_enabled = true;
  bad.oracle_restarts = 0;
  expect_field(bad, "oracle_restarts");
}

TEST_CASE("depolarizing pair: negativity leads until p = 1/3", "[sweep][robustness]") {
  // Normalized curves are (4p - 1)/3 and p^2 with p = exp(-t); they cross
  // where p = 1/3.
  const auto report = robustness_report(
      time_config(ChannelFamily::Depolarizing, ChannelFamily::Depolarizing, 0.5, 0.5,
                  Range::linspace(0.0, 5.0, 201)));
  REQUIRE(report.points.size() == 201);
  CHECK(report.negativity_defined);
  CHECK(report.gd_defined);
  CHECK(report.points.front().winner == MoreRobust::Tie);
  const auto& at_one = report.points[40];
  REQUIRE(at_one.t == Approx(1.0));
  CHECK(at_one.normalized_negativity == Approx((4.0 * std::exp(-1.0) - 1.0) / 3.0).margin(1e-10));
  CHECK(at_one.normalized_gd == Approx(std::exp(-2.0)).margin(1e-10));
  CHECK(at_one.winner == MoreRobust::Negativity);
  for (const auto& pt : report.points) {
    if (pt.t > 0.0 && pt.t < std::log(3.0) - 1e-9) CHECK(pt.winner == MoreRobust::Negativity);
    if (pt.t > std::log(3.0) + 1e-9) CHECK(pt.winner == MoreRobust::Gd);
  }
  REQUIRE(report.crossovers.size() == 1);
  CHECK(report.crossovers[0] == Approx(std::log(3.0)).margin(0.025));
}

TEST_CASE("dephasing pair: report is computed for every grid point", "[sweep][robustness]") {
  const auto report = robustness_report(
      time_config(ChannelFamily::Dephasing, ChannelFamily::Dephasing, 0.5, 0.5,
                  Range::linspace(0.0, 5.0, 200)));
  CHECK(report.negativity_wins + report.gd_wins + report.ties == 200);
  CHECK(report.overall != MoreRobust::Undefined);
}

TEST_CASE("vanishing rates make every point a tie", "[sweep][robustness]") {
  for (auto family : kNoiseFamilies) {
    const auto report = robustness_report(time_config(family, family, 0.0, 0.0));
    CHECK(report.overall == MoreRobust::Tie);
    CHECK(report.negativity_wins == 0);
    CHECK(report.gd_wins == 0);
    CHECK(report.crossovers.empty());
  }
}

TEST_CASE("robustness reports for every preset are well formed", "[sweep][robustness]") {
  for (const auto& preset : figure_presets()) {
    const auto report = preset_robustness(preset);
    CHECK(report.points.size() == std::size_t(kPresetTimeSteps));
    CHECK(report.negativity_wins + report.gd_wins + report.ties == int(report.points.size()));
    for (const auto& pt : report.points) {
      CHECK(pt.normalized_negativity >= 0.0);
      CHECK(pt.normalized_negativity <= 1.0 + 1e-12);
      CHECK(pt.normalized_gd <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("robustness requires fixed rates", "[sweep][error]") {
  ExperimentConfig cfg;
  cfg.rate_a = Range::linspace(0, 1, 3);
  cfg.mode = SweepMode::RateTime;
  CHECK_THROWS_AS(robustness_report(cfg), ConfigError);
}

TEST_CASE("presets cover fig1..fig10", "[sweep]") {
  REQUIRE(figure_presets().size() == 10);
  for (int i = 1; i <= 10; ++i) CHECK(find_preset("fig" + std::to_string(i)).has_value());
  CHECK_FALSE(find_preset("fig11").has_value());
  const auto fig1 = *find_preset("fig1");
  CHECK(preset_panels(fig1).size() == (fig1.identical() ? 2u : 3u));
}

TEST_CASE("preset output concatenates its panels", "[sweep]") {
  const auto preset = *find_preset("fig4");
  const auto ds = run_preset(preset);
  const std::size_t time_rows = std::size_t(kPresetRateSteps) * kPresetTimeSteps;
  const std::size_t grid_rows = std::size_t(kPresetRateSteps) * kPresetRateSteps;
  const std::size_t panels = preset.identical() ? 1 : 2;
  CHECK(ds.rows() == panels * time_rows + grid_rows);
  CHECK(ds.consistent());
  int panel_records = 0;
  for (const auto& [key, value] : ds.meta) panel_records += key.rfind("panel.", 0) == 0;
  CHECK(panel_records == int(panels + 1));
}

TEST_CASE("append_rows checks the gd_exact column", "[sweep][error]") {
  SweepDataset a, b;
  b.gd_exact.emplace();
  CHECK_THROWS(a.append_rows(b));
}
