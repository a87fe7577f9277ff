#include "cli/validation.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "qcorr/measures.hpp"
#include "qcorr/oracle.hpp"
#include "qcorr/random.hpp"

namespace qcorr::cli {
namespace {

KrausChannel build(ChannelFamily family, double gamma, const ValidationOptions& options) {
  if (family == ChannelFamily::TritFlip) return trit_flip_kraus(gamma, options.trit_flip);
  return make_channel(family, gamma);
}

CheckResult completeness_check(ChannelFamily family, const ValidationOptions& options) {
  CheckResult r{"kraus completeness (" + std::string(to_string(family)) + ")",
                kCompletenessTolerance, 0.0, false};
  for (int k = 0; k <= 10; ++k) {
    r.max_deviation =
        std::max(r.max_deviation, validate_kraus(build(family, k / 10.0, options)).max_deviation);
  }
  r.passed = r.max_deviation <= r.tolerance;
  return r;
}

CheckResult evolution_validity(const ValidationOptions& options) {
  CheckResult r{"evolved state validity (herm/trace/psd)", kPositivityTolerance, 0.0, true};
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int n = 0; n < options.random_evolutions; ++n) {
    const auto rho = random_density_matrix({3, 3}, rng, 1 + n % 9);
    const auto fa = kNoiseFamilies[pick(rng)];
    const auto fb = kNoiseFamilies[pick(rng)];
    const double ga = unit(rng);
    const double gb = unit(rng);
    const ComplexMatrix out = apply_local_channels_unchecked(
        rho.matrix(), rho.dims(), build(fa, ga, options), build(fb, gb, options));
    const auto check = validate_density_matrix(out, rho.dims());
    for (const auto& v : check.violations) r.max_deviation = std::max(r.max_deviation, v.magnitude);
    if (!check.ok()) r.passed = false;
  }
  return r;
}

template <typename Analytic>
CheckResult closed_form_check(const char* name, ChannelFamily family, Analytic analytic) {
  CheckResult r{name, 1e-10, 0.0, false};
  const DensityMatrix bell = make_bell_state(3);
  for (int i = 0; i < 20; ++i) {
    const double qa = 0.1 * (i % 5) * 2.0;
    const double qb = 0.15 * (i % 4) + 0.05;
    const double t = 0.25 * i;
    const double sim = negativity(evolve(bell, family, family, qa, qb, t));
    r.max_deviation = std::max(r.max_deviation, std::abs(sim - analytic(qa, qb, t)));
  }
  r.passed = r.max_deviation <= r.tolerance;
  return r;
}

}  // namespace

bool ValidationSummary::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

ValidationSummary run_validation(const ValidationOptions& options) {
  ValidationSummary s;
  for (auto family : kNoiseFamilies) s.checks.push_back(completeness_check(family, options));
  s.checks.push_back(evolution_validity(options));
  s.checks.push_back(closed_form_check("negativity closed form (dephasing)",
                                       ChannelFamily::Dephasing,
                                       oracle::analytic_negativity_dephasing));
  s.checks.push_back(closed_form_check("negativity closed form (depolarizing)",
                                       ChannelFamily::Depolarizing,
                                       oracle::analytic_negativity_depolarizing));

  const GdConvention raw{GdPrefactor::Raw, false};
  {
    CheckResult r{"gd bound <= oracle", 1e-4, 0.0, false};
    std::mt19937_64 rng(options.seed + 1);
    double worst_gap = -std::numeric_limits<double>::infinity();
    for (int n = 0; n < options.oracle_states; ++n) {
      const auto rho = random_density_matrix({3, 3}, rng, 1 + n % 9);
      const double bound = gd_lower_bound(rho, raw);
      const double exact = oracle::gd_exact(rho, options.oracle_restarts, options.seed + n).value;
      worst_gap = std::max(worst_gap, bound - exact);
    }
    r.max_deviation = std::max(0.0, worst_gap);
    r.passed = worst_gap <= r.tolerance;
    s.checks.push_back(r);
  }
  {
    CheckResult r{"gd bound = oracle (isotropic)", 1e-5, 0.0, false};
    for (double p : {0.2, 0.5, 0.8}) {
      const auto rho = isotropic_family(p);
      const double exact = oracle::gd_exact(rho, options.oracle_restarts, options.seed).value;
      r.max_deviation = std::max(r.max_deviation, std::abs(gd_lower_bound(rho, raw) - exact));
    }
    r.passed = r.max_deviation <= r.tolerance;
    s.checks.push_back(r);
  }
  return s;
}

void print_summary(const ValidationSummary& summary, std::ostream& out) {
  std::array<char, 160> line{};
  std::snprintf(line.data(), line.size(), "%-42s %10s %14s  %s\n", "check", "tolerance",
                "max deviation", "status");
  out << line.data();
  for (const auto& c : summary.checks) {
    std::snprintf(line.data(), line.size(), "%-42s %10.1e %14.6e  %s\n", c.name.c_str(),
                  c.tolerance, c.max_deviation, c.passed ? "PASS" : "FAIL");
    out << line.data();
  }
  out << (summary.all_passed() ? "all checks passed\n" : "validation FAILED\n");
}

}  // namespace qcorr::cli
