#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcorr/channels.hpp"

namespace qcorr::cli {

struct ValidationOptions {
  /// Use the typeset sqrt(gamma) trit-flip weights, which must fail the
  /// completeness check.
  TritFlipNormalization trit_flip = TritFlipNormalization::Repaired;
  int random_evolutions = 200;
  int oracle_states = 10;
  int oracle_restarts = 32;
  std::uint64_t seed = 2024;
};

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double max_deviation = 0.0;
  bool passed = false;
};

struct ValidationSummary {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Cross-module consistency suite: Kraus completeness, validity of evolved
/// states, closed-form vs simulated negativity, and bound vs oracle.
ValidationSummary run_validation(const ValidationOptions& options = {});

/// Fixed-width table of check, tolerance, max deviation, status.
void print_summary(const ValidationSummary& summary, std::ostream& out);

}  // namespace qcorr::cli
