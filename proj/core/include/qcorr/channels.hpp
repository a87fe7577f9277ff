#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

enum class ChannelFamily { Dephasing, TritFlip, TritPhaseFlip, Depolarizing, Custom };

/// Canonical names: "dephasing", "trit-flip", "trit-phase-flip",
/// "depolarizing", "custom".
std::string_view to_string(ChannelFamily family);

/// Parses one of the four canonical noise-family names; `custom` is not
/// accepted here. Returns nullopt for anything else.
std::optional<ChannelFamily> parse_channel_family(std::string_view name);

/// The four noise families, in canonical order.
inline constexpr ChannelFamily kNoiseFamilies[] = {
    ChannelFamily::Dephasing, ChannelFamily::TritFlip, ChannelFamily::TritPhaseFlip,
    ChannelFamily::Depolarizing};

/// Kraus completeness tolerance (max entry of sum E^dagger E - I).
inline constexpr double kCompletenessTolerance = 1e-12;

/// A local channel rho -> sum_i E_i rho E_i^dagger on a d-level system.
/// Construction only checks shapes; completeness is reported by
/// validate_kraus() and enforced when the channel is applied.
class KrausChannel {
 public:
  /// Throws DimensionError if the list is empty or operators are not all
  /// square of the same size.
  KrausChannel(std::vector<ComplexMatrix> operators, ChannelFamily family, double gamma);

  static KrausChannel identity(int d);
  static KrausChannel custom(std::vector<ComplexMatrix> operators) {
    return KrausChannel(std::move(operators), ChannelFamily::Custom, 0.0);
  }

  int dim() const { return dim_; }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }
  ChannelFamily family() const { return family_; }
  double gamma() const { return gamma_; }

  /// Single-system action sum_i E_i m E_i^dagger.
  ComplexMatrix apply(const ComplexMatrix& m) const;

 private:
  std::vector<ComplexMatrix> operators_;
  ChannelFamily family_;
  double gamma_;
  int dim_;
};

struct KrausDiagnostics {
  bool passed = false;
  /// max_ij |(sum E^dagger E - I)_ij|
  double max_deviation = 0.0;
  /// Diagonal of sum E^dagger E - I, real parts.
  std::vector<double> diagonal_deviation;
};

KrausDiagnostics validate_kraus(const KrausChannel& channel);

struct DecayParams {
  double rate = 0.0;  // q, inverse time units
  double time = 0.0;  // t
};

/// gamma = 1 - exp(-q t), clamped to [0,1]. Throws DomainError on negative
/// or NaN input. q = 0 or t = 0 gives exactly 0, even when the other is +inf.
double gamma_of(DecayParams p);

/// Dephasing: M = diag(1, sqrt(1-g), ..., sqrt(1-g)) and, for each level
/// k >= 1, a projector sqrt(g)|k><k|. d = 3 gives the M, N, T triple.
KrausChannel dephasing_kraus(double gamma, int d = 3);

/// How the flip operators of the trit-flip channel are weighted.
enum class TritFlipNormalization {
  /// sqrt(gamma/3): trace preserving.
  Repaired,
  /// sqrt(gamma) as originally typeset; sum E^dagger E = (1 + 4 gamma/3) I.
  /// Kept only to demonstrate the completeness failure.
  Printed,
};

/// M = sqrt(1 - 2g/3) I, N = c P, T = c P^2, with P|j> = |j+1 mod 3>.
KrausChannel trit_flip_kraus(double gamma,
                             TritFlipNormalization norm = TritFlipNormalization::Repaired);

/// M = sqrt(1 - 2g/3) I and four phase-permutation operators N+-, T+-
/// weighted by sqrt(g/6).
KrausChannel trit_phase_flip_kraus(double gamma);

/// alpha I together with beta Y^a Z^b for (a,b) != (0,0), where
/// alpha = sqrt(1 - 8g/9), beta = sqrt(g)/3, Y the cyclic shift
/// [[0,1,0],[0,0,1],[1,0,0]] and Z = diag(1, w, w^2), w = exp(2 pi i/3).
/// Acts as rho -> (1-g) rho + g I/3.
KrausChannel depolarizing_kraus(double gamma);

/// Clock and shift matrices used by depolarizing_kraus().
ComplexMatrix qutrit_shift();
ComplexMatrix qutrit_clock();

/// Builds the named family at `gamma`. Families other than dephasing are
/// qutrit-only; throws DimensionError for d != 3 there, DomainError for
/// ChannelFamily::Custom.
KrausChannel make_channel(ChannelFamily family, double gamma, int d = 3);

/// rho' = sum_j sum_i (I x F_j)(E_i x I) rho (E_i x I)^dagger (I x F_j)^dagger.
/// Throws DimensionError on mismatched dimensions and ValidationError when
/// either channel fails validate_kraus().
DensityMatrix apply_local_channels(const DensityMatrix& rho, const KrausChannel& channel_a,
                                   const KrausChannel& channel_b);

/// Same action on a raw bipartite matrix (no validation of either side).
ComplexMatrix apply_local_channels_unchecked(const ComplexMatrix& rho, Dims dims,
                                             const KrausChannel& channel_a,
                                             const KrausChannel& channel_b);

/// Local decay of both qutrits for time t at rates q_a, q_b.
DensityMatrix evolve(const DensityMatrix& rho0, ChannelFamily family_a, ChannelFamily family_b,
                     double rate_a, double rate_b, double time);

}  // namespace qcorr
