#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qcorr/linalg.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

/// Entanglement negativity (||rho^{T_A}||_1 - 1) / 2 via the trace norm.
/// Values at or below kEigenZeroTolerance are reported as exactly 0.
double negativity(const DensityMatrix& rho);

/// Same quantity from the spectrum of rho^{T_A}: the sum of |lambda| over
/// eigenvalues below -kEigenZeroTolerance. Independent of the SVD route.
double negativity_spectral(const DensityMatrix& rho);

/// Local Bloch vectors and correlation matrix of a bipartite state:
///   y_k  = (d1/2)    Tr(rho xi_k x I)
///   z_l  = (d2/2)    Tr(rho I x xi_l)
///   v_kl = (d1 d2/4) Tr(rho xi_k x xi_l)
/// so that rho = (I x I + sum y_k xi_k x I + sum z_l I x xi_l
///                + sum v_kl xi_k x xi_l) / (d1 d2).
struct BlochDecomposition {
  Dims dims;
  RealVector y_a;
  RealVector z_b;
  RealMatrix correlations;
};

/// Imaginary residue allowed on the traces before they are discarded.
inline constexpr double kBlochImagTolerance = 1e-10;

/// Throws NumericalError if any trace has an imaginary part above 1e-10.
BlochDecomposition bloch_decomposition(const DensityMatrix& rho);

/// Inverse of bloch_decomposition().
ComplexMatrix synthesize(const BlochDecomposition& bloch);

enum class GdPrefactor {
  Paper,  // 4 / (d1^2 d2)
  Raw,    // 2 / (d1^2 d2), the Hilbert-Schmidt distance bound
};

std::string_view to_string(GdPrefactor mode);
std::optional<GdPrefactor> parse_gd_prefactor(std::string_view name);

struct GdConvention {
  GdPrefactor prefactor = GdPrefactor::Paper;
  bool clamp_nonnegative = true;
  friend bool operator==(const GdConvention&, const GdConvention&) = default;
};

double gd_prefactor(GdPrefactor mode, Dims dims);

/// Intermediate quantities of the geometric-discord lower bound.
struct GdBoundDetail {
  double y_norm_sq = 0.0;             // ||Y||^2
  double v_norm_sq = 0.0;             // ||V||^2
  std::vector<double> eigenvalues;    // of Y Y^T + (2/d2) V V^T, non-increasing
  double subtracted = 0.0;            // sum of the eigenvalues taken off
  double bracket = 0.0;               // ||Y||^2 + (2/d2)||V||^2 - subtracted
};

/// Bracket with the `eigen_count` largest eigenvalues subtracted. The bound
/// proper uses eigen_count = d1 - 1; eigen_count = d1^2 - 1 subtracts the
/// full trace and collapses the bracket to zero.
GdBoundDetail gd_bound_detail(const BlochDecomposition& bloch, std::size_t eigen_count);

/// Lower bound on geometric discord (measurement on A):
///   prefactor * (||Y||^2 + (2/d2)||V||^2 - sum_{n < d1} lambda_n),
/// clamped at zero when conv.clamp_nonnegative.
double gd_lower_bound(const DensityMatrix& rho, GdConvention conv = {});

/// p |Phi><Phi| + (1-p) I/9 for two qutrits. Throws DomainError for p
/// outside [0,1].
DensityMatrix isotropic_family(double p);

}  // namespace qcorr
