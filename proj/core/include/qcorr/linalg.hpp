#pragma once

// Dense complex linear algebra used throughout the library. Every operator
// in scope is at most 9x9 (two qutrits), so storage is dense Eigen matrices.

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qcorr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Eigenvalues with magnitude below this are treated as zero when
/// classifying negativity contributions.
inline constexpr double kEigenZeroTolerance = 1e-12;

/// Hermiticity tolerance accepted by hermitian_eigenvalues().
inline constexpr double kHermitianInputTolerance = 1e-10;

/// Kronecker product. Row index of the result is i_a * b.rows() + i_b, the
/// A-major convention used by every bipartite routine in the library.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_ij |m_ij - conj(m_ji)|; +inf for non-square input.
double hermiticity_deviation(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

/// Real eigenvalues of a Hermitian matrix, sorted non-increasing.
/// Throws DomainError if `m` is not square or not Hermitian within 1e-10.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Sum of singular values. Throws DimensionError on non-square input.
double trace_norm(const ComplexMatrix& m);

/// Squared Hilbert-Schmidt norm Tr(m^dagger m).
double hilbert_schmidt_norm_sq(const ComplexMatrix& m);

/// exp(i H) for Hermitian H, via the spectral decomposition.
ComplexMatrix unitary_exp(const ComplexMatrix& hermitian);

/// max_ij |(U^dagger U - I)_ij|.
double unitarity_deviation(const ComplexMatrix& u);

}  // namespace qcorr
