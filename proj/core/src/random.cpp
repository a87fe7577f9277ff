#include "qcorr/random.hpp"

#include "qcorr/error.hpp"

namespace qcorr {
namespace {

ComplexMatrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace

DensityMatrix random_density_matrix(Dims dims, std::mt19937_64& rng, int rank) {
  const int n = dims.total();
  if (n < 1) throw DimensionError("random_density_matrix: empty dimensions");
  const int k = rank <= 0 ? n : rank;
  const ComplexMatrix g = ginibre(n, k, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix::from_matrix(std::move(rho), dims);
}

ComplexMatrix random_unitary(int d, std::mt19937_64& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    if (std::abs(diag) > 0.0) q.col(k) *= diag / std::abs(diag);
  }
  return q;
}

}  // namespace qcorr
