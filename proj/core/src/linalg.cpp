#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "qcorr/error.hpp"

namespace qcorr {

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double hermiticity_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("hermitian_eigenvalues: matrix is not square");
  const double dev = hermiticity_deviation(m);
  if (!(dev <= kHermitianInputTolerance)) {
    throw DomainError("hermitian_eigenvalues: matrix is not Hermitian (deviation " +
                      std::to_string(dev) + ")");
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  const RealVector& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double trace_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("trace_norm: matrix is not square");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

double hilbert_schmidt_norm_sq(const ComplexMatrix& m) { return m.squaredNorm(); }

ComplexMatrix unitary_exp(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian);
  const auto& vecs = solver.eigenvectors();
  Eigen::VectorXcd phases(solver.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, solver.eigenvalues()(k));
  }
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

double unitarity_deviation(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const ComplexMatrix gram = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
  return gram.cwiseAbs().maxCoeff();
}

}  // namespace qcorr
