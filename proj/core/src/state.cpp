#include "qcorr/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qcorr/error.hpp"

namespace qcorr {

std::string to_string(Invariant inv) {
  switch (inv) {
    case Invariant::Shape: return "shape";
    case Invariant::Finite: return "finite";
    case Invariant::Hermiticity: return "hermiticity";
    case Invariant::Trace: return "trace";
    case Invariant::Positivity: return "positivity";
  }
  return "unknown";
}

std::optional<DensityMatrix> DensityValidation::state() const {
  if (!ok() || !matrix_) return std::nullopt;
  return DensityMatrix(*matrix_, dims_);
}

std::string DensityValidation::describe() const {
  if (ok()) return "valid density matrix";
  std::ostringstream os;
  os << "invalid density matrix:";
  for (const auto& v : violations) os << ' ' << to_string(v.invariant) << '=' << v.magnitude;
  return os.str();
}

DensityValidation validate_density_matrix(const ComplexMatrix& m, Dims dims) {
  DensityValidation out;
  if (dims.a < 1 || dims.b < 1 || m.rows() != m.cols() || m.rows() != dims.total()) {
    const double expected = std::max(dims.total(), 0);
    out.violations.push_back({Invariant::Shape, std::abs(double(m.rows()) - expected) +
                                                    std::abs(double(m.cols()) - expected)});
    return out;
  }
  if (!all_finite(m)) {
    out.violations.push_back({Invariant::Finite, std::numeric_limits<double>::infinity()});
    return out;
  }
  const double herm = hermiticity_deviation(m);
  if (herm > kHermiticityTolerance) out.violations.push_back({Invariant::Hermiticity, herm});

  const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_dev > kTraceTolerance) out.violations.push_back({Invariant::Trace, trace_dev});

  // Positivity is judged on the Hermitian part so that a small Hermiticity
  // violation does not also masquerade as a spectral one.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  const double lambda_min = solver.eigenvalues().minCoeff();
  if (lambda_min < -kPositivityTolerance) {
    out.violations.push_back({Invariant::Positivity, -lambda_min});
  }
  if (out.ok()) {
    out.matrix_ = m;
    out.dims_ = dims;
  }
  return out;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, Dims dims) {
  if (dims.a < 1 || dims.b < 1 || m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DimensionError("density matrix shape does not match subsystem dimensions");
  }
  auto check = validate_density_matrix(m, dims);
  if (!check.ok()) {
    double worst = 0.0;
    for (const auto& v : check.violations) worst = std::max(worst, v.magnitude);
    throw ValidationError(check.describe(), worst);
  }
  return DensityMatrix(std::move(m), dims);
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

DensityMatrix make_bell_state(int d) {
  if (d < 2) throw DimensionError("make_bell_state: dimension must be >= 2");
  Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(d * d);
  const double amp = 1.0 / std::sqrt(double(d));
  for (int i = 0; i < d; ++i) phi(i * d + i) = amp;
  return DensityMatrix::from_matrix(phi * phi.adjoint(), {d, d});
}

DensityMatrix maximally_mixed(Dims dims) {
  const int n = dims.total();
  return DensityMatrix::from_matrix(ComplexMatrix::Identity(n, n) / double(n), dims);
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Dims dims, Subsystem subsystem) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DimensionError("partial_transpose: shape does not match dims");
  }
  ComplexMatrix out(m.rows(), m.cols());
  for (int ia = 0; ia < dims.a; ++ia) {
    for (int ib = 0; ib < dims.b; ++ib) {
      for (int ja = 0; ja < dims.a; ++ja) {
        for (int jb = 0; jb < dims.b; ++jb) {
          const int row = ia * dims.b + ib;
          const int col = ja * dims.b + jb;
          if (subsystem == Subsystem::A) {
            out(row, col) = m(ja * dims.b + ib, ia * dims.b + jb);
          } else {
            out(row, col) = m(ia * dims.b + jb, ja * dims.b + ib);
          }
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem subsystem) {
  return partial_transpose(rho.matrix(), rho.dims(), subsystem);
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Subsystem keep) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DimensionError("partial_trace: shape does not match dims");
  }
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dims.a, dims.a);
    for (int i = 0; i < dims.a; ++i)
      for (int j = 0; j < dims.a; ++j)
        out(i, j) = m.block(i * dims.b, j * dims.b, dims.b, dims.b).trace();
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dims.b, dims.b);
  for (int k = 0; k < dims.a; ++k) out += m.block(k * dims.b, k * dims.b, dims.b, dims.b);
  return out;
}

ComplexMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  return partial_trace(rho.matrix(), rho.dims(), keep);
}

}  // namespace qcorr
