#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

enum class Subsystem { A, B };

/// Local dimensions (d1, d2) of a bipartite Hilbert space.
struct Dims {
  int a = 0;
  int b = 0;
  int total() const { return a * b; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Tolerances certified by DensityMatrix.
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;

enum class Invariant { Shape, Finite, Hermiticity, Trace, Positivity };

std::string to_string(Invariant inv);

struct Violation {
  Invariant invariant;
  /// How far the invariant is violated: max |rho - rho^dagger| entry,
  /// |Tr rho - 1|, or -lambda_min.
  double magnitude;
};

class DensityMatrix;

/// Outcome of validate_density_matrix(): either a certified state or the
/// list of violated invariants.
struct DensityValidation {
  std::vector<Violation> violations;
  std::optional<DensityMatrix> state() const;
  bool ok() const { return violations.empty(); }
  std::string describe() const;

 private:
  friend DensityValidation validate_density_matrix(const ComplexMatrix&, Dims);
  std::optional<ComplexMatrix> matrix_;
  Dims dims_{};
};

DensityValidation validate_density_matrix(const ComplexMatrix& m, Dims dims);

/// Hermitian, unit-trace, positive semidefinite bipartite state. Instances
/// can only be obtained through validation, so every DensityMatrix in the
/// program satisfies the tolerances above.
class DensityMatrix {
 public:
  /// Validates `m`; throws ValidationError (carrying the largest violation)
  /// or DimensionError.
  static DensityMatrix from_matrix(ComplexMatrix m, Dims dims);

  const ComplexMatrix& matrix() const { return matrix_; }
  Dims dims() const { return dims_; }
  int dim() const { return dims_.total(); }
  double purity() const;

 private:
  friend struct DensityValidation;
  DensityMatrix(ComplexMatrix m, Dims dims) : matrix_(std::move(m)), dims_(dims) {}

  ComplexMatrix matrix_;
  Dims dims_;
};

/// |Phi><Phi| with |Phi> = d^{-1/2} sum_i |ii>. Throws DimensionError for d < 2.
DensityMatrix make_bell_state(int d);

/// I / (d1 d2).
DensityMatrix maximally_mixed(Dims dims);

/// Transposes the indices of `subsystem` only.
ComplexMatrix partial_transpose(const ComplexMatrix& m, Dims dims, Subsystem subsystem);
ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem subsystem);

/// Reduced state on `keep`, tracing out the other factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, Dims dims, Subsystem keep);
ComplexMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

}  // namespace qcorr
