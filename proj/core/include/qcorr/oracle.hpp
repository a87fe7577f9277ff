#pragma once

// Reference values used to verify the production measures: brute-force
// geometric discord over projective measurements, and closed forms for the
// channel families that admit them.

#include <cstdint>

#include "qcorr/linalg.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/state.hpp"

namespace qcorr::oracle {

inline constexpr double kBasisUnitarityTolerance = 1e-10;
inline constexpr int kDefaultRestarts = 32;

/// Orthonormal measurement basis; column k of the unitary is |u_k>.
class MeasurementBasis {
 public:
  /// Throws DomainError unless `unitary` is unitary within 1e-10.
  explicit MeasurementBasis(ComplexMatrix unitary);
  static MeasurementBasis computational(int d);

  const ComplexMatrix& unitary() const { return unitary_; }
  int dim() const { return int(unitary_.rows()); }

 private:
  ComplexMatrix unitary_;
};

/// Pi(rho) = sum_k (P_k x I) rho (P_k x I) for side A (I x P_k for side B).
/// The result is a zero-discord state with respect to the measured side.
DensityMatrix project_measurement(const DensityMatrix& rho, const MeasurementBasis& basis,
                                  Subsystem side = Subsystem::A);

/// ||rho - Pi(rho)||^2 in the squared Hilbert-Schmidt norm.
double measurement_distance_sq(const DensityMatrix& rho, const MeasurementBasis& basis,
                               Subsystem side = Subsystem::A);

struct OracleResult {
  double value = 0.0;  // minimized ||rho - Pi(rho)||^2
  MeasurementBasis basis = MeasurementBasis::computational(1);
  int restarts_used = 0;
  std::uint64_t seed = 0;
  /// Finite-difference gradient norm of the objective at the optimum, in
  /// the local basis-manifold coordinates.
  double residual_gradient = 0.0;
  long evaluations = 0;
};

/// Exact geometric discord by minimizing ||rho - Pi_U(rho)||^2 over the
/// measurement unitaries U of `side`. Each restart draws a random Hermitian
/// H (Gaussian entries) and starts from exp(iH), then refines with a
/// derivative-free coordinate search over the d(d-1) off-diagonal Hermitian
/// directions with a halving step. Restarts run concurrently; the result is
/// the minimum folded in restart order, so it is bit-identical for a given
/// (seed, restarts). Throws DomainError for restarts < 1.
OracleResult gd_exact(const DensityMatrix& rho, int restarts = kDefaultRestarts,
                      std::uint64_t seed = 0, Subsystem side = Subsystem::A);

/// Negativity of the Bell state after local dephasing at rates q_a, q_b for
/// time t: (2s + s^2)/3 with s = exp(-(q_a + q_b) t / 2).
double analytic_negativity_dephasing(double rate_a, double rate_b, double time);

/// Negativity of the Bell state after local depolarizing noise:
/// max(0, (4p - 1)/3) with p = exp(-(q_a + q_b) t).
double analytic_negativity_depolarizing(double rate_a, double rate_b, double time);

/// Time ln(4)/(q_a + q_b) at which depolarizing noise kills the negativity;
/// +inf when both rates vanish.
double depolarizing_sudden_death_time(double rate_a, double rate_b);

/// GD lower bound of the isotropic state with weight p: (2/3) p^2 in raw
/// units, (4/3) p^2 in paper units.
double analytic_gd_isotropic(double p, GdConvention conv = {});

}  // namespace qcorr::oracle
