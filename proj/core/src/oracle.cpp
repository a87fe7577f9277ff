#include "qcorr/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "qcorr/error.hpp"
#include "qcorr/generators.hpp"

namespace qcorr::oracle {
namespace {

constexpr double kInitialStep = 0.4;
constexpr double kMinStep = 1e-7;
constexpr long kMaxEvaluationsPerRestart = 40000;
constexpr double kGradientProbe = 1e-5;

void check_rates(double rate_a, double rate_b, double time) {
  if (!(rate_a >= 0.0) || !(rate_b >= 0.0) || !(time >= 0.0)) {
    throw DomainError("decay rates and time must be non-negative");
  }
}

// (q_a + q_b) t, with 0 * inf taken as 0.
double decay_exponent(double rate_a, double rate_b, double time) {
  const double total = rate_a + rate_b;
  return (total == 0.0 || time == 0.0) ? 0.0 : total * time;
}

// rho viewed as a d x d array of blocks indexed by the measured side, with
// the unmeasured side inside each block. Measuring in basis U keeps the
// blocks sum_{b,b'} conj(U_ba) U_b'a rho_bb' on the diagonal, so by unitary
// invariance of the Hilbert-Schmidt norm
//   ||rho - Pi(rho)||^2 = Tr(rho^2) - sum_a ||sum_{b,b'} conj(U_ba) U_b'a rho_bb'||^2.
class BlockedState {
 public:
  BlockedState(const ComplexMatrix& rho, Dims dims, Subsystem side)
      : measured_(side == Subsystem::A ? dims.a : dims.b),
        inner_(side == Subsystem::A ? dims.b : dims.a),
        purity_(rho.squaredNorm()) {
    blocks_.reserve(std::size_t(measured_) * measured_);
    for (int b = 0; b < measured_; ++b) {
      for (int bp = 0; bp < measured_; ++bp) {
        ComplexMatrix block(inner_, inner_);
        for (int i = 0; i < inner_; ++i) {
          for (int j = 0; j < inner_; ++j) {
            block(i, j) = side == Subsystem::A ? rho(b * dims.b + i, bp * dims.b + j)
                                               : rho(i * dims.b + b, j * dims.b + bp);
          }
        }
        blocks_.push_back(std::move(block));
      }
    }
  }

  double distance_sq(const ComplexMatrix& u) const {
    double kept = 0.0;
    ComplexMatrix diag_block(inner_, inner_);
    for (int a = 0; a < measured_; ++a) {
      diag_block.setZero();
      for (int b = 0; b < measured_; ++b) {
        const Complex left = std::conj(u(b, a));
        for (int bp = 0; bp < measured_; ++bp) {
          diag_block += (left * u(bp, a)) * blocks_[std::size_t(b * measured_ + bp)];
        }
      }
      kept += diag_block.squaredNorm();
    }
    return std::max(0.0, purity_ - kept);
  }

 private:
  int measured_;
  int inner_;
  double purity_;
  std::vector<ComplexMatrix> blocks_;
};

struct RestartOutcome {
  double value = std::numeric_limits<double>::infinity();
  ComplexMatrix unitary;
  long evaluations = 0;
};

RestartOutcome refine(const BlockedState& state, ComplexMatrix start,
                      const std::vector<ComplexMatrix>& directions) {
  RestartOutcome out;
  out.unitary = std::move(start);
  out.value = state.distance_sq(out.unitary);
  out.evaluations = 1;

  double step = kInitialStep;
  std::vector<ComplexMatrix> moves(2 * directions.size());
  while (step > kMinStep && out.evaluations < kMaxEvaluationsPerRestart) {
    for (std::size_t m = 0; m < directions.size(); ++m) {
      moves[2 * m] = unitary_exp(step * directions[m]);
      moves[2 * m + 1] = moves[2 * m].adjoint();
    }
    bool improved = false;
    for (const auto& move : moves) {
      ComplexMatrix trial = out.unitary * move;
      const double f = state.distance_sq(trial);
      ++out.evaluations;
      if (f < out.value) {
        out.value = f;
        out.unitary = std::move(trial);
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return out;
}

double gradient_norm(const BlockedState& state, const ComplexMatrix& u,
                     const std::vector<ComplexMatrix>& directions) {
  double sum = 0.0;
  for (const auto& dir : directions) {
    const ComplexMatrix plus = u * unitary_exp(kGradientProbe * dir);
    const ComplexMatrix minus = u * unitary_exp(-kGradientProbe * dir);
    const double g =
        (state.distance_sq(plus) - state.distance_sq(minus)) /
        (2.0 * kGradientProbe);
    sum += g * g;
  }
  return std::sqrt(sum);
}

ComplexMatrix random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix h(d, d);
  for (int i = 0; i < d; ++i) {
    h(i, i) = normal(rng);
    for (int j = i + 1; j < d; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      h(i, j) = Complex(re, im);
      h(j, i) = Complex(re, -im);
    }
  }
  return unitary_exp(h);
}

}  // namespace

MeasurementBasis::MeasurementBasis(ComplexMatrix unitary) : unitary_(std::move(unitary)) {
  if (unitary_.rows() < 1 || !(unitarity_deviation(unitary_) <= kBasisUnitarityTolerance)) {
    throw DomainError("MeasurementBasis: matrix is not unitary");
  }
}

MeasurementBasis MeasurementBasis::computational(int d) {
  return MeasurementBasis(ComplexMatrix::Identity(d, d));
}

DensityMatrix project_measurement(const DensityMatrix& rho, const MeasurementBasis& basis,
                                  Subsystem side) {
  const Dims dims = rho.dims();
  const int d = side == Subsystem::A ? dims.a : dims.b;
  if (basis.dim() != d) throw DimensionError("project_measurement: basis dimension mismatch");
  const ComplexMatrix& u = basis.unitary();
  ComplexMatrix out = ComplexMatrix::Zero(dims.total(), dims.total());
  for (int k = 0; k < d; ++k) {
    const ComplexMatrix proj = u.col(k) * u.col(k).adjoint();
    const ComplexMatrix op = side == Subsystem::A
                                 ? tensor(proj, ComplexMatrix::Identity(dims.b, dims.b))
                                 : tensor(ComplexMatrix::Identity(dims.a, dims.a), proj);
    out.noalias() += op * rho.matrix() * op;
  }
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix::from_matrix(std::move(out), dims);
}

double measurement_distance_sq(const DensityMatrix& rho, const MeasurementBasis& basis,
                               Subsystem side) {
  const int d = side == Subsystem::A ? rho.dims().a : rho.dims().b;
  if (basis.dim() != d) throw DimensionError("measurement_distance_sq: basis dimension mismatch");
  return BlockedState(rho.matrix(), rho.dims(), side).distance_sq(basis.unitary());
}

OracleResult gd_exact(const DensityMatrix& rho, int restarts, std::uint64_t seed, Subsystem side) {
  if (restarts < 1) throw DomainError("gd_exact: restarts must be >= 1");
  const Dims dims = rho.dims();
  const int d = side == Subsystem::A ? dims.a : dims.b;

  // The d(d-1) off-diagonal generators span the basis manifold; diagonal
  // directions only rephase the basis vectors and leave Pi unchanged.
  const auto& gens = cached_su_generators(d);
  const std::vector<ComplexMatrix> directions(gens.generators.begin(),
                                              gens.generators.begin() + std::ptrdiff_t(d) * (d - 1));

  const BlockedState state(rho.matrix(), dims, side);
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < restarts; r = next++) {
      std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(r)};
      std::mt19937_64 rng(seq);
      outcomes[std::size_t(r)] =
          refine(state, random_unitary(d, rng), directions);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads = std::min<unsigned>(hw, unsigned(restarts));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  std::size_t best = 0;
  long evaluations = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    evaluations += outcomes[r].evaluations;
    if (outcomes[r].value < outcomes[best].value) best = r;
  }
  OracleResult result;
  result.value = std::max(0.0, outcomes[best].value);
  result.basis = MeasurementBasis(outcomes[best].unitary);
  result.restarts_used = restarts;
  result.seed = seed;
  result.residual_gradient =
      gradient_norm(state, outcomes[best].unitary, directions);
  result.evaluations = evaluations;
  return result;
}

double analytic_negativity_dephasing(double rate_a, double rate_b, double time) {
  check_rates(rate_a, rate_b, time);
  const double s = std::exp(-0.5 * decay_exponent(rate_a, rate_b, time));
  return (2.0 * s + s * s) / 3.0;
}

double analytic_negativity_depolarizing(double rate_a, double rate_b, double time) {
  check_rates(rate_a, rate_b, time);
  const double p = std::exp(-decay_exponent(rate_a, rate_b, time));
  return std::max(0.0, (4.0 * p - 1.0) / 3.0);
}

double depolarizing_sudden_death_time(double rate_a, double rate_b) {
  check_rates(rate_a, rate_b, 0.0);
  const double total = rate_a + rate_b;
  if (total == 0.0) return std::numeric_limits<double>::infinity();
  return std::log(4.0) / total;
}

double analytic_gd_isotropic(double p, GdConvention conv) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("analytic_gd_isotropic: p outside [0,1]");
  const double raw = 2.0 / 3.0 * p * p;
  return conv.prefactor == GdPrefactor::Paper ? 2.0 * raw : raw;
}

}  // namespace qcorr::oracle
