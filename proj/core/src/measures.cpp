#include "qcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "qcorr/error.hpp"
#include "qcorr/generators.hpp"

namespace qcorr {
namespace {

// Tr(rho X) without forming the product.
Complex trace_product(const ComplexMatrix& rho, const ComplexMatrix& x) {
  return (rho.array() * x.transpose().array()).sum();
}

double real_part_checked(Complex value, const char* what) {
  if (std::abs(value.imag()) > kBlochImagTolerance) {
    std::ostringstream os;
    os << "bloch_decomposition: " << what << " has imaginary part " << value.imag();
    throw NumericalError(os.str());
  }
  return value.real();
}

}  // namespace

double negativity(const DensityMatrix& rho) {
  const double norm = trace_norm(partial_transpose(rho, Subsystem::A));
  const double n = 0.5 * (norm - 1.0);
  // Same noise floor as the spectral route: PPT states report exactly 0.
  return n <= kEigenZeroTolerance ? 0.0 : n;
}

double negativity_spectral(const DensityMatrix& rho) {
  double sum = 0.0;
  for (double lambda : hermitian_eigenvalues(partial_transpose(rho, Subsystem::A))) {
    if (lambda < -kEigenZeroTolerance) sum -= lambda;
  }
  return sum;
}

BlochDecomposition bloch_decomposition(const DensityMatrix& rho) {
  const Dims dims = rho.dims();
  const auto& gen_a = cached_su_generators(dims.a);
  const auto& gen_b = cached_su_generators(dims.b);
  const ComplexMatrix id_b = ComplexMatrix::Identity(dims.b, dims.b);
  const ComplexMatrix& m = rho.matrix();

  BlochDecomposition out;
  out.dims = dims;
  out.y_a.resize(Eigen::Index(gen_a.size()));
  out.z_b.resize(Eigen::Index(gen_b.size()));
  out.correlations.resize(Eigen::Index(gen_a.size()), Eigen::Index(gen_b.size()));

  // Tr(rho xi_k x xi_l) = Tr_B(xi_l Tr_A[(xi_k x I) rho]).
  for (std::size_t k = 0; k < gen_a.size(); ++k) {
    const ComplexMatrix reduced =
        partial_trace(tensor(gen_a[k], id_b) * m, dims, Subsystem::B);  // d2 x d2
    out.y_a(Eigen::Index(k)) =
        0.5 * dims.a * real_part_checked(reduced.trace(), "y component");
    for (std::size_t l = 0; l < gen_b.size(); ++l) {
      out.correlations(Eigen::Index(k), Eigen::Index(l)) =
          0.25 * dims.a * dims.b *
          real_part_checked(trace_product(reduced, gen_b[l]), "correlation entry");
    }
  }
  const ComplexMatrix rho_b = partial_trace(m, dims, Subsystem::B);
  for (std::size_t l = 0; l < gen_b.size(); ++l) {
    out.z_b(Eigen::Index(l)) =
        0.5 * dims.b * real_part_checked(trace_product(rho_b, gen_b[l]), "z component");
  }
  return out;
}

ComplexMatrix synthesize(const BlochDecomposition& bloch) {
  const Dims dims = bloch.dims;
  const auto& gen_a = cached_su_generators(dims.a);
  const auto& gen_b = cached_su_generators(dims.b);
  const ComplexMatrix id_a = ComplexMatrix::Identity(dims.a, dims.a);
  const ComplexMatrix id_b = ComplexMatrix::Identity(dims.b, dims.b);

  ComplexMatrix local_a = ComplexMatrix::Zero(dims.a, dims.a);
  for (std::size_t k = 0; k < gen_a.size(); ++k) local_a += bloch.y_a(Eigen::Index(k)) * gen_a[k];
  ComplexMatrix local_b = ComplexMatrix::Zero(dims.b, dims.b);
  for (std::size_t l = 0; l < gen_b.size(); ++l) local_b += bloch.z_b(Eigen::Index(l)) * gen_b[l];

  ComplexMatrix out = ComplexMatrix::Identity(dims.total(), dims.total());
  out += tensor(local_a, id_b) + tensor(id_a, local_b);
  for (std::size_t k = 0; k < gen_a.size(); ++k) {
    ComplexMatrix row = ComplexMatrix::Zero(dims.b, dims.b);
    for (std::size_t l = 0; l < gen_b.size(); ++l) {
      row += bloch.correlations(Eigen::Index(k), Eigen::Index(l)) * gen_b[l];
    }
    out += tensor(gen_a[k], row);
  }
  return out / double(dims.total());
}

std::string_view to_string(GdPrefactor mode) {
  return mode == GdPrefactor::Paper ? "paper" : "raw";
}

std::optional<GdPrefactor> parse_gd_prefactor(std::string_view name) {
  if (name == "paper") return GdPrefactor::Paper;
  if (name == "raw") return GdPrefactor::Raw;
  return std::nullopt;
}

double gd_prefactor(GdPrefactor mode, Dims dims) {
  const double scale = mode == GdPrefactor::Paper ? 4.0 : 2.0;
  return scale / (double(dims.a) * dims.a * dims.b);
}

GdBoundDetail gd_bound_detail(const BlochDecomposition& bloch, std::size_t eigen_count) {
  const double weight = 2.0 / bloch.dims.b;
  const RealMatrix g = bloch.y_a * bloch.y_a.transpose() +
                       weight * bloch.correlations * bloch.correlations.transpose();
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(g, Eigen::EigenvaluesOnly);

  GdBoundDetail out;
  out.y_norm_sq = bloch.y_a.squaredNorm();
  out.v_norm_sq = bloch.correlations.squaredNorm();
  const auto& ev = solver.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  const std::size_t take = std::min(eigen_count, out.eigenvalues.size());
  for (std::size_t n = 0; n < take; ++n) out.subtracted += out.eigenvalues[n];
  out.bracket = out.y_norm_sq + weight * out.v_norm_sq - out.subtracted;
  return out;
}

double gd_lower_bound(const DensityMatrix& rho, GdConvention conv) {
  const auto detail =
      gd_bound_detail(bloch_decomposition(rho), std::size_t(rho.dims().a - 1));
  const double value = gd_prefactor(conv.prefactor, rho.dims()) * detail.bracket;
  return conv.clamp_nonnegative ? std::max(0.0, value) : value;
}

DensityMatrix isotropic_family(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("isotropic_family: p outside [0,1]");
  const ComplexMatrix bell = make_bell_state(3).matrix();
  return DensityMatrix::from_matrix(p * bell + (1.0 - p) * ComplexMatrix::Identity(9, 9) / 9.0,
                                    {3, 3});
}

}  // namespace qcorr
