#include <catch2/catch_amalgamated.hpp>

#include "qcorr/error.hpp"
#include "qcorr/generators.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/random.hpp"
#include "support/reference.hpp"

using namespace qcorr;
using qcorr::testing::max_abs_diff;
using Catch::Approx;

namespace {

constexpr GdConvention kRaw{GdPrefactor::Raw, true};

DensityMatrix product_state(const ComplexMatrix& a, const ComplexMatrix& b) {
  return DensityMatrix::from_matrix(tensor(a, b), {int(a.rows()), int(b.rows())});
}

ComplexMatrix random_qutrit(std::mt19937_64& rng) {
  return random_density_matrix({3, 1}, rng).matrix();
}

// sum_k p_k |k><k| x sigma_k: zero discord for measurements on A.
DensityMatrix classical_quantum(std::mt19937_64& rng, const ComplexMatrix& basis_a) {
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  ComplexMatrix m = ComplexMatrix::Zero(9, 9);
  double total = 0.0;
  std::vector<double> w(3);
  for (auto& x : w) total += (x = unit(rng));
  for (int k = 0; k < 3; ++k) {
    const ComplexMatrix ket = basis_a.col(k);
    m += (w[k] / total) * tensor(ket * ket.adjoint(), random_qutrit(rng));
  }
  return DensityMatrix::from_matrix(m, {3, 3});
}

}  // namespace

TEST_CASE("negativity examples", "[measures]") {
  CHECK(negativity(make_bell_state(3)) == Approx(1.0).margin(1e-12));
  CHECK(negativity(make_bell_state(2)) == Approx(0.5).margin(1e-12));
  CHECK(negativity(maximally_mixed({3, 3})) == Approx(0.0).margin(1e-12));
  CHECK(negativity(isotropic_family(0.5)) == Approx(1.0 / 3.0).margin(1e-12));
  CHECK(negativity(isotropic_family(0.25)) == Approx(0.0).margin(1e-12));
  CHECK(negativity(isotropic_family(0.2)) == 0.0);
}

TEST_CASE("negativity vanishes on product states", "[measures][property]") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = product_state(random_qutrit(rng), random_qutrit(rng));
    CHECK(negativity(rho) < 1e-12);
  }
}

TEST_CASE("trace-norm and spectral negativity agree", "[measures][property]") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = random_density_matrix({3, 3}, rng, 1 + trial % 9);
    CHECK(negativity(rho) == Approx(negativity_spectral(rho)).margin(1e-10));
    CHECK(negativity(rho) >= 0.0);
  }
}

TEST_CASE("negativity is invariant under local unitaries", "[measures][property]") {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_density_matrix({3, 3}, rng, 2);
    const ComplexMatrix u = tensor(random_unitary(3, rng), random_unitary(3, rng));
    const auto rotated = DensityMatrix::from_matrix(u * rho.matrix() * u.adjoint(), {3, 3});
    CHECK(negativity(rotated) == Approx(negativity(rho)).margin(1e-10));
  }
}

TEST_CASE("Bell correlation matrix is (3/2) diag(+-1)", "[measures]") {
  const auto bloch = bloch_decomposition(make_bell_state(3));
  CHECK(bloch.y_a.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(bloch.z_b.cwiseAbs().maxCoeff() < 1e-14);
  // Symmetric and diagonal generators are real (transpose-even), the
  // antisymmetric ones are transpose-odd.
  RealVector expected(8);
  expected << 1.5, 1.5, 1.5, -1.5, -1.5, -1.5, 1.5, 1.5;
  RealMatrix v = bloch.correlations;
  CHECK((v.diagonal() - expected).cwiseAbs().maxCoeff() < 1e-14);
  v.diagonal().setZero();
  CHECK(v.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("product states have V = y z^T", "[measures][property]") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 10; ++trial) {
    const auto bloch = bloch_decomposition(product_state(random_qutrit(rng), random_qutrit(rng)));
    const RealMatrix outer = bloch.y_a * bloch.z_b.transpose();
    CHECK((bloch.correlations - outer).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Bloch decomposition round-trips", "[measures][property]") {
  std::mt19937_64 rng(113);
  for (Dims dims : {Dims{3, 3}, Dims{2, 3}, Dims{3, 2}, Dims{2, 2}, Dims{4, 3}}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto rho = random_density_matrix(dims, rng);
      const auto bloch = bloch_decomposition(rho);
      CHECK(bloch.y_a.size() == dims.a * dims.a - 1);
      CHECK(bloch.z_b.size() == dims.b * dims.b - 1);
      CHECK(max_abs_diff(synthesize(bloch), rho.matrix()) < 1e-12);
    }
  }
}

TEST_CASE("Bloch components match an explicit generator contraction", "[measures]") {
  std::mt19937_64 rng(127);
  const auto rho = random_density_matrix({3, 3}, rng);
  const auto bloch = bloch_decomposition(rho);
  const auto& xi = cached_su_generators(3);
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(bloch.y_a(k) == Approx(1.5 * (rho.matrix() * qcorr::testing::naive_kron(xi[k], id)).trace().real()).margin(1e-13));
    CHECK(bloch.z_b(k) == Approx(1.5 * (rho.matrix() * qcorr::testing::naive_kron(id, xi[k])).trace().real()).margin(1e-13));
    for (std::size_t l = 0; l < 8; ++l) {
      const double expected = 2.25 * (rho.matrix() * qcorr::testing::naive_kron(xi[k], xi[l])).trace().real();
      CHECK(bloch.correlations(k, l) == Approx(expected).margin(1e-13));
    }
  }
}

TEST_CASE("GD lower bound examples", "[measures]") {
  const auto bell = make_bell_state(3);
  CHECK(gd_lower_bound(bell) == Approx(4.0 / 3.0).margin(1e-12));
  CHECK(gd_lower_bound(bell, kRaw) == Approx(2.0 / 3.0).margin(1e-12));
  CHECK(gd_lower_bound(maximally_mixed({3, 3})) == Approx(0.0).margin(1e-14));
  for (double p : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    CHECK(gd_lower_bound(isotropic_family(p), kRaw) == Approx(2.0 * p * p / 3.0).margin(1e-12));
  }
}

TEST_CASE("GD bound detail for the Bell state", "[measures]") {
  const auto detail = gd_bound_detail(bloch_decomposition(make_bell_state(3)), 2);
  CHECK(detail.y_norm_sq == Approx(0.0).margin(1e-14));
  CHECK(detail.v_norm_sq == Approx(18.0).margin(1e-12));
  REQUIRE(detail.eigenvalues.size() == 8);
  for (double ev : detail.eigenvalues) CHECK(ev == Approx(1.5).margin(1e-12));
  CHECK(detail.subtracted == Approx(3.0).margin(1e-12));
  CHECK(detail.bracket == Approx(9.0).margin(1e-12));
}

TEST_CASE("subtracting every eigenvalue collapses the bracket", "[measures][erratum]") {
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 10; ++trial) {
    const auto bloch = bloch_decomposition(random_density_matrix({3, 3}, rng));
    CHECK(std::abs(gd_bound_detail(bloch, 8).bracket) < 1e-12);
  }
  CHECK(std::abs(gd_bound_detail(bloch_decomposition(make_bell_state(3)), 8).bracket) < 1e-12);
}

TEST_CASE("GD bound vanishes on product and classical-quantum states", "[measures][property]") {
  std::mt19937_64 rng(137);
  for (int trial = 0; trial < 20; ++trial) {
    CHECK(gd_lower_bound(product_state(random_qutrit(rng), random_qutrit(rng))) < 1e-12);
    const ComplexMatrix basis =
        trial % 2 == 0 ? ComplexMatrix(ComplexMatrix::Identity(3, 3)) : random_unitary(3, rng);
    CHECK(gd_lower_bound(classical_quantum(rng, basis)) < 1e-12);
  }
}

TEST_CASE("paper prefactor is twice the raw one", "[measures][property]") {
  std::mt19937_64 rng(139);
  CHECK(gd_prefactor(GdPrefactor::Paper, {3, 3}) == Approx(4.0 / 27.0));
  CHECK(gd_prefactor(GdPrefactor::Raw, {3, 3}) == Approx(2.0 / 27.0));
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_density_matrix({3, 3}, rng);
    CHECK(gd_lower_bound(rho) == Approx(2.0 * gd_lower_bound(rho, kRaw)).margin(1e-14));
  }
}

TEST_CASE("unclamped bound can go negative only by rounding", "[measures][property]") {
  std::mt19937_64 rng(149);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rho = random_density_matrix({3, 3}, rng);
    CHECK(gd_lower_bound(rho, {GdPrefactor::Raw, false}) > -1e-12);
    CHECK(gd_lower_bound(rho, kRaw) >= 0.0);
  }
}

TEST_CASE("GD bound is invariant under local unitaries", "[measures][property]") {
  std::mt19937_64 rng(151);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_density_matrix({3, 3}, rng, 3);
    const ComplexMatrix u = tensor(random_unitary(3, rng), random_unitary(3, rng));
    const auto rotated = DensityMatrix::from_matrix(u * rho.matrix() * u.adjoint(), {3, 3});
    CHECK(gd_lower_bound(rotated) == Approx(gd_lower_bound(rho)).margin(1e-10));
  }
}

TEST_CASE("prefactor names round-trip", "[measures]") {
  for (auto mode : {GdPrefactor::Paper, GdPrefactor::Raw})
    CHECK(parse_gd_prefactor(to_string(mode)) == mode);
  CHECK_FALSE(parse_gd_prefactor("half").has_value());
}

TEST_CASE("isotropic family rejects weights outside [0,1]", "[measures][error]") {
  CHECK_THROWS_AS(isotropic_family(-0.01), DomainError);
  CHECK_THROWS_AS(isotropic_family(1.01), DomainError);
  CHECK(max_abs_diff(isotropic_family(1.0).matrix(), make_bell_state(3).matrix()) < 1e-15);
}
