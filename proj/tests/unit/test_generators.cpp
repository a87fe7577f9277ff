#include <catch2/catch_amalgamated.hpp>

#include "qcorr/error.hpp"
#include "qcorr/generators.hpp"
#include "qcorr/random.hpp"
#include "support/reference.hpp"

using namespace qcorr;
using qcorr::testing::max_abs_diff;

TEST_CASE("SU(2) generators are the Pauli matrices", "[generators]") {
  const auto basis = su_generators(2);
  REQUIRE(basis.size() == 3);
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  CHECK(max_abs_diff(basis[0], x) == 0.0);
  CHECK(max_abs_diff(basis[1], y) == 0.0);
  CHECK(max_abs_diff(basis[2], z) < 1e-15);
}

TEST_CASE("generator counts are d^2 - 1", "[generators]") {
  CHECK(su_generators(3).size() == 8);
  CHECK(su_generators(4).size() == 15);
  CHECK_THROWS_AS(su_generators(1), DimensionError);
}

TEST_CASE("generators are traceless, Hermitian and orthogonal", "[generators][property]") {
  for (int d = 2; d <= 6; ++d) {
    const auto basis = su_generators(d);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      CHECK(std::abs(basis[k].trace()) < 1e-12);
      CHECK(hermiticity_deviation(basis[k]) == 0.0);
      for (std::size_t l = 0; l < basis.size(); ++l) {
        const Complex ip = (basis[k] * basis[l]).trace();
        CHECK(std::abs(ip - Complex(k == l ? 2.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("canonical order: symmetric, antisymmetric, diagonal", "[generators]") {
  const auto basis = su_generators(3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(max_abs_diff(basis[k], basis[k].transpose()) == 0.0);
  for (std::size_t k = 3; k < 6; ++k) CHECK(max_abs_diff(basis[k], -basis[k].transpose()) == 0.0);
  for (std::size_t k = 6; k < 8; ++k) {
    ComplexMatrix off = basis[k];
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() == 0.0);
  }
  // (0,1) pair first, then (0,2), then (1,2).
  CHECK(basis[0](0, 1) == Complex(1.0));
  CHECK(basis[1](0, 2) == Complex(1.0));
  CHECK(basis[2](1, 2) == Complex(1.0));
}

TEST_CASE("Bloch expansion over generators reconstructs any state", "[generators][property]") {
  std::mt19937_64 rng(31);
  for (int d = 2; d <= 5; ++d) {
    const auto basis = su_generators(d);
    for (int trial = 0; trial < 5; ++trial) {
      const ComplexMatrix rho = random_density_matrix({d, 1}, rng).matrix();
      ComplexMatrix rebuilt = ComplexMatrix::Identity(d, d) / double(d);
      for (const auto& g : basis.generators) rebuilt += 0.5 * (rho * g).trace() * g;
      CHECK(max_abs_diff(rebuilt, rho) < 1e-10);
    }
  }
}

TEST_CASE("cached generators match fresh ones", "[generators]") {
  const auto& cached = cached_su_generators(3);
  const auto fresh = su_generators(3);
  for (std::size_t k = 0; k < fresh.size(); ++k) CHECK(max_abs_diff(cached[k], fresh[k]) == 0.0);
  CHECK(&cached_su_generators(3) == &cached);
}
