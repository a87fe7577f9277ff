#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "qcorr/error.hpp"
#include "qcorr/linalg.hpp"
#include "support/reference.hpp"

using namespace qcorr;
using qcorr::testing::max_abs_diff;
using qcorr::testing::random_complex;
using qcorr::testing::random_hermitian;
using Catch::Approx;

TEST_CASE("tensor of identities is identity", "[linalg]") {
  const ComplexMatrix i3 = ComplexMatrix::Identity(3, 3);
  CHECK(max_abs_diff(tensor(i3, i3), ComplexMatrix::Identity(9, 9)) == 0.0);
}

TEST_CASE("tensor of diagonals follows A-major ordering", "[linalg]") {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a.diagonal() << 1.0, 2.0;
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b.diagonal() << 3.0, 4.0;
  const ComplexMatrix k = tensor(a, b);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.diagonal() << 3.0, 4.0, 6.0, 8.0;
  CHECK(max_abs_diff(k, expected) == 0.0);
}

TEST_CASE("tensor agrees with four-index enumeration", "[linalg]") {
  std::mt19937_64 rng(7);
  const ComplexMatrix a = random_complex(2, 3, rng);
  const ComplexMatrix b = random_complex(3, 2, rng);
  CHECK(max_abs_diff(tensor(a, b), qcorr::testing::naive_kron(a, b)) == 0.0);
}

TEST_CASE("mixed-product property (A x B)(C x D) = AC x BD", "[linalg][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_complex(3, 3, rng), b = random_complex(3, 3, rng);
    const auto c = random_complex(3, 3, rng), d = random_complex(3, 3, rng);
    CHECK(max_abs_diff(tensor(a, b) * tensor(c, d), tensor(a * c, b * d)) < 1e-12);
  }
}

TEST_CASE("tensor is associative", "[linalg][property]") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_complex(2, 2, rng), b = random_complex(3, 2, rng),
               c = random_complex(2, 3, rng);
    CHECK(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))) < 1e-13);
  }
}

TEST_CASE("hermitian_eigenvalues sorts non-increasing", "[linalg]") {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m.diagonal() << 1.0, -2.0, 5.0;
  const auto ev = hermitian_eigenvalues(m);
  REQUIRE(ev.size() == 3);
  CHECK(ev[0] == Approx(5.0).margin(1e-14));
  CHECK(ev[1] == Approx(1.0).margin(1e-14));
  CHECK(ev[2] == Approx(-2.0).margin(1e-14));

  ComplexMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  const auto px = hermitian_eigenvalues(x);
  CHECK(px[0] == Approx(1.0).margin(1e-14));
  CHECK(px[1] == Approx(-1.0).margin(1e-14));
}

TEST_CASE("hermitian_eigenvalues sum to the trace", "[linalg][property]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const auto h = random_hermitian(1 + trial % 9, rng);
    const auto ev = hermitian_eigenvalues(h);
    const double sum = std::accumulate(ev.begin(), ev.end(), 0.0);
    CHECK(std::abs(sum - h.trace().real()) < 1e-10);
    CHECK(std::is_sorted(ev.rbegin(), ev.rend()));
  }
}

TEST_CASE("hermitian_eigenvalues rejects non-Hermitian input", "[linalg][error]") {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(hermitian_eigenvalues(m), DomainError);
  CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix::Zero(2, 3)), DomainError);
}

TEST_CASE("trace_norm examples", "[linalg]") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m.diagonal() << 1.0, -2.0;
  CHECK(trace_norm(m) == Approx(3.0).margin(1e-14));
  CHECK(trace_norm(ComplexMatrix::Identity(9, 9) / 9.0) == Approx(1.0).margin(1e-14));
  CHECK_THROWS_AS(trace_norm(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("trace_norm equals sum of |eigenvalues| for Hermitian input", "[linalg][property]") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = random_hermitian(9, rng);
    double abs_sum = 0.0;
    for (double l : hermitian_eigenvalues(h)) abs_sum += std::abs(l);
    CHECK(std::abs(trace_norm(h) - abs_sum) < 1e-10);
  }
}

TEST_CASE("trace_norm dominates |Tr m|", "[linalg][property]") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = random_complex(1 + trial % 6, 1 + trial % 6, rng);
    CHECK(trace_norm(m) + 1e-12 >= std::abs(m.trace()));
  }
}

TEST_CASE("unitary_exp yields unitaries", "[linalg]") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    CHECK(unitarity_deviation(unitary_exp(random_hermitian(3, rng))) < 1e-13);
  }
}
