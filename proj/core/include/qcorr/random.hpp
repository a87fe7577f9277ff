#pragma once

#include <cstdint>
#include <random>

#include "qcorr/linalg.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

/// Ginibre-distributed density matrix G G^dagger / Tr(G G^dagger), with G a
/// dim x rank matrix of standard complex Gaussians. rank <= 0 means full rank.
DensityMatrix random_density_matrix(Dims dims, std::mt19937_64& rng, int rank = 0);

/// Haar-ish random unitary: Q factor of a complex Ginibre matrix with the
/// phases of R's diagonal folded in.
ComplexMatrix random_unitary(int d, std::mt19937_64& rng);

}  // namespace qcorr
