#pragma once

#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

/// Generalized Gell-Mann generators of SU(d), normalized Tr(g_k g_l) = 2 delta_kl.
///
/// Canonical order (fixed; Bloch-vector component k refers to generators[k]):
///   1. symmetric   |j><k| + |k><j|        for j < k, lexicographic in (j, k)
///   2. antisymmetric -i|j><k| + i|k><j|   for j < k, same order
///   3. diagonal    sqrt(2/(l(l+1))) (sum_{j<l} |j><j| - l|l><l|), l = 1..d-1
/// For d = 2 this yields the Pauli matrices X, Y, Z.
struct GeneratorBasis {
  int dim = 0;
  std::vector<ComplexMatrix> generators;

  std::size_t size() const { return generators.size(); }
  const ComplexMatrix& operator[](std::size_t k) const { return generators[k]; }
};

/// Throws DimensionError for d < 2.
GeneratorBasis su_generators(int d);

/// Shared immutable basis for small d (cached, thread-safe).
const GeneratorBasis& cached_su_generators(int d);

}  // namespace qcorr
