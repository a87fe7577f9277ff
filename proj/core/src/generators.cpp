#include "qcorr/generators.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "qcorr/error.hpp"

namespace qcorr {

GeneratorBasis su_generators(int d) {
  if (d < 2) throw DimensionError("su_generators: dimension must be >= 2");
  GeneratorBasis basis;
  basis.dim = d;
  basis.generators.reserve(std::size_t(d) * d - 1);
  const Complex i_unit(0.0, 1.0);

  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = 1.0;
      g(k, j) = 1.0;
      basis.generators.push_back(std::move(g));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = -i_unit;
      g(k, j) = i_unit;
      basis.generators.push_back(std::move(g));
    }
  }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    const double norm = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) g(j, j) = norm;
    g(l, l) = -l * norm;
    basis.generators.push_back(std::move(g));
  }
  return basis;
}

const GeneratorBasis& cached_su_generators(int d) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GeneratorBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<GeneratorBasis>(su_generators(d));
  return *slot;
}

}  // namespace qcorr
