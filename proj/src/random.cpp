#include "mopuc/random.hpp"

#include <cmath>

#include "mopuc/errors.hpp"
#include "mopuc/hermitian.hpp"

namespace mopuc {

double ContractionSampler::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double ContractionSampler::gaussian() {
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

Complex ContractionSampler::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

ComplexMatrix ContractionSampler::gaussian_matrix(Index dim) {
  ComplexMatrix g(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) g(i, j) = complex_gaussian();
  return g;
}

ComplexMatrix ContractionSampler::strict_contraction(Index dim, double min_norm,
                                                     double norm_cap) {
  if (!(min_norm > 0.0 && min_norm <= norm_cap && norm_cap < 1.0))
    throw BadConfig("need 0 < min_norm <= norm_cap < 1");
  const ComplexMatrix g = gaussian_matrix(dim);
  const double top = Eigen::JacobiSVD<ComplexMatrix>(g).singularValues()(0);
  const double target = min_norm + uniform() * (norm_cap - min_norm);
  return g * (target / top);
}

VerblunskySequence ContractionSampler::sequence(Index dim, int count, double norm_cap) {
  std::vector<ComplexMatrix> coeffs;
  coeffs.reserve(count);
  for (int k = 0; k < count; ++k) coeffs.push_back(strict_contraction(dim, 0.1, norm_cap));
  return VerblunskySequence(dim, std::move(coeffs));
}

} // namespace mopuc
