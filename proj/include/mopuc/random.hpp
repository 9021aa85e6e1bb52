#ifndef MOPUC_RANDOM_HPP
#define MOPUC_RANDOM_HPP

#include <cstdint>
#include <random>

#include "mopuc/opuc.hpp"
#include "mopuc/types.hpp"

namespace mopuc {

/// Deterministic sampler of strict contractions. The generator is pinned for
/// reproducibility: mt19937_64 for uniforms ((x >> 11) * 2^-53, shifted into
/// (0, 1] where a log is taken) and Box-Muller for Gaussians. A draw fills a
/// matrix with independent standard complex Gaussians and rescales it so the
/// top singular value is uniform in [min_norm, norm_cap].
class ContractionSampler {
public:
  explicit ContractionSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform();          // [0, 1)
  double gaussian();         // standard normal
  Complex complex_gaussian(); // independent N(0,1) real and imaginary parts

  ComplexMatrix gaussian_matrix(Index dim);
  ComplexMatrix strict_contraction(Index dim, double min_norm = 0.1,
                                   double norm_cap = 0.8);
  VerblunskySequence sequence(Index dim, int count, double norm_cap = 0.8);

private:
  std::mt19937_64 engine_;
};

} // namespace mopuc

#endif
