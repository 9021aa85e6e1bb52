#ifndef MOPUC_MEASURE_HPP
#define MOPUC_MEASURE_HPP

#include <vector>

#include "mopuc/hermitian.hpp"
#include "mopuc/types.hpp"

namespace mopuc {

/// Density 1 - g cos(theta) of the one-parameter family of reference weights
/// (g = 0 is normalized Lebesgue measure, |g| = 1 the degenerate endpoints).
class ReferenceWeight {
public:
  explicit ReferenceWeight(double g);
  double g() const { return g_; }
  double operator()(double theta) const;

private:
  double g_;
};

/// Closed form of the relative entropy K(lambda_g | lambda_0):
/// 1 - sqrt(1-g^2) + log((1 + sqrt(1-g^2)) / 2).
double reference_entropy(ReferenceWeight g);

struct MeasureAtom {
  double theta;         // in [0, 2*pi)
  ComplexMatrix weight; // Hermitian PSD
};

enum class Normalization {
  Require,     // total mass must already be the identity (within 1e-8)
  Renormalize, // conjugate by S^{-1/2} so the total mass becomes the identity
};

/// Normalized p x p Hermitian matrix measure on the unit circle: an a.c.
/// density sampled on a uniform grid theta_j = 2*pi*j / M (M a power of two)
/// plus a finite list of atoms. Immutable after construction.
class MatrixMeasure {
public:
  MatrixMeasure(std::vector<ComplexMatrix> density, std::vector<MeasureAtom> atoms,
                Normalization mode);

  /// Lebesgue reference: density identically the identity matrix.
  static MatrixMeasure lebesgue(Index dim, Index grid_size);
  /// Quasi-scalar reference with density (1 - g cos(theta)) * identity.
  static MatrixMeasure gross_witten(ReferenceWeight g, Index dim, Index grid_size);

  Index dim() const { return dim_; }
  Index grid_size() const { return static_cast<Index>(density_.size()); }
  double node_angle(Index j) const;
  const ComplexMatrix& density(Index j) const { return density_[j]; }
  const std::vector<ComplexMatrix>& density() const { return density_; }
  const std::vector<MeasureAtom>& atoms() const { return atoms_; }

  /// Trigonometric moment c_n = integral of e^{-i n theta} d(mu);
  /// satisfies c_{-n} = c_n^dag exactly. Requires |n| <= grid_size / 4.
  ComplexMatrix moment(int n) const;

  /// Herglotz transform F(z) = integral of (e^{i theta} + z)/(e^{i theta} - z) d(mu),
  /// for |z| <= 0.99.
  ComplexMatrix caratheodory(Complex z) const;

  /// Rotation by pi: density nodes shifted by half the grid, atoms by pi.
  /// An involution, bit-exact on the grid.
  MatrixMeasure flipped() const;

private:
  MatrixMeasure() = default;

  Index dim_ = 0;
  std::vector<ComplexMatrix> density_;
  std::vector<MeasureAtom> atoms_;
};

/// Result of a clamped spectral integral. `infinite` is set when more than
/// 1% of the grid nodes needed the log det floor.
struct ClampedIntegral {
  double value = 0.0;
  Index clamped_nodes = 0;
  bool infinite = false;
};

/// Grid quadrature of integral((1 - g cos theta) log det W(theta)) d(lambda_0),
/// with log det clamped at log(1e-300) on degenerate nodes. Atoms do not
/// contribute.
ClampedIntegral weighted_logdet_integral(const MatrixMeasure& mu, ReferenceWeight g);

/// Relative entropy K(Lambda_g | mu) of the quasi-scalar reference against mu,
/// i.e. -integral(log det h) d(lambda_g) with h = W / (1 - g cos theta).
/// Nonnegative; `infinite` per the clamping policy.
ClampedIntegral relative_entropy(ReferenceWeight g, const MatrixMeasure& mu);

} // namespace mopuc

#endif
