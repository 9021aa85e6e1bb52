#ifndef MOPUC_SCHUR_HPP
#define MOPUC_SCHUR_HPP

#include <memory>
#include <vector>

#include "mopuc/hermitian.hpp"
#include "mopuc/measure.hpp"
#include "mopuc/opuc.hpp"

namespace mopuc {

/// Cauchy-mean parameters for the removable singularity at z = 0 inside the
/// coefficient-stripping transform: the value at 0 of an analytic contraction
/// is recovered as the average over kRingCount points on |z| = kRingRadius,
/// with error below kRingRadius^kRingCount.
constexpr double kRingRadius = 0.5;
constexpr int kRingCount = 64;

/// Evaluator for the Schur functions f, f_1, ..., f_k of a measure at points
/// of the open disc (|z| <= 0.99). Level 0 is obtained from the Herglotz
/// transform, f(z) = z^{-1} (F(z) - 1)(F(z) + 1)^{-1}; deeper levels apply the
/// stripping transform pointwise. Immutable; evaluation is pure.
class SchurEvaluator {
public:
  /// Schur function of a measure (level 0). The measure is copied once and
  /// shared across derived evaluators.
  static SchurEvaluator from_measure(const MatrixMeasure& mu);
  /// Constant Schur function (useful base case; value must satisfy ||v|| <= 1).
  static SchurEvaluator constant(const ComplexMatrix& value);

  /// Coefficient stripping: evaluator for
  ///   f_next(z) = z^{-1} (rho^R)^{-1} (f(z) - alpha)(1 - alpha^dag f(z))^{-1} rho^L.
  /// `alpha` must be f(0) for the result to be a Schur function.
  SchurEvaluator stripped(const ComplexMatrix& alpha) const;

  /// Inverse of stripping: evaluator for
  ///   f(z) = (rho^R)^{-1} (alpha + z f_next(z))(1 + z alpha^dag f_next(z))^{-1} rho^L.
  SchurEvaluator unstripped(const ComplexMatrix& alpha) const;

  /// f_level(z) for |z| <= 0.99. At z = 0 the level-0 value is the first
  /// moment; stripped evaluators use the Cauchy mean.
  ComplexMatrix operator()(Complex z) const;

  Index dim() const { return dim_; }
  /// Net stripping depth relative to the base function.
  int level() const { return level_; }

private:
  struct Transform {
    bool strip = true;
    ComplexMatrix alpha;
    ComplexMatrix rho_r_inv;
    ComplexMatrix rho_l;
  };

  SchurEvaluator() = default;
  ComplexMatrix base_value(Complex z) const;
  ComplexMatrix value_pointwise(Complex z) const; // requires z != 0 when strips exist

  Index dim_ = 0;
  int level_ = 0;
  bool has_strip_ = false;
  std::shared_ptr<const MatrixMeasure> measure_; // null for constant base
  ComplexMatrix constant_;
  std::vector<Transform> transforms_;
};

/// Hermitian part of the Herglotz transform recovered from the Schur function:
///   Re F(z) = (1 - conj(z) f^dag)^{-1} (1 - |z|^2 f^dag f)(1 - z f)^{-1}.
HermitianMatrix real_part_F(const SchurEvaluator& f, Complex z);

/// D_0(z) = (1 - z f(z))^{-1} (1 - z f1(z)) (rho_0^L)^{-1} (1 - f(z) alpha_0^dag),
/// the relative transfer function of one stripping step. det D_0 is
/// non-vanishing on the disc; 2 log det D_0(0) = log det(1 - alpha_0 alpha_0^dag).
ComplexMatrix d0_eval(const SchurEvaluator& f, const SchurEvaluator& f1,
                      const ComplexMatrix& alpha0, Complex z);

struct FF1Residual {
  /// | det(Re F (Re F_1)^{-1}) - det(D_0 D_0^dag) det(1-|z|^2 f^dag f)/det(1-f^dag f) |
  double determinant_identity = 0.0;
  /// || (1 - |z|^2 f_1^dag f_1)
  ///    - rho^L (1 - f^dag alpha_0)^{-1} (1 - f^dag f)(1 - alpha_0^dag f)^{-1} rho^L ||_max
  double defect_identity = 0.0;
};

/// Numeric residuals of the one-step determinant identity and the stripped
/// defect identity at a point |z| <= 0.9. Both vanish in exact arithmetic.
FF1Residual ff1_residual(const MatrixMeasure& mu, Complex z);

/// Schur-algorithm extraction alone (no cross-check): alpha_k = f_k(0), each
/// level evaluated on one Cauchy ring and stripped pointwise.
VerblunskySequence extract_verblunsky_schur(const MatrixMeasure& mu, int n);

/// Schur-path extraction cross-checked against the Gram-Schmidt path; throws
/// ConventionCheckFailed if they disagree beyond 1e-8.
VerblunskySequence verblunsky_via_schur(const MatrixMeasure& mu, int n);

} // namespace mopuc

#endif
