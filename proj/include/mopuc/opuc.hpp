#ifndef MOPUC_OPUC_HPP
#define MOPUC_OPUC_HPP

#include <utility>
#include <vector>

#include "mopuc/hermitian.hpp"
#include "mopuc/measure.hpp"
#include "mopuc/polynomial.hpp"

namespace mopuc {

/// Extracted coefficients with contraction margin below this are rejected:
/// the defect inverses blow up past it.
constexpr double kStrictnessTol = 1e-8;

/// A finite sequence of p x p strict contractions (recursion coefficients in
/// bijection with non-trivial normalized matrix measures).
class VerblunskySequence {
public:
  VerblunskySequence(Index dim, std::vector<ComplexMatrix> coeffs);

  Index dim() const { return dim_; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  const ComplexMatrix& operator[](int k) const { return coeffs_.at(k); }
  /// Coefficient k, or the zero matrix past the stored length (trailing zeros
  /// are implied throughout).
  ComplexMatrix at_or_zero(int k) const;
  const std::vector<ComplexMatrix>& coeffs() const { return coeffs_; }

private:
  Index dim_;
  std::vector<ComplexMatrix> coeffs_;
};

/// Moments c_{-n}..c_n of a measure, cached for inner products.
class MomentTable {
public:
  MomentTable(const MatrixMeasure& mu, int max_order);
  Index dim() const { return dim_; }
  int max_order() const { return static_cast<int>(nonneg_.size()) - 1; }
  /// c_n for |n| <= max_order; negative orders via c_{-n} = c_n^dag.
  ComplexMatrix get(int n) const;

private:
  Index dim_;
  std::vector<ComplexMatrix> nonneg_;
};

/// <<f, g>>_R = integral of f^dag d(mu) g  =  sum f_j^dag c_{j-m} g_m.
ComplexMatrix inner_right(const MatrixPolynomial& f, const MatrixPolynomial& g,
                          const MomentTable& moments);
/// <<f, g>>_L = integral of g d(mu) f^dag  =  sum g_m c_{j-m} f_j^dag.
ComplexMatrix inner_left(const MatrixPolynomial& f, const MatrixPolynomial& g,
                         const MomentTable& moments);

struct MonicPair {
  std::vector<MatrixPolynomial> right; // Phi_0^R .. Phi_N^R
  std::vector<MatrixPolynomial> left;  // Phi_0^L .. Phi_N^L
};

/// Monic orthogonal polynomials up to degree N by block Gram-Schmidt on the
/// moment blocks (one Hermitian block-Toeplitz solve per degree).
MonicPair monic_orthogonals(const MatrixMeasure& mu, int n);
MonicPair monic_orthogonals(const MomentTable& moments, int n);

/// One step of the Szego recursion on the normalized pair:
///   phi_{k+1}^L = (rho_k^L)^{-1} (z phi_k^L - alpha_k^dag (phi_k^R)^*)
///   phi_{k+1}^R = (z phi_k^R - (phi_k^L)^* alpha_k^dag) (rho_k^R)^{-1}
std::pair<MatrixPolynomial, MatrixPolynomial>
szego_step(const MatrixPolynomial& phi_l, const MatrixPolynomial& phi_r,
           const ComplexMatrix& alpha);

/// Orthonormal basis data to degree N extracted from a measure.
struct OPUCBasis {
  Index dim = 0;
  std::vector<MatrixPolynomial> monic_right, monic_left;
  std::vector<MatrixPolynomial> normalized_right, normalized_left;
  VerblunskySequence alphas;
  std::vector<HermitianMatrix> defects_right, defects_left;
};

OPUCBasis opuc_basis(const MatrixMeasure& mu, int n);

/// Coefficient extraction through the monic recursion alone (no cross-check).
/// The degree-zero coefficient of Phi_{k+1}^R determines alpha_k after
/// conjugation by the accumulated normalization factors:
///   alpha_k = -(kappa_k^R)^dag Phi_{k+1}^R(0)^dag (kappa_k^L)^{-1},
/// with kappa_{k+1}^R = kappa_k^R (rho_k^R)^{-1} and
/// kappa_{k+1}^L = (rho_k^L)^{-1} kappa_k^L from kappa_0 = 1.
VerblunskySequence extract_verblunsky_gram_schmidt(const MatrixMeasure& mu, int n);

/// Gram-Schmidt extraction cross-checked against the Schur-algorithm path;
/// throws ConventionCheckFailed if the two disagree beyond 1e-6.
VerblunskySequence verblunsky_from_measure(const MatrixMeasure& mu, int n);

/// Measure with density [phi_N^R (phi_N^R)^dag]^{-1} where N = len(alpha):
/// its coefficients are exactly (alpha_0, ..., alpha_{N-1}, 0, 0, ...).
/// Grid values are renormalized so the grid mass is the identity.
MatrixMeasure bernstein_szego_measure(const VerblunskySequence& alpha, Index grid_size);

/// Max-entry deviation of the raw (pre-renormalization) grid mass from the
/// identity. This is the aliasing scale of the density at this grid size:
/// coefficient sequences whose recursion polynomial has zeros very close to
/// the circle need finer grids, and this defect measures by how much.
double bernstein_szego_grid_defect(const VerblunskySequence& alpha, Index grid_size);

} // namespace mopuc

#endif
