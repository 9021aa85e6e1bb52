#ifndef MOPUC_HERMITIAN_HPP
#define MOPUC_HERMITIAN_HPP

#include <cmath>
#include <utility>

#include "mopuc/errors.hpp"
#include "mopuc/types.hpp"

namespace mopuc {

/// Construction symmetrizes (A + A^dag)/2; asymmetry beyond this is an error.
constexpr double kHermitianAsymmetryTol = 1e-9;

/// Eigenvalues in [-kPsdClampTol, 0) are treated as quadrature noise and
/// clamped to zero; anything below is a genuine PSD violation.
constexpr double kPsdClampTol = 1e-12;

/// Value wrapper for a p x p Hermitian matrix. Symmetrized on construction,
/// so stored entries satisfy A(i,j) == conj(A(j,i)) exactly.
class HermitianMatrix {
public:
  explicit HermitianMatrix(const ComplexMatrix& a) {
    if (a.rows() != a.cols() || a.rows() < 1)
      throw NotHermitian("matrix must be square with dim >= 1");
    if (!a.allFinite()) throw NotHermitian("matrix has non-finite entries");
    const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianAsymmetryTol)
      throw NotHermitian("asymmetry " + std::to_string(asym) + " exceeds tolerance");
    m_ = 0.5 * (a + a.adjoint());
  }

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  operator const ComplexMatrix&() const { return m_; }

private:
  ComplexMatrix m_;
};

namespace detail {

inline Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success)
    throw NotHermitian("eigendecomposition failed to converge");
  return solver;
}

} // namespace detail

/// Unique PSD square root of a Hermitian PSD matrix, via eigendecomposition.
/// Eigenvalues in [-1e-12, 0) are clamped to zero.
template <typename Derived>
HermitianMatrix hermitian_sqrt(const Eigen::MatrixBase<Derived>& a) {
  HermitianMatrix h(a);
  auto solver = detail::eig(h.matrix());
  Eigen::VectorXd w = solver.eigenvalues();
  if (w.minCoeff() < -kPsdClampTol)
    throw NotPSD("eigenvalue " + std::to_string(w.minCoeff()) + " below PSD tolerance");
  w = w.cwiseMax(0.0).cwiseSqrt();
  ComplexMatrix root = solver.eigenvectors() * w.asDiagonal() *
                       solver.eigenvectors().adjoint();
  return HermitianMatrix(root);
}

/// log det of a Hermitian positive definite matrix, as the sum of eigenvalue
/// logs. Throws NotPD when the smallest eigenvalue is <= 0; the caller decides
/// whether that means -infinity or invalid input.
template <typename Derived>
double logdet_pd(const Eigen::MatrixBase<Derived>& a) {
  HermitianMatrix h(a);
  auto solver = detail::eig(h.matrix());
  const Eigen::VectorXd& w = solver.eigenvalues();
  if (w.minCoeff() <= 0.0)
    throw NotPD("matrix is not positive definite (min eigenvalue " +
                std::to_string(w.minCoeff()) + ")");
  return w.array().log().sum();
}

/// 1 - (largest singular value); positive iff the matrix is a strict contraction.
template <typename Derived>
double contraction_margin(const Eigen::MatrixBase<Derived>& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m.derived());
  return 1.0 - svd.singularValues()(0);
}

struct DefectPair {
  HermitianMatrix right; // (1 - alpha alpha^dag)^{1/2}
  HermitianMatrix left;  // (1 - alpha^dag alpha)^{1/2}
};

/// Defect matrices (rho^R, rho^L) of a strict contraction.
template <typename Derived>
DefectPair defect_matrices(const Eigen::MatrixBase<Derived>& alpha) {
  if (contraction_margin(alpha) <= 0.0)
    throw NotContraction("coefficient is not a strict contraction");
  const ComplexMatrix a = alpha.derived();
  const ComplexMatrix id = identity(a.rows());
  return DefectPair{hermitian_sqrt(id - a * a.adjoint()),
                    hermitian_sqrt(id - a.adjoint() * a)};
}

/// R(alpha) = -log det(1 - alpha alpha^dag) - tr(alpha alpha^dag)
///            - (1/2) tr((alpha alpha^dag)^2); nonnegative, fourth order small.
template <typename Derived>
double logdet_remainder(const Eigen::MatrixBase<Derived>& alpha) {
  if (contraction_margin(alpha) <= 0.0)
    throw NotContraction("coefficient is not a strict contraction");
  const ComplexMatrix a = alpha.derived();
  const ComplexMatrix x = a * a.adjoint();
  const ComplexMatrix id = identity(a.rows());
  const double ld = logdet_pd(id - x);
  return -ld - x.trace().real() - 0.5 * (x * x).trace().real();
}

} // namespace mopuc

#endif
