#ifndef MOPUC_POLYNOMIAL_HPP
#define MOPUC_POLYNOMIAL_HPP

#include <vector>

#include "mopuc/errors.hpp"
#include "mopuc/types.hpp"

namespace mopuc {

/// Polynomial with p x p complex matrix coefficients; coeff index = power of z.
class MatrixPolynomial {
public:
  MatrixPolynomial(Index dim, std::vector<ComplexMatrix> coeffs);

  static MatrixPolynomial constant(const ComplexMatrix& c);
  static MatrixPolynomial monomial_identity(Index dim); // the constant 1

  Index dim() const { return dim_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  const ComplexMatrix& coeff(int j) const { return coeffs_.at(j); }
  /// Coefficient of z^j, zero matrix when j exceeds the stored degree.
  ComplexMatrix coeff_or_zero(int j) const;

  ComplexMatrix operator()(Complex z) const; // Horner evaluation

  MatrixPolynomial shifted() const; // z * P(z)

  friend MatrixPolynomial operator+(const MatrixPolynomial& a, const MatrixPolynomial& b);
  friend MatrixPolynomial operator-(const MatrixPolynomial& a, const MatrixPolynomial& b);
  friend MatrixPolynomial operator*(const MatrixPolynomial& p, const ComplexMatrix& a);
  friend MatrixPolynomial operator*(const ComplexMatrix& a, const MatrixPolynomial& p);

private:
  Index dim_;
  std::vector<ComplexMatrix> coeffs_;
};

/// Reversed polynomial P*(z) = z^k P(1/conj(z))^dag at declared degree k:
/// coefficient j of the result is coeff(k - j)^dag.
MatrixPolynomial reversed(const MatrixPolynomial& p, int declared_degree);

} // namespace mopuc

#endif
