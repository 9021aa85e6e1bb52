#include "mopuc/polynomial.hpp"

namespace mopuc {

MatrixPolynomial::MatrixPolynomial(Index dim, std::vector<ComplexMatrix> coeffs)
    : dim_(dim), coeffs_(std::move(coeffs)) {
  if (dim_ < 1) throw DegreeMismatch("polynomial dim must be >= 1");
  if (coeffs_.empty()) coeffs_.push_back(ComplexMatrix::Zero(dim_, dim_));
  for (const auto& c : coeffs_)
    if (c.rows() != dim_ || c.cols() != dim_)
      throw DegreeMismatch("coefficient dimension mismatch");
}

MatrixPolynomial MatrixPolynomial::constant(const ComplexMatrix& c) {
  return MatrixPolynomial(c.rows(), {c});
}

MatrixPolynomial MatrixPolynomial::monomial_identity(Index dim) {
  return MatrixPolynomial(dim, {identity(dim)});
}

ComplexMatrix MatrixPolynomial::coeff_or_zero(int j) const {
  if (j < 0 || j >= static_cast<int>(coeffs_.size()))
    return ComplexMatrix::Zero(dim_, dim_);
  return coeffs_[j];
}

ComplexMatrix MatrixPolynomial::operator()(Complex z) const {
  ComplexMatrix acc = coeffs_.back();
  for (int j = static_cast<int>(coeffs_.size()) - 2; j >= 0; --j)
    acc = z * acc + coeffs_[j];
  return acc;
}

MatrixPolynomial MatrixPolynomial::shifted() const {
  std::vector<ComplexMatrix> c;
  c.reserve(coeffs_.size() + 1);
  c.push_back(ComplexMatrix::Zero(dim_, dim_));
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return MatrixPolynomial(dim_, std::move(c));
}

MatrixPolynomial operator+(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  if (a.dim_ != b.dim_) throw DegreeMismatch("dimension mismatch in polynomial sum");
  std::vector<ComplexMatrix> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t j = 0; j < c.size(); ++j)
    c[j] = a.coeff_or_zero(static_cast<int>(j)) + b.coeff_or_zero(static_cast<int>(j));
  return MatrixPolynomial(a.dim_, std::move(c));
}

MatrixPolynomial operator-(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  if (a.dim_ != b.dim_) throw DegreeMismatch("dimension mismatch in polynomial difference");
  std::vector<ComplexMatrix> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t j = 0; j < c.size(); ++j)
    c[j] = a.coeff_or_zero(static_cast<int>(j)) - b.coeff_or_zero(static_cast<int>(j));
  return MatrixPolynomial(a.dim_, std::move(c));
}

MatrixPolynomial operator*(const MatrixPolynomial& p, const ComplexMatrix& a) {
  std::vector<ComplexMatrix> c;
  c.reserve(p.coeffs_.size());
  for (const auto& pc : p.coeffs_) c.push_back(pc * a);
  return MatrixPolynomial(p.dim_, std::move(c));
}

MatrixPolynomial operator*(const ComplexMatrix& a, const MatrixPolynomial& p) {
  std::vector<ComplexMatrix> c;
  c.reserve(p.coeffs_.size());
  for (const auto& pc : p.coeffs_) c.push_back(a * pc);
  return MatrixPolynomial(p.dim_, std::move(c));
}

MatrixPolynomial reversed(const MatrixPolynomial& p, int declared_degree) {
  if (p.degree() > declared_degree)
    throw DegreeMismatch("declared degree below actual degree");
  std::vector<ComplexMatrix> c(declared_degree + 1);
  for (int j = 0; j <= declared_degree; ++j)
    c[j] = p.coeff_or_zero(declared_degree - j).adjoint();
  return MatrixPolynomial(p.dim(), std::move(c));
}

} // namespace mopuc
