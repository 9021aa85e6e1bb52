#include "mopuc/opuc.hpp"

#include <cmath>

#include "mopuc/errors.hpp"
#include "mopuc/schur.hpp"
#include "mopuc/summation.hpp"

namespace mopuc {

namespace {

constexpr double kToeplitzEigTol = 1e-10;
constexpr double kConventionTol = 1e-6;

void check_strict(const ComplexMatrix& alpha, double margin_floor) {
  if (contraction_margin(alpha) < margin_floor)
    throw NotContraction("coefficient contraction margin below " +
                         std::to_string(margin_floor));
}

} // namespace

VerblunskySequence::VerblunskySequence(Index dim, std::vector<ComplexMatrix> coeffs)
    : dim_(dim), coeffs_(std::move(coeffs)) {
  if (dim_ < 1) throw BadConfig("coefficient dimension must be >= 1");
  for (const auto& a : coeffs_) {
    if (a.rows() != dim_ || a.cols() != dim_)
      throw BadConfig("coefficient dimension mismatch");
    if (!a.allFinite()) throw BadConfig("coefficient has non-finite entries");
    if (contraction_margin(a) <= 0.0)
      throw NotContraction("coefficient is not a strict contraction");
  }
}

ComplexMatrix VerblunskySequence::at_or_zero(int k) const {
  if (k < 0 || k >= size()) return ComplexMatrix::Zero(dim_, dim_);
  return coeffs_[k];
}

MomentTable::MomentTable(const MatrixMeasure& mu, int max_order) : dim_(mu.dim()) {
  nonneg_.reserve(max_order + 1);
  for (int n = 0; n <= max_order; ++n) nonneg_.push_back(mu.moment(n));
}

ComplexMatrix MomentTable::get(int n) const {
  const int a = std::abs(n);
  if (a >= static_cast<int>(nonneg_.size()))
    throw InsufficientMoments("moment order " + std::to_string(n) + " not tabulated");
  return n >= 0 ? nonneg_[a] : nonneg_[a].adjoint();
}

ComplexMatrix inner_right(const MatrixPolynomial& f, const MatrixPolynomial& g,
                          const MomentTable& moments) {
  const Index p = f.dim();
  ComplexMatrix acc = ComplexMatrix::Zero(p, p);
  for (int j = 0; j <= f.degree(); ++j)
    for (int m = 0; m <= g.degree(); ++m)
      acc += f.coeff(j).adjoint() * moments.get(j - m) * g.coeff(m);
  return acc;
}

ComplexMatrix inner_left(const MatrixPolynomial& f, const MatrixPolynomial& g,
                         const MomentTable& moments) {
  const Index p = f.dim();
  ComplexMatrix acc = ComplexMatrix::Zero(p, p);
  for (int j = 0; j <= f.degree(); ++j)
    for (int m = 0; m <= g.degree(); ++m)
      acc += g.coeff(m) * moments.get(j - m) * f.coeff(j).adjoint();
  return acc;
}

namespace {

// Hermitian block-Toeplitz Gram matrix T[j,m] = c_{j-m}, 0 <= j,m < k.
ComplexMatrix gram_matrix(const MomentTable& c, int k) {
  const Index p = c.dim();
  ComplexMatrix t(k * p, k * p);
  for (int j = 0; j < k; ++j)
    for (int m = 0; m < k; ++m)
      t.block(j * p, m * p, p, p) = c.get(j - m);
  return t;
}

// Solve T x = b with LDLT plus one iterative refinement pass; the moment
// matrices can be moderately ill-conditioned when densities nearly vanish.
ComplexMatrix refined_solve(const Eigen::LDLT<ComplexMatrix>& ldlt,
                            const ComplexMatrix& t, const ComplexMatrix& b) {
  ComplexMatrix x = ldlt.solve(b);
  x += ldlt.solve(b - t * x);
  return x;
}

void check_nontrivial(const ComplexMatrix& t) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(t, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kToeplitzEigTol)
    throw TrivialMeasure("moment matrix near-singular: measure cannot support "
                         "this degree at working precision");
}

// Monic solve at degree k: unknown lower coefficients of Phi_k against the
// constraints <<z^j, Phi_k>> = 0, j < k.
MatrixPolynomial monic_right_at(const MomentTable& c, int k) {
  const Index p = c.dim();
  if (k == 0) return MatrixPolynomial::monomial_identity(p);
  ComplexMatrix t = gram_matrix(c, k);
  check_nontrivial(t);
  ComplexMatrix rhs(k * p, p);
  for (int j = 0; j < k; ++j) rhs.block(j * p, 0, p, p) = -c.get(j - k);
  Eigen::LDLT<ComplexMatrix> ldlt(t);
  if (ldlt.info() != Eigen::Success) throw TrivialMeasure("moment matrix factorization failed");
  ComplexMatrix x = refined_solve(ldlt, t, rhs);
  std::vector<ComplexMatrix> coeffs;
  coeffs.reserve(k + 1);
  for (int m = 0; m < k; ++m) coeffs.push_back(x.block(m * p, 0, p, p));
  coeffs.push_back(identity(p));
  return MatrixPolynomial(p, std::move(coeffs));
}

// Left variant: the coefficients multiply the moments from the left,
//   sum_m Phi_m c_{j-m} = -c_{j-k},  j < k.
// With S the Hermitian block matrix S[m,j] = c_{j-m}, the adjoint system is
// S X^dag = -R^dag, solved with the same factorization machinery.
MatrixPolynomial monic_left_at(const MomentTable& c, int k) {
  const Index p = c.dim();
  if (k == 0) return MatrixPolynomial::monomial_identity(p);
  ComplexMatrix s(k * p, k * p);
  for (int m = 0; m < k; ++m)
    for (int j = 0; j < k; ++j)
      s.block(m * p, j * p, p, p) = c.get(j - m);
  check_nontrivial(s);
  ComplexMatrix rhs_adj(k * p, p);
  for (int j = 0; j < k; ++j)
    rhs_adj.block(j * p, 0, p, p) = -c.get(j - k).adjoint();
  Eigen::LDLT<ComplexMatrix> ldlt(s);
  if (ldlt.info() != Eigen::Success) throw TrivialMeasure("moment matrix factorization failed");
  ComplexMatrix x_adj = refined_solve(ldlt, s, rhs_adj);
  std::vector<ComplexMatrix> coeffs;
  coeffs.reserve(k + 1);
  for (int m = 0; m < k; ++m) coeffs.push_back(x_adj.block(m * p, 0, p, p).adjoint());
  coeffs.push_back(identity(p));
  return MatrixPolynomial(p, std::move(coeffs));
}

} // namespace

MonicPair monic_orthogonals(const MomentTable& c, int n) {
  MonicPair out;
  out.right.reserve(n + 1);
  out.left.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    out.right.push_back(monic_right_at(c, k));
    out.left.push_back(monic_left_at(c, k));
  }
  return out;
}

MonicPair monic_orthogonals(const MatrixMeasure& mu, int n) {
  if (n > mu.grid_size() / 8)
    throw MomentOrderTooHigh("degree exceeds the moment budget M/8");
  return monic_orthogonals(MomentTable(mu, n), n);
}

std::pair<MatrixPolynomial, MatrixPolynomial>
szego_step(const MatrixPolynomial& phi_l, const MatrixPolynomial& phi_r,
           const ComplexMatrix& alpha) {
  if (phi_l.degree() != phi_r.degree())
    throw DegreeMismatch("left/right polynomials must share their degree");
  check_strict(alpha, kStrictnessTol);
  const int k = phi_r.degree();
  const DefectPair rho = defect_matrices(alpha);
  const ComplexMatrix rho_r_inv = rho.right.matrix().inverse();
  const ComplexMatrix rho_l_inv = rho.left.matrix().inverse();
  MatrixPolynomial next_l =
      rho_l_inv * (phi_l.shifted() - alpha.adjoint() * reversed(phi_r, k));
  MatrixPolynomial next_r =
      (phi_r.shifted() - reversed(phi_l, k) * alpha.adjoint()) * rho_r_inv;
  return {std::move(next_l), std::move(next_r)};
}

VerblunskySequence extract_verblunsky_gram_schmidt(const MatrixMeasure& mu, int n) {
  const Index p = mu.dim();
  n = std::min<int>(n, static_cast<int>(mu.grid_size() / 8));
  MomentTable c(mu, n);
  ComplexMatrix kappa_r = identity(p);
  ComplexMatrix kappa_l = identity(p);
  std::vector<ComplexMatrix> alphas;
  alphas.reserve(n);
  for (int k = 0; k < n; ++k) {
    MatrixPolynomial phi = monic_right_at(c, k + 1);
    ComplexMatrix alpha =
        -(kappa_r.adjoint() * phi.coeff(0).adjoint() * kappa_l.inverse());
    check_strict(alpha, kStrictnessTol);
    const DefectPair rho = defect_matrices(alpha);
    kappa_r = kappa_r * rho.right.matrix().inverse();
    kappa_l = rho.left.matrix().inverse() * kappa_l;
    alphas.push_back(std::move(alpha));
  }
  return VerblunskySequence(p, std::move(alphas));
}

VerblunskySequence verblunsky_from_measure(const MatrixMeasure& mu, int n) {
  VerblunskySequence gs = extract_verblunsky_gram_schmidt(mu, n);
  VerblunskySequence sc = extract_verblunsky_schur(mu, gs.size());
  double dev = 0.0;
  for (int k = 0; k < gs.size(); ++k)
    dev = std::max(dev, (gs[k] - sc[k]).cwiseAbs().maxCoeff());
  if (dev > kConventionTol)
    throw ConventionCheckFailed("Gram-Schmidt and Schur extractions disagree by " +
                                std::to_string(dev));
  return gs;
}

OPUCBasis opuc_basis(const MatrixMeasure& mu, int n) {
  const Index p = mu.dim();
  OPUCBasis basis{p,
                  {},
                  {},
                  {},
                  {},
                  extract_verblunsky_gram_schmidt(mu, n),
                  {},
                  {}};
  n = basis.alphas.size();
  MomentTable c(mu, n);
  MonicPair monic = monic_orthogonals(c, n);
  basis.monic_right = monic.right;
  basis.monic_left = monic.left;

  ComplexMatrix kappa_r = identity(p);
  ComplexMatrix kappa_l = identity(p);
  for (int k = 0; k <= n; ++k) {
    basis.normalized_right.push_back(monic.right[k] * kappa_r);
    basis.normalized_left.push_back(kappa_l * monic.left[k]);
    if (k == n) break;
    DefectPair rho = defect_matrices(basis.alphas[k]);
    kappa_r = kappa_r * rho.right.matrix().inverse();
    kappa_l = rho.left.matrix().inverse() * kappa_l;
    basis.defects_right.push_back(rho.right);
    basis.defects_left.push_back(rho.left);
  }
  return basis;
}

namespace {

std::vector<ComplexMatrix> raw_bs_density(const VerblunskySequence& alpha,
                                          Index grid_size) {
  const Index p = alpha.dim();
  if (grid_size < 8 * std::max(1, alpha.size()))
    throw BadConfig("grid size must be at least 8x the coefficient count");
  MatrixPolynomial phi_l = MatrixPolynomial::monomial_identity(p);
  MatrixPolynomial phi_r = MatrixPolynomial::monomial_identity(p);
  for (int k = 0; k < alpha.size(); ++k)
    std::tie(phi_l, phi_r) = szego_step(phi_l, phi_r, alpha[k]);

  std::vector<ComplexMatrix> density;
  density.reserve(grid_size);
  for (Index j = 0; j < grid_size; ++j) {
    const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid_size);
    const ComplexMatrix v = phi_r(std::polar(1.0, theta));
    Eigen::FullPivLU<ComplexMatrix> lu(v);
    if (!lu.isInvertible())
      throw SingularPolynomial("orthonormal polynomial singular on the circle");
    const ComplexMatrix vinv = lu.inverse();
    density.push_back(vinv.adjoint() * vinv); // [phi phi^dag]^{-1}
  }
  return density;
}

} // namespace

MatrixMeasure bernstein_szego_measure(const VerblunskySequence& alpha, Index grid_size) {
  // The continuum density has unit mass; renormalizing absorbs the grid
  // aliasing so the measure invariant holds at any admissible grid size.
  return MatrixMeasure(raw_bs_density(alpha, grid_size), {}, Normalization::Renormalize);
}

double bernstein_szego_grid_defect(const VerblunskySequence& alpha, Index grid_size) {
  std::vector<ComplexMatrix> density = raw_bs_density(alpha, grid_size);
  CompensatedMatrixSum mass(alpha.dim(), alpha.dim());
  for (const auto& w : density) mass.add(w / static_cast<double>(grid_size));
  return (mass.value() - identity(alpha.dim())).cwiseAbs().maxCoeff();
}

} // namespace mopuc
