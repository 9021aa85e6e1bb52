#include "mopuc/schur.hpp"

#include <cmath>

#include "mopuc/errors.hpp"
#include "mopuc/summation.hpp"

namespace mopuc {

namespace {

ComplexMatrix checked_inverse(const ComplexMatrix& m, const char* what) {
  Eigen::FullPivLU<ComplexMatrix> lu(m);
  if (!lu.isInvertible()) throw SingularPencil(std::string(what) + " is numerically singular");
  return lu.inverse();
}

Complex ring_point(int j) {
  return std::polar(kRingRadius, 2.0 * kPi * static_cast<double>(j) /
                                     static_cast<double>(kRingCount));
}

} // namespace

SchurEvaluator SchurEvaluator::from_measure(const MatrixMeasure& mu) {
  SchurEvaluator e;
  e.dim_ = mu.dim();
  e.measure_ = std::make_shared<const MatrixMeasure>(mu);
  return e;
}

SchurEvaluator SchurEvaluator::constant(const ComplexMatrix& value) {
  if (contraction_margin(value) < -kHermitianAsymmetryTol)
    throw NotContraction("constant Schur function must be a contraction");
  SchurEvaluator e;
  e.dim_ = value.rows();
  e.constant_ = value;
  return e;
}

SchurEvaluator SchurEvaluator::stripped(const ComplexMatrix& alpha) const {
  if (contraction_margin(alpha) < kStrictnessTol)
    throw NotContraction("stripping coefficient is not strictly contractive");
  DefectPair rho = defect_matrices(alpha);
  SchurEvaluator e = *this;
  e.transforms_.push_back(
      {true, alpha, rho.right.matrix().inverse(), rho.left.matrix()});
  e.level_ += 1;
  e.has_strip_ = true;
  return e;
}

SchurEvaluator SchurEvaluator::unstripped(const ComplexMatrix& alpha) const {
  if (contraction_margin(alpha) < kStrictnessTol)
    throw NotContraction("unstripping coefficient is not strictly contractive");
  DefectPair rho = defect_matrices(alpha);
  SchurEvaluator e = *this;
  e.transforms_.push_back(
      {false, alpha, rho.right.matrix().inverse(), rho.left.matrix()});
  e.level_ -= 1;
  return e;
}

ComplexMatrix SchurEvaluator::base_value(Complex z) const {
  if (!measure_) return constant_;
  const ComplexMatrix id = identity(dim_);
  if (z == 0.0) return measure_->moment(1); // series value f(0) = c_1
  const ComplexMatrix f = measure_->caratheodory(z);
  return (f - id) * checked_inverse(f + id, "F(z) + 1") / z;
}

ComplexMatrix SchurEvaluator::value_pointwise(Complex z) const {
  const ComplexMatrix id = identity(dim_);
  ComplexMatrix v = base_value(z);
  for (const auto& t : transforms_) {
    if (t.strip) {
      v = t.rho_r_inv * (v - t.alpha) *
          checked_inverse(id - t.alpha.adjoint() * v, "1 - alpha^dag f") * t.rho_l / z;
    } else {
      v = t.rho_r_inv * (t.alpha + z * v) *
          checked_inverse(id + z * t.alpha.adjoint() * v, "1 + z alpha^dag f") * t.rho_l;
    }
  }
  return v;
}

ComplexMatrix SchurEvaluator::operator()(Complex z) const {
  if (std::abs(z) > kEvalRadius)
    throw RadiusTooLarge("evaluation point outside |z| <= 0.99");
  if (z != 0.0 || !has_strip_) return value_pointwise(z);
  CompensatedMatrixSum acc(dim_, dim_);
  for (int j = 0; j < kRingCount; ++j)
    acc.add(value_pointwise(ring_point(j)) / static_cast<double>(kRingCount));
  return acc.value();
}

HermitianMatrix real_part_F(const SchurEvaluator& f, Complex z) {
  const ComplexMatrix fv = f(z);
  const ComplexMatrix id = identity(f.dim());
  const ComplexMatrix left = checked_inverse(id - std::conj(z) * fv.adjoint(), "1 - conj(z) f^dag");
  const ComplexMatrix right = checked_inverse(id - z * fv, "1 - z f");
  const ComplexMatrix mid = id - std::norm(z) * fv.adjoint() * fv;
  return HermitianMatrix(left * mid * right);
}

ComplexMatrix d0_eval(const SchurEvaluator& f, const SchurEvaluator& f1,
                      const ComplexMatrix& alpha0, Complex z) {
  const ComplexMatrix fv = f(z);
  const ComplexMatrix f1v = f1(z);
  const ComplexMatrix id = identity(f.dim());
  DefectPair rho = defect_matrices(alpha0);
  return checked_inverse(id - z * fv, "1 - z f") * (id - z * f1v) *
         rho.left.matrix().inverse() * (id - fv * alpha0.adjoint());
}

FF1Residual ff1_residual(const MatrixMeasure& mu, Complex z) {
  if (std::abs(z) > 0.9) throw RadiusTooLarge("identity checks run at |z| <= 0.9");
  SchurEvaluator f = SchurEvaluator::from_measure(mu);
  const ComplexMatrix alpha0 = f(Complex(0.0));
  SchurEvaluator f1 = f.stripped(alpha0);

  const ComplexMatrix id = identity(mu.dim());
  const ComplexMatrix fv = f(z);
  const ComplexMatrix f1v = f1(z);
  DefectPair rho = defect_matrices(alpha0);
  const ComplexMatrix rho_l = rho.left.matrix();

  const ComplexMatrix re_f = real_part_F(f, z);
  const ComplexMatrix re_f1 = real_part_F(f1, z);
  const ComplexMatrix d0 = d0_eval(f, f1, alpha0, z);

  const Complex lhs = (re_f * checked_inverse(re_f1, "Re F_1")).determinant();
  const Complex rhs = (d0 * d0.adjoint()).determinant() *
                      (id - std::norm(z) * fv.adjoint() * fv).determinant() /
                      (id - fv.adjoint() * fv).determinant();

  FF1Residual out;
  out.determinant_identity = std::abs(lhs - rhs);

  const ComplexMatrix defect_lhs = id - std::norm(z) * f1v.adjoint() * f1v;
  const ComplexMatrix defect_rhs =
      rho_l * checked_inverse(id - fv.adjoint() * alpha0, "1 - f^dag alpha") *
      (id - fv.adjoint() * fv) *
      checked_inverse(id - alpha0.adjoint() * fv, "1 - alpha^dag f") * rho_l;
  out.defect_identity = (defect_lhs - defect_rhs).cwiseAbs().maxCoeff();
  return out;
}

VerblunskySequence extract_verblunsky_schur(const MatrixMeasure& mu, int n) {
  const Index p = mu.dim();
  n = std::min<int>(n, static_cast<int>(mu.grid_size() / 8));
  const ComplexMatrix id = identity(p);

  // Sample f once on the Cauchy ring, then strip the sampled values in place;
  // each alpha_k is the ring mean of the level-k samples.
  std::vector<ComplexMatrix> values(kRingCount);
  std::vector<Complex> points(kRingCount);
  SchurEvaluator base = SchurEvaluator::from_measure(mu);
  for (int j = 0; j < kRingCount; ++j) {
    points[j] = ring_point(j);
    values[j] = base(points[j]);
  }

  std::vector<ComplexMatrix> alphas;
  alphas.reserve(n);
  for (int k = 0; k < n; ++k) {
    CompensatedMatrixSum mean(p, p);
    for (const auto& v : values) mean.add(v / static_cast<double>(kRingCount));
    ComplexMatrix alpha = mean.value();
    if (contraction_margin(alpha) < kStrictnessTol)
      throw DepthExceeded("contraction margin fell below 1e-8 at level " +
                          std::to_string(k));
    if (k + 1 < n) {
      DefectPair rho = defect_matrices(alpha);
      const ComplexMatrix rho_r_inv = rho.right.matrix().inverse();
      const ComplexMatrix rho_l = rho.left.matrix();
      for (int j = 0; j < kRingCount; ++j)
        values[j] = rho_r_inv * (values[j] - alpha) *
                    checked_inverse(id - alpha.adjoint() * values[j], "1 - alpha^dag f") *
                    rho_l / points[j];
    }
    alphas.push_back(std::move(alpha));
  }
  return VerblunskySequence(p, std::move(alphas));
}

VerblunskySequence verblunsky_via_schur(const MatrixMeasure& mu, int n) {
  VerblunskySequence sc = extract_verblunsky_schur(mu, n);
  VerblunskySequence gs = extract_verblunsky_gram_schmidt(mu, sc.size());
  double dev = 0.0;
  for (int k = 0; k < sc.size(); ++k)
    dev = std::max(dev, (sc[k] - gs[k]).cwiseAbs().maxCoeff());
  if (dev > 1e-8)
    throw ConventionCheckFailed("Schur and Gram-Schmidt extractions disagree by " +
                                std::to_string(dev));
  return sc;
}

} // namespace mopuc
