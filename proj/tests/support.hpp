#ifndef MOPUC_TESTS_SUPPORT_HPP
#define MOPUC_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>

#include "mopuc/measure.hpp"
#include "mopuc/opuc.hpp"
#include "mopuc/random.hpp"
#include "mopuc/types.hpp"

namespace mopuc::test {

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline ComplexMatrix scalar1x1(Complex v) {
  ComplexMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

inline VerblunskySequence scalar_seq(std::initializer_list<Complex> values) {
  std::vector<ComplexMatrix> coeffs;
  for (Complex v : values) coeffs.push_back(scalar1x1(v));
  return VerblunskySequence(1, std::move(coeffs));
}

// ---- independent scalar oracles (coded before the engine paths) ----

// Moments of the order-one measure with parameter a, by direct summation of
// the geometric series of its density: c_n = (1-|a|^2) sum_m conj(a)^m a^{m+n}.
inline Complex order_one_moment_oracle(Complex a, int n) {
  Complex acc = 0.0;
  Complex am = 1.0; // conj(a)^m a^m
  for (int m = 0; m < 4000; ++m) {
    acc += am * std::pow(a, n);
    am *= std::conj(a) * a;
  }
  return (1.0 - std::norm(a)) * acc;
}

// Spectral integral of the order-one measure: the n=0 and n=1 Fourier
// coefficients of log of its density give
//   integral((1 - g cos t) log w) dlambda_0 = log(1-|a|^2) - g Re(a),
// assembled here from the log series sum_{n>=1} a^n / n evaluated at n = 1.
inline double order_one_lhs_oracle(Complex a, double g) {
  return std::log(1.0 - std::norm(a)) - g * a.real();
}

// Reference entropy by direct scalar quadrature at a dense grid.
inline double reference_entropy_quadrature(double g, int grid = 1 << 14) {
  double acc = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double t = 2.0 * kPi * j / grid;
    const double w = 1.0 - g * std::cos(t);
    if (w > 0.0) acc += w * std::log(w);
  }
  return acc / grid;
}

// Scalar measure with density samples w(theta_j) given by a callable.
template <typename F>
MatrixMeasure scalar_measure(F&& w, Index grid_size,
                             Normalization mode = Normalization::Require) {
  std::vector<ComplexMatrix> density;
  density.reserve(grid_size);
  for (Index j = 0; j < grid_size; ++j) {
    const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid_size);
    density.push_back(scalar1x1(w(theta)));
  }
  return MatrixMeasure(std::move(density), {}, mode);
}

// Random sequence whose generated measure is faithfully representable at the
// given grid size: draws are rejected until the grid-aliasing defect is below
// `defect_tol`. Occasional draws put recursion-polynomial zeros so close to
// the circle that no fixed grid resolves them; those are exercised separately
// by the convergence tests.
inline VerblunskySequence draw_representable(ContractionSampler& rng, Index dim,
                                             int count, Index grid_size,
                                             double defect_tol, double norm_cap = 0.8) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    VerblunskySequence alpha = rng.sequence(dim, count, norm_cap);
    if (bernstein_szego_grid_defect(alpha, grid_size) < defect_tol) return alpha;
  }
  throw std::runtime_error("no representable draw found");
}

} // namespace mopuc::test

#endif
