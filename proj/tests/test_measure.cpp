#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mopuc/errors.hpp"
#include "mopuc/measure.hpp"
#include "mopuc/opuc.hpp"
#include "mopuc/random.hpp"
#include "support.hpp"

using namespace mopuc;
using test::max_abs_diff;
using test::scalar1x1;

TEST_CASE("reference weight validates g") {
  CHECK_THROWS_AS(ReferenceWeight{1.5}, BadConfig);
  CHECK(ReferenceWeight(0.6)(0.0) == doctest::Approx(0.4));
}

TEST_CASE("reference entropy closed form") {
  CHECK(reference_entropy(ReferenceWeight(0.0)) == 0.0);
  CHECK(reference_entropy(ReferenceWeight(1.0)) ==
        doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-13));
  CHECK(reference_entropy(ReferenceWeight(0.6)) ==
        doctest::Approx(0.2 + std::log(0.9)).epsilon(1e-12));
}

TEST_CASE("reference entropy closed form matches quadrature") {
  for (double g : {-0.999, -0.6, -0.3, 0.0, 0.3, 0.6, 0.999}) {
    CHECK(std::abs(reference_entropy(ReferenceWeight(g)) -
                   test::reference_entropy_quadrature(g)) < 1e-8);
  }
}

TEST_CASE("constant density gives the Lebesgue reference") {
  MatrixMeasure mu = MatrixMeasure::lebesgue(2, 64);
  CHECK(max_abs_diff(mu.moment(0), identity(2)) < 1e-14);
  CHECK(mu.moment(1).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("gross-witten density normalizes exactly on any admissible grid") {
  for (Index m : {Index(8), Index(16), Index(4096)}) {
    MatrixMeasure mu = MatrixMeasure::gross_witten(ReferenceWeight(1.0), 1, m);
    CHECK(max_abs_diff(mu.moment(0), identity(1)) < 1e-13);
    CHECK(mu.moment(1)(0, 0).real() == doctest::Approx(-0.5).epsilon(1e-12));
  }
}

TEST_CASE("construction rejects bad samples and grids") {
  std::vector<ComplexMatrix> density(16, identity(1));
  CHECK_THROWS_AS(MatrixMeasure(std::vector<ComplexMatrix>(12, identity(1)), {},
                                Normalization::Require),
                  BadConfig); // 12 is not a power of two
  density[3] = scalar1x1(-0.5);
  CHECK_THROWS_AS(MatrixMeasure(density, {}, Normalization::Require), BadSample);
  density[3] = scalar1x1(2.0);
  CHECK_THROWS_AS(MatrixMeasure(density, {}, Normalization::Require), NotNormalizable);
  CHECK_THROWS_AS(MatrixMeasure(std::vector<ComplexMatrix>(16, scalar1x1(0.0)), {},
                                Normalization::Renormalize),
                  NotNormalizable);
}

TEST_CASE("renormalization restores unit mass symmetrically") {
  ContractionSampler rng(21);
  std::vector<ComplexMatrix> density;
  for (int j = 0; j < 64; ++j) {
    ComplexMatrix g = rng.gaussian_matrix(2);
    density.push_back(g * g.adjoint());
  }
  MatrixMeasure mu(density, {}, Normalization::Renormalize);
  CHECK(max_abs_diff(mu.moment(0), identity(2)) < 1e-12);
}

TEST_CASE("mixed density and atom measure") {
  std::vector<ComplexMatrix> density(64, 0.5 * identity(2));
  std::vector<MeasureAtom> atoms{{0.0, 0.5 * identity(2)}};
  MatrixMeasure mu(density, atoms, Normalization::Require);
  CHECK(max_abs_diff(mu.moment(0), identity(2)) < 1e-13);
  // the atom at theta = 0 contributes its full weight to every moment
  CHECK(max_abs_diff(mu.moment(3), 0.5 * identity(2)) < 1e-13);
}

TEST_CASE("moment order budget") {
  MatrixMeasure mu = MatrixMeasure::lebesgue(1, 64);
  CHECK_NOTHROW(mu.moment(16));
  CHECK_THROWS_AS(mu.moment(17), MomentOrderTooHigh);
}

TEST_CASE("moment of the order-one measure matches the series oracle") {
  const Complex a(0.5, 0.0);
  MatrixMeasure mu = bernstein_szego_measure(test::scalar_seq({a}), 512);
  CHECK(std::abs(mu.moment(1)(0, 0) - test::order_one_moment_oracle(a, 1)) < 1e-12);
  CHECK(std::abs(mu.moment(1)(0, 0) - 0.5) < 1e-12);
}

TEST_CASE("moments are adjoint-symmetric exactly") {
  ContractionSampler rng(22);
  std::vector<ComplexMatrix> density;
  for (int j = 0; j < 64; ++j) {
    ComplexMatrix g = rng.gaussian_matrix(3);
    density.push_back(g * g.adjoint());
  }
  MatrixMeasure mu(density, {{1.234, identity(3) * 0.01}}, Normalization::Renormalize);
  for (int n = 0; n <= 16; ++n)
    CHECK(max_abs_diff(mu.moment(-n), mu.moment(n).adjoint()) == 0.0);
}

TEST_CASE("flip is an involution and shifts the density by pi") {
  MatrixMeasure l1 = MatrixMeasure::gross_witten(ReferenceWeight(1.0), 1, 64);
  MatrixMeasure flipped = l1.flipped();
  for (Index j = 0; j < 64; ++j) {
    CHECK(flipped.density(j)(0, 0).real() ==
          doctest::Approx(1.0 + std::cos(l1.node_angle(j))).epsilon(1e-13));
    CHECK(max_abs_diff(l1.flipped().flipped().density(j), l1.density(j)) == 0.0);
  }

  MatrixMeasure l0 = MatrixMeasure::lebesgue(2, 64);
  for (Index j = 0; j < 64; ++j)
    CHECK(max_abs_diff(l0.flipped().density(j), l0.density(j)) == 0.0);

  MatrixMeasure with_atom(std::vector<ComplexMatrix>(64, 0.5 * identity(1)),
                          {{4.0, 0.5 * identity(1)}}, Normalization::Require);
  CHECK(with_atom.flipped().atoms()[0].theta ==
        doctest::Approx(4.0 + kPi - 2.0 * kPi).epsilon(1e-13));
}

TEST_CASE("caratheodory transform basics") {
  MatrixMeasure l0 = MatrixMeasure::lebesgue(2, 256);
  CHECK(max_abs_diff(l0.caratheodory(Complex(0.3, 0.4)), identity(2)) < 1e-12);

  ContractionSampler rng(23);
  std::vector<ComplexMatrix> density;
  for (int j = 0; j < 256; ++j) {
    ComplexMatrix g = rng.gaussian_matrix(2);
    density.push_back(g * g.adjoint());
  }
  MatrixMeasure mu(density, {}, Normalization::Renormalize);
  CHECK(max_abs_diff(mu.caratheodory(Complex(0.0)), identity(2)) < 1e-10);
  CHECK_THROWS_AS(mu.caratheodory(Complex(0.995)), RadiusTooLarge);

  // Hermitian part stays PSD
  ComplexMatrix f = mu.caratheodory(Complex(0.2, -0.6));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (f + f.adjoint()));
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("caratheodory matches the order-one geometric oracle") {
  const Complex a(0.5, 0.0);
  const Complex z(0.3, 0.0);
  MatrixMeasure mu = bernstein_szego_measure(test::scalar_seq({a}), 512);
  // F(z) = 1 + 2 sum a^n z^n = 1 + 2 az/(1 - az)
  CHECK(std::abs(mu.caratheodory(z)(0, 0) - Complex(1.0 + 2.0 * 0.15 / 0.85)) < 1e-12);
}

TEST_CASE("caratheodory agrees with the truncated moment series") {
  ContractionSampler rng(24);
  std::vector<ComplexMatrix> density;
  const Index m = 64;
  for (Index j = 0; j < m; ++j) {
    ComplexMatrix g = rng.gaussian_matrix(2);
    density.push_back(g * g.adjoint());
  }
  MatrixMeasure mu(density, {}, Normalization::Renormalize);
  for (Complex z : {Complex(0.5, 0.0), Complex(-0.2, 0.6), Complex(0.0, -0.8)}) {
    ComplexMatrix series = identity(2);
    Complex zn = 1.0;
    for (int n = 1; n <= m / 4; ++n) {
      zn *= z;
      series += 2.0 * zn * mu.moment(n);
    }
    const double bound =
        2.0 * std::pow(std::abs(z), m / 4 + 1) / (1.0 - std::abs(z));
    CHECK(max_abs_diff(mu.caratheodory(z), series) <= bound + 1e-13);
  }
}

TEST_CASE("relative entropy basics") {
  MatrixMeasure l0p2 = MatrixMeasure::lebesgue(2, 4096);
  CHECK(std::abs(relative_entropy(ReferenceWeight(0.0), l0p2).value) < 1e-12);
  // against Lebesgue the integrand is the scalar reference entropy, once per dim
  CHECK(relative_entropy(ReferenceWeight(1.0), l0p2).value ==
        doctest::Approx(2.0 * (1.0 - std::log(2.0))).epsilon(1e-9));

  MatrixMeasure bs = bernstein_szego_measure(test::scalar_seq({0.5}), 4096);
  CHECK(relative_entropy(ReferenceWeight(1.0), bs).value ==
        doctest::Approx((1.0 - std::log(2.0)) - std::log(0.75) + 0.5).epsilon(1e-9));
}

TEST_CASE("relative entropy is nonnegative") {
  ContractionSampler rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const Index p = 1 + trial % 3;
    std::vector<ComplexMatrix> density;
    for (int j = 0; j < 128; ++j) {
      ComplexMatrix g = rng.gaussian_matrix(p);
      density.push_back(g * g.adjoint());
    }
    MatrixMeasure mu(density, {}, Normalization::Renormalize);
    for (double g : {-1.0, -0.3, 0.0, 0.6, 1.0})
      CHECK(relative_entropy(ReferenceWeight(g), mu).value >= -1e-8);
  }
}

TEST_CASE("entropy clamping flags degenerate measures") {
  // density vanishing on a quarter of the grid: beyond the 1% floor fraction
  std::vector<ComplexMatrix> density;
  for (int j = 0; j < 64; ++j)
    density.push_back(scalar1x1(j % 4 == 0 ? 0.0 : 4.0 / 3.0));
  MatrixMeasure mu(density, {}, Normalization::Renormalize);
  ClampedIntegral e = relative_entropy(ReferenceWeight(0.0), mu);
  CHECK(e.infinite);
  CHECK(std::isinf(e.value));
  CHECK(e.clamped_nodes == 16);
}

TEST_CASE("atoms do not enter the entropy") {
  std::vector<ComplexMatrix> density(64, scalar1x1(0.5));
  MatrixMeasure mu(density, {{1.0, scalar1x1(0.5)}}, Normalization::Require);
  CHECK(relative_entropy(ReferenceWeight(0.0), mu).value ==
        doctest::Approx(-std::log(0.5)).epsilon(1e-12));
}
