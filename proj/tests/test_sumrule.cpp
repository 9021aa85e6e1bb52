#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mopuc/errors.hpp"
#include "mopuc/random.hpp"
#include "mopuc/sumrule.hpp"
#include "support.hpp"

using namespace mopuc;
using test::max_abs_diff;
using test::scalar1x1;
using test::scalar_seq;

TEST_CASE("trace functional on fixed sequences") {
  CHECK(rhs_T(VerblunskySequence(2, {})) == 0.0);
  CHECK(rhs_T(scalar_seq({0.5})) == doctest::Approx(0.5).epsilon(1e-14));

  ComplexMatrix a0 = ComplexMatrix::Zero(2, 2);
  a0(0, 0) = 0.3;
  a0(1, 1) = 0.2;
  ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
  a1(0, 0) = 0.1;
  VerblunskySequence alpha(2, {a0, a1});
  CHECK(rhs_T(alpha) == doctest::Approx(0.47).epsilon(1e-13));
}

TEST_CASE("the two trace-functional forms agree on random sequences") {
  ContractionSampler rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    VerblunskySequence alpha = rng.sequence(1 + trial % 3, 1 + trial % 8);
    CHECK(std::abs(rhs_T(alpha) - rhs_T_alt(alpha)) < 1e-10);
  }
}

TEST_CASE("coefficient side on fixed sequences") {
  CHECK(rhs_sumrule(VerblunskySequence(1, {}), 0.7) == 0.0);
  CHECK(rhs_sumrule(scalar_seq({0.5}), 1.0) ==
        doctest::Approx(std::log(0.75) - 0.5).epsilon(1e-13));
  // g = 0 keeps only the log-det series
  ContractionSampler rng(62);
  VerblunskySequence alpha = rng.sequence(2, 4);
  double logdets = 0.0;
  for (int k = 0; k < 4; ++k)
    logdets += logdet_pd(identity(2) - alpha[k] * alpha[k].adjoint());
  CHECK(rhs_sumrule(alpha, 0.0) == doctest::Approx(logdets).epsilon(1e-12));
}

TEST_CASE("spectral side against the analytic order-one oracle") {
  const Complex a(0.5, 0.0);
  MatrixMeasure bs = bernstein_szego_measure(scalar_seq({a}), 4096);
  CHECK(std::abs(lhs_sumrule(bs, 1.0) - test::order_one_lhs_oracle(a, 1.0)) < 1e-8);
  CHECK(std::abs(lhs_sumrule(bs, 0.0) - test::order_one_lhs_oracle(a, 0.0)) < 1e-8);
  CHECK(std::abs(lhs_sumrule(bs, 1.0) - (std::log(0.75) - 0.5)) < 1e-8);

  MatrixMeasure l0 = MatrixMeasure::lebesgue(3, 64);
  for (double g : {-1.0, 0.0, 0.5}) CHECK(std::abs(lhs_sumrule(l0, g)) < 1e-13);

  // complex parameter: the oracle keeps only Re(a)
  const Complex ac(0.3, 0.4);
  MatrixMeasure bsc = bernstein_szego_measure(scalar_seq({ac}), 4096);
  CHECK(std::abs(lhs_sumrule(bsc, 0.6) - test::order_one_lhs_oracle(ac, 0.6)) < 1e-8);
}

TEST_CASE("main identity over random finite sequences") {
  ContractionSampler rng(63);
  const double gs[] = {-1.0, -0.6, 0.0, 0.3, 0.6, 1.0};
  for (int trial = 0; trial < 30; ++trial) {
    const Index p = 1 + trial % 3;
    const int n = 1 + trial % 8;
    VerblunskySequence alpha = test::draw_representable(rng, p, n, 4096, 1e-8);
    MatrixMeasure mu = bernstein_szego_measure(alpha, 4096);
    const double g = gs[trial % 6];
    CHECK(std::abs(lhs_sumrule(mu, g) - rhs_sumrule(alpha, g)) < 1e-6);
  }
}

TEST_CASE("scalar case matches the explicit single-coefficient series") {
  ContractionSampler rng(64);
  VerblunskySequence alpha = rng.sequence(1, 6);
  for (double g : {-1.0, 0.3, 1.0}) {
    // -sum(-log(1-|a|^2) - g|a|^2) - g(Re a_0 + |a_0|^2/2 + (1/2)sum|a_{k+1}-a_k|^2)
    double series = 0.0;
    for (int k = 0; k < 6; ++k)
      series += -std::log(1.0 - std::norm(alpha[k](0, 0))) - g * std::norm(alpha[k](0, 0));
    double t_part = alpha[0](0, 0).real() + 0.5 * std::norm(alpha[0](0, 0));
    for (int k = 0; k < 6; ++k)
      t_part += 0.5 * std::norm(alpha.at_or_zero(k + 1)(0, 0) - alpha[k](0, 0));
    const double regrouped = -series - g * t_part;
    CHECK(std::abs(rhs_sumrule(alpha, g) - regrouped) < 1e-10);
  }
}

TEST_CASE("monotone series terms and their lower bound") {
  CHECK(a_k_term(scalar1x1(0.0), scalar1x1(0.0), 1.0) == 0.0);
  CHECK(a_k_term(scalar1x1(0.5), scalar1x1(0.0), 1.0) ==
        doctest::Approx(-std::log(0.75) - 0.25 + 0.125).epsilon(1e-12));
  const double same = a_k_term(scalar1x1(0.5), scalar1x1(0.5), 1.0);
  CHECK(same == doctest::Approx(-std::log(0.75) - 0.25).epsilon(1e-12));
  CHECK(same >= 0.5 * 0.25 * 0.25);

  ContractionSampler rng(65);
  for (int trial = 0; trial < 200; ++trial) {
    const Index p = 1 + trial % 3;
    const ComplexMatrix ak = rng.strict_contraction(p, 0.1, 0.9);
    const ComplexMatrix an = rng.strict_contraction(p, 0.1, 0.9);
    for (double g : {0.0, 0.5, 1.0}) {
      const double term = a_k_term(ak, an, g);
      CHECK(term >= -1e-12);
      CHECK(term >= a_k_lower_bound(ak, an, g) - 1e-12);
    }
  }
}

TEST_CASE("one-step rule on fixed and random sequences") {
  CHECK(step_rule_residual(scalar_seq({0.0}), 0.5, 64) < 1e-12);
  CHECK(step_rule_residual(scalar_seq({0.5}), 1.0, 4096) < 1e-8);

  ContractionSampler rng(66);
  for (int trial = 0; trial < 10; ++trial) {
    VerblunskySequence alpha = test::draw_representable(rng, 2, 4, 4096, 1e-8);
    CHECK(step_rule_residual(alpha, 0.3, 4096) < 1e-6);
  }
}

TEST_CASE("iterated accumulation and its closed forms") {
  VerblunskySequence zeros(2, {ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2)});
  CHECK(std::abs(iterated_G(zeros, 1.0, 2).value) < 1e-14);

  IteratedStepSum one = iterated_G(scalar_seq({0.5}), 1.0, 1);
  CHECK(one.value == doctest::Approx(std::log(0.75) - 0.5).epsilon(1e-13));

  ContractionSampler rng(67);
  VerblunskySequence alpha = test::draw_representable(rng, 2, 5, 4096, 1e-9);
  for (double g : {0.0, 0.4, 1.0}) {
    for (int n : {2, 4, 5, 6}) {
      IteratedStepSum s = iterated_G(alpha, g, n);
      // the printed closed forms agree with each other and differ from the
      // accumulation by exactly 2 g Re tr(alpha_N - alpha_0)
      CHECK(std::abs(s.closed_form - s.closed_form_via_a) < 1e-10);
      const double gap =
          2.0 * g * (alpha.at_or_zero(n) - alpha.at_or_zero(0)).trace().real();
      CHECK(std::abs((s.value - s.closed_form) - gap) < 1e-10);
    }
    // telescoping: at full depth the accumulation equals the spectral side
    MatrixMeasure mu = bernstein_szego_measure(alpha, 4096);
    CHECK(std::abs(iterated_G(alpha, g, 5).value - lhs_sumrule(mu, g)) < 1e-6);
    // and matches the two-measure quadrature at partial depth
    std::vector<ComplexMatrix> tail(alpha.coeffs().begin() + 2, alpha.coeffs().end());
    MatrixMeasure mu2 = bernstein_szego_measure(VerblunskySequence(2, tail), 4096);
    CHECK(std::abs(iterated_G(alpha, g, 2).value -
                   (lhs_sumrule(mu, g) - lhs_sumrule(mu2, g))) < 1e-6);
  }
}

TEST_CASE("gem diagnostics on fixed sequences") {
  GemDiagnostics zero = gem_diagnostics(scalar_seq({0.0, 0.0}), 0.5);
  CHECK(zero.sum_i.back() == 0.0);
  CHECK(zero.sum_ii.back() == 0.0);
  CHECK(zero.sum_iii.back() == 0.0);
  CHECK(zero.governing == 1);

  // 0.9^0 clamps just under 1 to stay a strict contraction
  std::vector<ComplexMatrix> geo;
  for (int k = 0; k < 40; ++k)
    geo.push_back(scalar1x1(std::min(std::pow(0.9, k), 1.0 - 1e-12)));
  GemDiagnostics g = gem_diagnostics(VerblunskySequence(1, std::move(geo)), 1.0);
  CHECK(g.governing == 2);
  const double exact = (1.0 - std::pow(0.81, 40)) / 0.19;
  CHECK(std::abs(g.sum_i.back() - exact) < 1e-10);
  CHECK(std::abs(g.sum_i.back() - 1.0 / 0.19) < 2e-3);

  // constant sequence: sum_ii ~ N c^4 while sum_i ~ N c^2
  const double c = 0.5;
  std::vector<ComplexMatrix> konst(20, scalar1x1(c));
  GemDiagnostics k = gem_diagnostics(VerblunskySequence(1, std::move(konst)), -1.0);
  CHECK(k.governing == 3);
  CHECK(k.sum_i.back() == doctest::Approx(20 * c * c).epsilon(1e-12));
  // differences vanish except the final drop to zero
  CHECK(k.sum_ii.back() == doctest::Approx(20 * std::pow(c, 4) + c * c).epsilon(1e-12));
}

TEST_CASE("flip reduction") {
  VerblunskySequence alpha = scalar_seq({0.5, 0.2});
  auto [same, g_same] = flip_reduce(alpha, 0.5);
  CHECK(g_same == 0.5);
  CHECK(max_abs_diff(same[0], alpha[0]) == 0.0);

  auto [flipped, g_flip] = flip_reduce(alpha, -1.0);
  CHECK(g_flip == 1.0);
  CHECK(flipped[0](0, 0) == Complex(-0.5));
  CHECK(flipped[1](0, 0) == Complex(0.2));

  // T flips sign under the reduction
  CHECK(rhs_T(flipped) == doctest::Approx(-rhs_T(alpha)).epsilon(1e-13));
  CHECK(rhs_T(flipped) == doctest::Approx(-0.4).epsilon(1e-13));

  ContractionSampler rng(68);
  VerblunskySequence r = test::draw_representable(rng, 2, 5, 2048, 1e-8);
  auto [rf, gf] = flip_reduce(r, -0.6);
  CHECK(rhs_T(rf) == doctest::Approx(-rhs_T(r)).epsilon(1e-10));
  // the reduced pair reproduces the sum-rule residual
  SumRuleReport orig = sumrule_report(r, -0.6, 2048);
  SumRuleReport red = sumrule_report(rf, gf, 2048);
  CHECK(std::abs(orig.residual - red.residual) < 1e-9);
}

TEST_CASE("report assembly") {
  SumRuleReport empty = sumrule_report(VerblunskySequence(2, {}), 0.6, 256);
  CHECK(empty.lhs_integral == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(empty.rhs_series == 0.0);
  CHECK(empty.residual < 1e-12);
  CHECK(empty.T_value == 0.0);
  CHECK(empty.entropy_lhs ==
        doctest::Approx(2.0 * reference_entropy(ReferenceWeight(0.6))).epsilon(1e-8));
  CHECK(empty.entropy_rhs ==
        doctest::Approx(2.0 * reference_entropy(ReferenceWeight(0.6))).epsilon(1e-12));

  SumRuleReport scalar = sumrule_report(scalar_seq({0.5}), 1.0, 4096);
  CHECK(scalar.residual < 1e-8);
  CHECK(scalar.lhs_integral == doctest::Approx(std::log(0.75) - 0.5).epsilon(1e-8));

  ContractionSampler rng(69);
  SumRuleReport random =
      sumrule_report(test::draw_representable(rng, 2, 5, 4096, 1e-8), 0.6, 4096);
  CHECK(random.residual < 1e-6);
  CHECK(std::abs(random.entropy_lhs - random.entropy_rhs) < 1e-6);
  CHECK(random.entropy_lhs >= -1e-8);
  CHECK(random.entropy_rhs >= -1e-8);
  CHECK(std::abs(random.T_value - random.T_alt_value) < 1e-9);
}
