#ifndef MOPUC_SUMRULE_HPP
#define MOPUC_SUMRULE_HPP

#include <utility>
#include <vector>

#include "mopuc/measure.hpp"
#include "mopuc/opuc.hpp"

namespace mopuc {

/// Coefficient-side trace functional
///   T(alpha) = Re tr(alpha_0 - sum_k alpha_k alpha_{k+1}^dag).
/// Computed together with its regrouped form and checked to agree within
/// 1e-10 (both are exact on finitely supported sequences).
double rhs_T(const VerblunskySequence& alpha);

/// Regrouped form of the same functional:
///   Re tr alpha_0 + (1/2) tr alpha_0 alpha_0^dag
///   + (1/2) sum tr(alpha_k - alpha_{k+1})(alpha_k - alpha_{k+1})^dag
///   - sum tr alpha_k alpha_k^dag.
double rhs_T_alt(const VerblunskySequence& alpha);

/// Coefficient side of the sum rule:
///   sum_k log det(1 - alpha_k alpha_k^dag) - g * T(alpha).
double rhs_sumrule(const VerblunskySequence& alpha, double g);

/// Spectral side: grid quadrature of (1 - g cos theta) log det w(theta)
/// d(lambda_0), clamped like the entropy; atoms are excluded.
double lhs_sumrule(const MatrixMeasure& mu, double g);

/// Summand of the monotone series controlling the entropy:
///   A_k = -log det(1 - a a^dag) - g tr(a a^dag) + (g/2) tr(b - a)(b - a)^dag
/// with a = alpha_k, b = alpha_next. Nonnegative for g in [0, 1].
double a_k_term(const ComplexMatrix& alpha_k, const ComplexMatrix& alpha_next, double g);

/// Termwise lower bound of A_k:
///   (1-g) tr(a a^dag) + (1/2) tr((a a^dag)^2) + (g/2) tr(b - a)(b - a)^dag.
double a_k_lower_bound(const ComplexMatrix& alpha_k, const ComplexMatrix& alpha_next,
                       double g);

/// | integral(log det(w w_1^{-1})) d(lambda_g)
///   - [log det(1 - alpha_0 alpha_0^dag) - g Re tr(alpha_0 - alpha_1 - alpha_1 alpha_0^dag)] |
/// with w, w_1 the densities of the measures built from alpha and its
/// one-step shift, both sampled on the same grid.
double step_rule_residual(const VerblunskySequence& alpha, double g, Index grid_size);

struct IteratedStepSum {
  /// N-fold accumulation of the one-step rule (the ground truth):
  ///   sum_{k<N} [log det(1 - alpha_k alpha_k^dag)
  ///              - g Re tr(alpha_k - alpha_{k+1} - alpha_{k+1} alpha_k^dag)].
  double value = 0.0;
  /// Closed form with the leading term -g Re tr(alpha_N - alpha_0); differs
  /// from `value` by exactly 2 g Re tr(alpha_N - alpha_0).
  double closed_form = 0.0;
  /// Same closed form regrouped through the A_k series; algebraically equal
  /// to `closed_form`.
  double closed_form_via_a = 0.0;
};

/// Accumulated step rule to depth N (missing coefficients are zero). At full
/// depth `value` telescopes to the spectral integral of the measure.
IteratedStepSum iterated_G(const VerblunskySequence& alpha, double g, int n);

struct GemDiagnostics {
  /// Partial sums of sum tr(alpha_k alpha_k^dag).
  std::vector<double> sum_i;
  /// Partial sums of sum tr((alpha_k alpha_k^dag)^2)
  ///                + sum tr(alpha_{k+1} - alpha_k)(alpha_{k+1} - alpha_k)^dag.
  std::vector<double> sum_ii;
  /// The g = -1 variant: differences replaced by sums.
  std::vector<double> sum_iii;
  /// Which series governs entropy finiteness at this g:
  /// 1 for |g| < 1, 2 for g = 1, 3 for g = -1.
  int governing = 1;
};

GemDiagnostics gem_diagnostics(const VerblunskySequence& alpha, double g);

/// Rotation-by-pi reduction of negative g: for g < 0 returns the sequence
/// with alpha_k replaced by (-1)^{k+1} alpha_k, paired with -g; sum-rule
/// residuals are invariant under the reduction, and T flips sign.
std::pair<VerblunskySequence, double> flip_reduce(const VerblunskySequence& alpha,
                                                  double g);

struct SumRuleReport {
  double g = 0.0;
  Index p = 0;
  int n_trunc = 0;
  Index grid_size = 0;
  double lhs_integral = 0.0;
  double rhs_series = 0.0;
  double residual = 0.0;
  double entropy_lhs = 0.0; // K(Lambda_g | mu), grid quadrature
  double entropy_rhs = 0.0; // p K(lambda_g|lambda_0) - sum log det(...) + g T
  double T_value = 0.0;
  double T_alt_value = 0.0;
  bool lhs_clamped = false;      // spectral integral hit the det floor
  bool entropy_infinite = false; // clamping exceeded the floor fraction
  GemDiagnostics gems;
};

/// Full verification report for one (alpha, g) pair: the measure is the
/// finitely supported one generated by alpha, so both sides are exact up to
/// quadrature.
SumRuleReport sumrule_report(const VerblunskySequence& alpha, double g, Index grid_size);

/// Report against an externally supplied measure; `alpha` is the coefficient
/// sequence used for the series side (for non-finitely-supported measures the
/// residual includes the truncation tail).
SumRuleReport sumrule_report(const MatrixMeasure& mu, const VerblunskySequence& alpha,
                             double g);

} // namespace mopuc

#endif
