#include "mopuc/sumrule.hpp"

#include <cmath>

#include "mopuc/errors.hpp"
#include "mopuc/summation.hpp"

namespace mopuc {

namespace {

constexpr double kTAgreementTol = 1e-10;

double logdet_defect(const ComplexMatrix& alpha) {
  const ComplexMatrix id = identity(alpha.rows());
  return logdet_pd(id - alpha * alpha.adjoint());
}

double re_trace(const ComplexMatrix& m) { return m.trace().real(); }

} // namespace

double rhs_T_alt(const VerblunskySequence& alpha) {
  CompensatedSum<double> acc;
  const ComplexMatrix a0 = alpha.at_or_zero(0);
  acc.add(re_trace(a0));
  acc.add(0.5 * re_trace(a0 * a0.adjoint()));
  for (int k = 0; k < alpha.size(); ++k) {
    const ComplexMatrix d = alpha.at_or_zero(k) - alpha.at_or_zero(k + 1);
    acc.add(0.5 * re_trace(d * d.adjoint()));
    acc.add(-re_trace(alpha[k] * alpha[k].adjoint()));
  }
  return acc.value();
}

double rhs_T(const VerblunskySequence& alpha) {
  CompensatedSum<double> acc;
  acc.add(re_trace(alpha.at_or_zero(0)));
  for (int k = 0; k + 1 < alpha.size(); ++k)
    acc.add(-re_trace(alpha[k] * alpha[k + 1].adjoint()));
  const double t = acc.value();
  const double t_alt = rhs_T_alt(alpha);
  if (std::abs(t - t_alt) > kTAgreementTol)
    throw ConventionCheckFailed("the two trace-functional forms disagree by " +
                                std::to_string(std::abs(t - t_alt)));
  return t;
}

double rhs_sumrule(const VerblunskySequence& alpha, double g) {
  if (std::abs(g) > 1.0) throw BadConfig("sum rule requires |g| <= 1");
  CompensatedSum<double> acc;
  for (int k = 0; k < alpha.size(); ++k) acc.add(logdet_defect(alpha[k]));
  return acc.value() - g * rhs_T(alpha);
}

double lhs_sumrule(const MatrixMeasure& mu, double g) {
  return weighted_logdet_integral(mu, ReferenceWeight(g)).value;
}

double a_k_term(const ComplexMatrix& alpha_k, const ComplexMatrix& alpha_next,
                double g) {
  const ComplexMatrix x = alpha_k * alpha_k.adjoint();
  const ComplexMatrix d = alpha_next - alpha_k;
  return -logdet_defect(alpha_k) - g * x.trace().real() +
         0.5 * g * (d * d.adjoint()).trace().real();
}

double a_k_lower_bound(const ComplexMatrix& alpha_k, const ComplexMatrix& alpha_next,
                       double g) {
  const ComplexMatrix x = alpha_k * alpha_k.adjoint();
  const ComplexMatrix d = alpha_next - alpha_k;
  return (1.0 - g) * x.trace().real() + 0.5 * (x * x).trace().real() +
         0.5 * g * (d * d.adjoint()).trace().real();
}

double step_rule_residual(const VerblunskySequence& alpha, double g, Index grid_size) {
  if (alpha.size() < 1) throw BadConfig("step rule needs at least one coefficient");
  const Index p = alpha.dim();
  std::vector<ComplexMatrix> tail(alpha.coeffs().begin() + 1, alpha.coeffs().end());
  const MatrixMeasure mu = bernstein_szego_measure(alpha, grid_size);
  const MatrixMeasure mu1 =
      bernstein_szego_measure(VerblunskySequence(p, std::move(tail)), grid_size);

  const ReferenceWeight w(g);
  CompensatedSum<double> acc;
  for (Index j = 0; j < grid_size; ++j) {
    const double wg = w(mu.node_angle(j));
    if (wg == 0.0) continue;
    acc.add(wg * (logdet_pd(mu.density(j)) - logdet_pd(mu1.density(j))));
  }
  const double lhs = acc.value() / static_cast<double>(grid_size);

  const ComplexMatrix a0 = alpha[0];
  const ComplexMatrix a1 = alpha.at_or_zero(1);
  const double rhs =
      logdet_defect(a0) - g * re_trace(a0 - a1 - a1 * a0.adjoint());
  return std::abs(lhs - rhs);
}

IteratedStepSum iterated_G(const VerblunskySequence& alpha, double g, int n) {
  IteratedStepSum out;
  CompensatedSum<double> acc;
  CompensatedSum<double> cross;
  CompensatedSum<double> logdets;
  CompensatedSum<double> a_series;
  for (int k = 0; k < n; ++k) {
    const ComplexMatrix ak = alpha.at_or_zero(k);
    const ComplexMatrix an = alpha.at_or_zero(k + 1);
    acc.add(logdet_defect(ak) - g * re_trace(ak - an - an * ak.adjoint()));
    cross.add(re_trace(ak * an.adjoint()));
    logdets.add(logdet_defect(ak));
    a_series.add(a_k_term(ak, an, g));
  }
  out.value = acc.value();

  const ComplexMatrix a0 = alpha.at_or_zero(0);
  const ComplexMatrix an = alpha.at_or_zero(n);
  out.closed_form =
      -g * re_trace(an - a0) + g * cross.value() + logdets.value();
  out.closed_form_via_a = -g * re_trace(an - a0) +
                          0.5 * g * (re_trace(an * an.adjoint()) -
                                     re_trace(a0 * a0.adjoint())) -
                          a_series.value();
  return out;
}

GemDiagnostics gem_diagnostics(const VerblunskySequence& alpha, double g) {
  GemDiagnostics out;
  if (g == 1.0)
    out.governing = 2;
  else if (g == -1.0)
    out.governing = 3;
  else
    out.governing = 1;
  CompensatedSum<double> si, sii, siii;
  for (int k = 0; k < alpha.size(); ++k) {
    const ComplexMatrix x = alpha[k] * alpha[k].adjoint();
    const ComplexMatrix diff = alpha.at_or_zero(k + 1) - alpha[k];
    const ComplexMatrix sum = alpha.at_or_zero(k + 1) + alpha[k];
    si.add(x.trace().real());
    sii.add((x * x).trace().real() + (diff * diff.adjoint()).trace().real());
    siii.add((x * x).trace().real() + (sum * sum.adjoint()).trace().real());
    out.sum_i.push_back(si.value());
    out.sum_ii.push_back(sii.value());
    out.sum_iii.push_back(siii.value());
  }
  return out;
}

std::pair<VerblunskySequence, double> flip_reduce(const VerblunskySequence& alpha,
                                                  double g) {
  if (g >= 0.0) return {alpha, g};
  std::vector<ComplexMatrix> flipped;
  flipped.reserve(alpha.size());
  for (int k = 0; k < alpha.size(); ++k)
    flipped.push_back((k % 2 == 0 ? -1.0 : 1.0) * alpha[k]);
  return {VerblunskySequence(alpha.dim(), std::move(flipped)), -g};
}

SumRuleReport sumrule_report(const MatrixMeasure& mu, const VerblunskySequence& alpha,
                             double g) {
  SumRuleReport r;
  r.g = g;
  r.p = mu.dim();
  r.n_trunc = alpha.size();
  r.grid_size = mu.grid_size();

  const ReferenceWeight w(g);
  const ClampedIntegral lhs = weighted_logdet_integral(mu, w);
  r.lhs_integral = lhs.value;
  r.lhs_clamped = lhs.clamped_nodes > 0;

  CompensatedSum<double> logdets;
  for (int k = 0; k < alpha.size(); ++k) logdets.add(logdet_defect(alpha[k]));
  r.T_value = rhs_T(alpha);
  r.T_alt_value = rhs_T_alt(alpha);
  r.rhs_series = logdets.value() - g * r.T_value;
  r.residual = std::abs(r.lhs_integral - r.rhs_series);

  const ClampedIntegral ent = relative_entropy(w, mu);
  r.entropy_lhs = ent.value;
  r.entropy_infinite = ent.infinite;
  r.entropy_rhs = static_cast<double>(r.p) * reference_entropy(w) -
                  logdets.value() + g * r.T_value;
  r.gems = gem_diagnostics(alpha, g);
  return r;
}

SumRuleReport sumrule_report(const VerblunskySequence& alpha, double g, Index grid_size) {
  return sumrule_report(bernstein_szego_measure(alpha, grid_size), alpha, g);
}

} // namespace mopuc
