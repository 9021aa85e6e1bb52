#include "mopuc/measure.hpp"

#include <cmath>

#include "mopuc/errors.hpp"
#include "mopuc/summation.hpp"

namespace mopuc {

namespace {

constexpr double kMassTol = 1e-8;
constexpr double kDetFloorLog = -690.77552789821371; // log(1e-300)
constexpr double kFloorFraction = 0.01;

bool is_power_of_two(Index m) { return m > 0 && (m & (m - 1)) == 0; }

// Symmetrize and verify PSD within the construction tolerances.
ComplexMatrix checked_psd(const ComplexMatrix& a, Index dim, const char* what) {
  if (a.rows() != dim || a.cols() != dim)
    throw BadSample(std::string(what) + ": dimension mismatch");
  ComplexMatrix h;
  try {
    h = HermitianMatrix(a).matrix();
  } catch (const Error& e) {
    throw BadSample(std::string(what) + ": " + e.what());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdClampTol)
    throw BadSample(std::string(what) + ": not positive semidefinite");
  return h;
}

// Sum of log-eigenvalues with the 1e-300 per-node det floor. Returns the
// (possibly clamped) log det and whether clamping fired.
std::pair<double, bool> floored_logdet(const ComplexMatrix& w) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(w, Eigen::EigenvaluesOnly);
  double ld = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    ld += std::log(std::max(es.eigenvalues()(i), 1e-300));
  if (ld <= kDetFloorLog) return {kDetFloorLog, true};
  return {ld, false};
}

} // namespace

ReferenceWeight::ReferenceWeight(double g) : g_(g) {
  if (!(std::abs(g) <= 1.0)) throw BadConfig("reference weight requires |g| <= 1");
}

double ReferenceWeight::operator()(double theta) const {
  return 1.0 - g_ * std::cos(theta);
}

double reference_entropy(ReferenceWeight g) {
  const double s = std::sqrt(std::max(0.0, 1.0 - g.g() * g.g()));
  return 1.0 - s + std::log((1.0 + s) / 2.0);
}

MatrixMeasure::MatrixMeasure(std::vector<ComplexMatrix> density,
                             std::vector<MeasureAtom> atoms, Normalization mode) {
  if (density.empty()) throw BadSample("density sample list is empty");
  const Index m = static_cast<Index>(density.size());
  if (!is_power_of_two(m) || m < 8)
    throw BadConfig("grid size must be a power of two >= 8");
  dim_ = density.front().rows();

  density_.reserve(density.size());
  for (const auto& w : density) density_.push_back(checked_psd(w, dim_, "density sample"));
  atoms_.reserve(atoms.size());
  for (auto& a : atoms) {
    double theta = std::fmod(a.theta, 2.0 * kPi);
    if (theta < 0.0) theta += 2.0 * kPi;
    atoms_.push_back({theta, checked_psd(a.weight, dim_, "atom weight")});
  }

  CompensatedMatrixSum mass(dim_, dim_);
  for (const auto& w : density_) mass.add(w / static_cast<double>(m));
  for (const auto& a : atoms_) mass.add(a.weight);
  const ComplexMatrix s = mass.value();

  if (mode == Normalization::Require) {
    if ((s - identity(dim_)).cwiseAbs().maxCoeff() > kMassTol)
      throw NotNormalizable("total mass differs from the identity beyond tolerance");
    return;
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 1e-14)
    throw NotNormalizable("total mass is singular");
  const ComplexMatrix sinvroot = es.eigenvectors() *
                                 es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                 es.eigenvectors().adjoint();
  for (auto& w : density_) w = (sinvroot * w * sinvroot).eval();
  for (auto& a : atoms_) a.weight = (sinvroot * a.weight * sinvroot).eval();
  // Re-symmetrize after conjugation so Hermitian symmetry stays bit-exact.
  for (auto& w : density_) w = 0.5 * (w + w.adjoint()).eval();
  for (auto& a : atoms_) a.weight = 0.5 * (a.weight + a.weight.adjoint()).eval();
}

MatrixMeasure MatrixMeasure::lebesgue(Index dim, Index grid_size) {
  std::vector<ComplexMatrix> density(grid_size, identity(dim));
  return MatrixMeasure(std::move(density), {}, Normalization::Require);
}

MatrixMeasure MatrixMeasure::gross_witten(ReferenceWeight g, Index dim, Index grid_size) {
  std::vector<ComplexMatrix> density;
  density.reserve(grid_size);
  for (Index j = 0; j < grid_size; ++j) {
    const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid_size);
    density.push_back(g(theta) * identity(dim));
  }
  // cos(theta_j) sums to zero exactly on a uniform grid, so mass is 1.
  return MatrixMeasure(std::move(density), {}, Normalization::Require);
}

double MatrixMeasure::node_angle(Index j) const {
  return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(grid_size());
}

ComplexMatrix MatrixMeasure::moment(int n) const {
  const Index m = grid_size();
  if (std::abs(n) > m / 4)
    throw MomentOrderTooHigh("moment order exceeds grid budget M/4");
  CompensatedMatrixSum acc(dim_, dim_);
  for (Index j = 0; j < m; ++j) {
    const Complex phase = std::polar(1.0, -static_cast<double>(n) * node_angle(j));
    acc.add((phase / static_cast<double>(m)) * density_[j]);
  }
  for (const auto& a : atoms_)
    acc.add(std::polar(1.0, -static_cast<double>(n) * a.theta) * a.weight);
  return acc.value();
}

ComplexMatrix MatrixMeasure::caratheodory(Complex z) const {
  if (std::abs(z) > kEvalRadius)
    throw RadiusTooLarge("evaluation point outside |z| <= 0.99");
  const Index m = grid_size();
  CompensatedMatrixSum acc(dim_, dim_);
  for (Index j = 0; j < m; ++j) {
    const Complex e = std::polar(1.0, node_angle(j));
    acc.add(((e + z) / (e - z) / static_cast<double>(m)) * density_[j]);
  }
  for (const auto& a : atoms_) {
    const Complex e = std::polar(1.0, a.theta);
    acc.add((e + z) / (e - z) * a.weight);
  }
  return acc.value();
}

MatrixMeasure MatrixMeasure::flipped() const {
  const Index m = grid_size();
  MatrixMeasure out;
  out.dim_ = dim_;
  out.density_.reserve(m);
  for (Index j = 0; j < m; ++j) out.density_.push_back(density_[(j + m / 2) % m]);
  out.atoms_.reserve(atoms_.size());
  for (const auto& a : atoms_) {
    double theta = a.theta + kPi;
    if (theta >= 2.0 * kPi) theta -= 2.0 * kPi;
    out.atoms_.push_back({theta, a.weight});
  }
  return out;
}

ClampedIntegral weighted_logdet_integral(const MatrixMeasure& mu, ReferenceWeight g) {
  const Index m = mu.grid_size();
  ClampedIntegral out;
  CompensatedSum<double> acc;
  for (Index j = 0; j < m; ++j) {
    const double wg = g(mu.node_angle(j));
    if (wg == 0.0) continue; // endpoint node of |g| = 1; the weight kills the term
    auto [ld, clamped] = floored_logdet(mu.density(j));
    if (clamped) ++out.clamped_nodes;
    acc.add(wg * ld);
  }
  out.value = acc.value() / static_cast<double>(m);
  out.infinite = out.clamped_nodes > static_cast<Index>(kFloorFraction * static_cast<double>(m));
  return out;
}

ClampedIntegral relative_entropy(ReferenceWeight g, const MatrixMeasure& mu) {
  const Index m = mu.grid_size();
  const double p = static_cast<double>(mu.dim());
  ClampedIntegral out;
  CompensatedSum<double> acc;
  for (Index j = 0; j < m; ++j) {
    const double wg = g(mu.node_angle(j));
    if (wg == 0.0) continue;
    auto [ld, clamped] = floored_logdet(mu.density(j));
    if (clamped) ++out.clamped_nodes;
    acc.add(-wg * (ld - p * std::log(wg)));
  }
  out.value = acc.value() / static_cast<double>(m);
  out.infinite = out.clamped_nodes > static_cast<Index>(kFloorFraction * static_cast<double>(m));
  if (out.infinite) out.value = std::numeric_limits<double>::infinity();
  return out;
}

} // namespace mopuc
