#ifndef MOPUC_TYPES_HPP
#define MOPUC_TYPES_HPP

#include <complex>

#include <Eigen/Dense>

namespace mopuc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline ComplexMatrix identity(Index p) { return ComplexMatrix::Identity(p, p); }

constexpr double kPi = 3.141592653589793238462643383279502884;

/// Largest |z| at which disc-analytic transforms are evaluated.
constexpr double kEvalRadius = 0.99;

} // namespace mopuc

#endif
