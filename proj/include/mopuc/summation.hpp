#ifndef MOPUC_SUMMATION_HPP
#define MOPUC_SUMMATION_HPP

#include "mopuc/types.hpp"

namespace mopuc {

/// Kahan-compensated accumulator. Quadrature and series sums go through this
/// so results are deterministic and independent of term count to ~1 ulp.
template <typename T>
class CompensatedSum {
public:
  CompensatedSum() = default;
  explicit CompensatedSum(const T& zero) : sum_(zero), comp_(zero) {}

  void add(const T& x) {
    T y = x - comp_;
    T t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }

  const T& value() const { return sum_; }

private:
  T sum_{};
  T comp_{};
};

/// Matrix specialization: component-wise compensation.
class CompensatedMatrixSum {
public:
  CompensatedMatrixSum(Index rows, Index cols)
      : sum_(ComplexMatrix::Zero(rows, cols)), comp_(ComplexMatrix::Zero(rows, cols)) {}

  void add(const ComplexMatrix& x) {
    ComplexMatrix y = x - comp_;
    ComplexMatrix t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }

  const ComplexMatrix& value() const { return sum_; }

private:
  ComplexMatrix sum_;
  ComplexMatrix comp_;
};

} // namespace mopuc

#endif
