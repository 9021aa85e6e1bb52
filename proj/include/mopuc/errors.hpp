#ifndef MOPUC_ERRORS_HPP
#define MOPUC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mopuc {

/// Base class of all library errors. `kind()` is a stable machine-readable tag.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

#define MOPUC_DEFINE_ERROR(Name)                                               \
  class Name : public Error {                                                  \
  public:                                                                       \
    explicit Name(const std::string& message) : Error(#Name, message) {}        \
  }

MOPUC_DEFINE_ERROR(NotPSD);
MOPUC_DEFINE_ERROR(NotPD);
MOPUC_DEFINE_ERROR(NotHermitian);
MOPUC_DEFINE_ERROR(NotContraction);
MOPUC_DEFINE_ERROR(NotNormalizable);
MOPUC_DEFINE_ERROR(BadSample);
MOPUC_DEFINE_ERROR(MomentOrderTooHigh);
MOPUC_DEFINE_ERROR(RadiusTooLarge);
MOPUC_DEFINE_ERROR(TrivialMeasure);
MOPUC_DEFINE_ERROR(ConventionCheckFailed);
MOPUC_DEFINE_ERROR(DegreeMismatch);
MOPUC_DEFINE_ERROR(InsufficientMoments);
MOPUC_DEFINE_ERROR(SingularPencil);
MOPUC_DEFINE_ERROR(SingularPolynomial);
MOPUC_DEFINE_ERROR(DepthExceeded);
MOPUC_DEFINE_ERROR(BadConfig);

#undef MOPUC_DEFINE_ERROR

} // namespace mopuc

#endif
