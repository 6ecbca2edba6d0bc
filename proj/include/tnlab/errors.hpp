#pragma once

#include <stdexcept>
#include <string>

namespace tnlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TNLAB_DEFINE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

TNLAB_DEFINE_ERROR(InvalidArgument);
TNLAB_DEFINE_ERROR(DimensionMismatch);

// symbol curve
TNLAB_DEFINE_ERROR(PointOnCurve);
TNLAB_DEFINE_ERROR(NonConvergent);

// dense kernels
TNLAB_DEFINE_ERROR(ConvergenceFailure);
TNLAB_DEFINE_ERROR(SingularMatrix);

// Grushin problems
TNLAB_DEFINE_ERROR(SingularGrushin);
TNLAB_DEFINE_ERROR(ThresholdDegenerate);
TNLAB_DEFINE_ERROR(NeumannViolation);

// analysis
TNLAB_DEFINE_ERROR(AtomCollision);
TNLAB_DEFINE_ERROR(TooCloseToCurve);
TNLAB_DEFINE_ERROR(DomainConditionsFailed);

// configuration and file formats
TNLAB_DEFINE_ERROR(ConfigError);
TNLAB_DEFINE_ERROR(FormatError);

#undef TNLAB_DEFINE_ERROR

}  // namespace tnlab
