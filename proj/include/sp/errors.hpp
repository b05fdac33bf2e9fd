#pragma once

#include <stdexcept>
#include <string>

namespace sp {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define SP_DEFINE_ERROR(Name)            \
  struct Name : Error {                  \
    using Error::Error;                  \
  }

SP_DEFINE_ERROR(SyntaxError);
SP_DEFINE_ERROR(ConstraintError);
SP_DEFINE_ERROR(NonSkew);
SP_DEFINE_ERROR(DegenerateBranch);
SP_DEFINE_ERROR(CapReached);
SP_DEFINE_ERROR(RangeError);
SP_DEFINE_ERROR(CertificationFailure);
SP_DEFINE_ERROR(NonRegularPoint);
SP_DEFINE_ERROR(NonSymplecticFlag);
SP_DEFINE_ERROR(NotInAnnihilator);
SP_DEFINE_ERROR(UnsupportedRank);
SP_DEFINE_ERROR(JacobiViolation);
SP_DEFINE_ERROR(DimensionMismatch);

#undef SP_DEFINE_ERROR

}  // namespace sp
