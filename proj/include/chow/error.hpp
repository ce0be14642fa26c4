#pragma once

#include <stdexcept>
#include <string>

namespace chow {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CHOW_DEFINE_ERROR(Name)        \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  };

CHOW_DEFINE_ERROR(InvalidInput)
CHOW_DEFINE_ERROR(UnsupportedRank)
CHOW_DEFINE_ERROR(AsymmetryError)
CHOW_DEFINE_ERROR(SpaceMismatch)
CHOW_DEFINE_ERROR(DegreeError)
CHOW_DEFINE_ERROR(RangeError)
CHOW_DEFINE_ERROR(RankError)
CHOW_DEFINE_ERROR(InvalidWeight)
CHOW_DEFINE_ERROR(InvalidIncidence)
CHOW_DEFINE_ERROR(DivisibilityError)
// Raised when an internal identity that must hold exactly fails (e.g. a
// pushforward with non-integral coefficients). Indicates a bug, not bad input.
CHOW_DEFINE_ERROR(ConsistencyError)

#undef CHOW_DEFINE_ERROR

}  // namespace chow
