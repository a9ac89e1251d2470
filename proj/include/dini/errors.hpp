#pragma once

#include <stdexcept>
#include <string>

namespace dini {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DINI_DEFINE_ERROR(Name)              \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  };

DINI_DEFINE_ERROR(DomainError)
DINI_DEFINE_ERROR(PoleError)
DINI_DEFINE_ERROR(Overflow)
DINI_DEFINE_ERROR(IndexError)
DINI_DEFINE_ERROR(NoSignChange)
DINI_DEFINE_ERROR(MaxIterations)
DINI_DEFINE_ERROR(TailNotDecaying)
DINI_DEFINE_ERROR(MaxPanels)
DINI_DEFINE_ERROR(BracketScanFailure)
DINI_DEFINE_ERROR(RegimeMismatch)
DINI_DEFINE_ERROR(SpectrumNotPositive)
DINI_DEFINE_ERROR(ShiftTooSmall)
DINI_DEFINE_ERROR(TailBoundFailure)
DINI_DEFINE_ERROR(DiagonalSlowConvergence)
DINI_DEFINE_ERROR(NonFiniteRatio)
DINI_DEFINE_ERROR(SandwichViolation)
DINI_DEFINE_ERROR(CacheFormatError)

#undef DINI_DEFINE_ERROR

}  // namespace dini
