#pragma once

#include <stdexcept>
#include <string>

namespace lorlim {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LORLIM_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  };

LORLIM_DEFINE_ERROR(ConfigError)
LORLIM_DEFINE_ERROR(SignatureError)
LORLIM_DEFINE_ERROR(DomainError)
LORLIM_DEFINE_ERROR(ExcludedPointError)
LORLIM_DEFINE_ERROR(CausalityError)
LORLIM_DEFINE_ERROR(DivergenceError)
LORLIM_DEFINE_ERROR(MonotonicityError)
LORLIM_DEFINE_ERROR(AcausalityError)
LORLIM_DEFINE_ERROR(RegularityError)
LORLIM_DEFINE_ERROR(MarginError)
LORLIM_DEFINE_ERROR(DisconnectedError)
LORLIM_DEFINE_ERROR(StartPointError)
LORLIM_DEFINE_ERROR(ExtractionFailure)

#undef LORLIM_DEFINE_ERROR

}  // namespace lorlim
