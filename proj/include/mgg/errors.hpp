#pragma once

#include <stdexcept>
#include <string>

namespace mgg {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MGG_DECLARE_ERROR(Name)                 \
  class Name : public Error {                   \
   public:                                      \
    explicit Name(const std::string& what)      \
        : Error(std::string(#Name ": ") + what) {} \
  }

MGG_DECLARE_ERROR(DomainViolation);
MGG_DECLARE_ERROR(RegimeMismatch);
MGG_DECLARE_ERROR(Unattainable);
MGG_DECLARE_ERROR(Unsupported);
MGG_DECLARE_ERROR(NotAdmissible);
MGG_DECLARE_ERROR(ToleranceFailure);
MGG_DECLARE_ERROR(BracketFailure);
MGG_DECLARE_ERROR(Incompatible);
MGG_DECLARE_ERROR(OriginHessian);
MGG_DECLARE_ERROR(DegenerateFit);
MGG_DECLARE_ERROR(InvalidInput);

#undef MGG_DECLARE_ERROR

}  // namespace mgg
