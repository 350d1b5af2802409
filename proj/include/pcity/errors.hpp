#ifndef PCITY_ERRORS_HPP
#define PCITY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pcity {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PCITY_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

PCITY_DEFINE_ERROR(DomainError);
PCITY_DEFINE_ERROR(EmptyIntersection);
PCITY_DEFINE_ERROR(UnsupportedBody);
PCITY_DEFINE_ERROR(UnboundedAtMaxWindow);
PCITY_DEFINE_ERROR(DegenerateCell);
PCITY_DEFINE_ERROR(HorizonExceeded);
PCITY_DEFINE_ERROR(QuadratureFailure);
PCITY_DEFINE_ERROR(TooLarge);

#undef PCITY_DEFINE_ERROR

}  // namespace pcity

#endif
