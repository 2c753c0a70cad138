#pragma once

#include <stdexcept>
#include <string>

namespace pg {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PG_DEFINE_ERROR(Name)                 \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(std::string(#Name ": ") + what) {} \
  }

PG_DEFINE_ERROR(ClosureCapExceeded);
PG_DEFINE_ERROR(EmptyGeneratorList);
PG_DEFINE_ERROR(InvalidParameter);
PG_DEFINE_ERROR(InvalidGroup);
PG_DEFINE_ERROR(NotAHomomorphism);
PG_DEFINE_ERROR(NotAnAutomorphism);
PG_DEFINE_ERROR(OrderCapExceeded);
PG_DEFINE_ERROR(PNotPrime);
PG_DEFINE_ERROR(UnknownLabel);
PG_DEFINE_ERROR(ValidationFailed);
PG_DEFINE_ERROR(UnsupportedOrder);
PG_DEFINE_ERROR(ParseError);
PG_DEFINE_ERROR(InvalidVertex);
PG_DEFINE_ERROR(NoOrderSixSubgroup);
PG_DEFINE_ERROR(Disconnected);
PG_DEFINE_ERROR(InvalidRotation);
PG_DEFINE_ERROR(InexactInput);
PG_DEFINE_ERROR(InternalContradiction);
PG_DEFINE_ERROR(UnknownRule);

#undef PG_DEFINE_ERROR

}  // namespace pg
