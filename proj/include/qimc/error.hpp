#pragma once

#include <stdexcept>
#include <string>

namespace qimc {

// Base for every error the library throws. Callers that only care about
// "something in the pipeline failed" catch this; the CLI maps the concrete
// subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QIMC_DEFINE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

QIMC_DEFINE_ERROR(ParseError);
QIMC_DEFINE_ERROR(UnsupportedFormat);
QIMC_DEFINE_ERROR(EmptyImage);
QIMC_DEFINE_ERROR(ShapeError);
QIMC_DEFINE_ERROR(LayoutError);
QIMC_DEFINE_ERROR(RangeError);
QIMC_DEFINE_ERROR(CapacityError);
QIMC_DEFINE_ERROR(MalformedState);
QIMC_DEFINE_ERROR(DomainError);

#undef QIMC_DEFINE_ERROR

}  // namespace qimc
