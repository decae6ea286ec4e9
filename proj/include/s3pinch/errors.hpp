#pragma once

#include <stdexcept>
#include <string>

namespace s3pinch {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

/// Bad input: an argument outside its domain, a malformed spec or file.
/// The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A computation that could not be completed on valid input.
/// The CLI maps these to exit code 4.
class NumericalError : public Error {
 public:
  using Error::Error;
};

#define S3PINCH_DEFINE_ERROR(Name, Base)                        \
  class Name : public Base {                                    \
   public:                                                      \
    using Base::Base;                                           \
    const char* kind() const noexcept override { return #Name; } \
  }

S3PINCH_DEFINE_ERROR(DomainError, InputError);
S3PINCH_DEFINE_ERROR(ParseError, InputError);
S3PINCH_DEFINE_ERROR(FormatError, InputError);
S3PINCH_DEFINE_ERROR(OffSphere, InputError);
S3PINCH_DEFINE_ERROR(ResolutionTooCoarse, InputError);
S3PINCH_DEFINE_ERROR(NotMinimal, InputError);
S3PINCH_DEFINE_ERROR(NoSpectralData, InputError);

S3PINCH_DEFINE_ERROR(DegenerateMetric, NumericalError);
S3PINCH_DEFINE_ERROR(BracketFailure, NumericalError);
S3PINCH_DEFINE_ERROR(GenusDetectionFailure, NumericalError);
S3PINCH_DEFINE_ERROR(ImmersionFailure, NumericalError);

// A broken link in the tube-volume inequality chain. Not a numerical
// failure: the CLI reports it as a bound violation (exit code 3).
S3PINCH_DEFINE_ERROR(ChainViolation, Error);

#undef S3PINCH_DEFINE_ERROR

}  // namespace s3pinch
