#pragma once

#include <stdexcept>
#include <string>

namespace g1lab {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments or malformed input (CLI maps this to exit code 1).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Failures of the numerical machinery itself (CLI exit code 2).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// z lies within rank tolerance of the spectrum.
class SpectrumHit : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class Overflow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ClusterNotIsolated : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InvalidContour : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class GridTooLarge : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace g1lab
