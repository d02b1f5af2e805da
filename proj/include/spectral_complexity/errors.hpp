#ifndef SPECTRAL_COMPLEXITY_ERRORS_HPP
#define SPECTRAL_COMPLEXITY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spectral_complexity {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad input: unreadable files, malformed rows, violated preconditions.
class InputError : public Error {
public:
  using Error::Error;
};

/// Numerical failure: eigensolver trouble, degenerate statistics, NaN.
class NumericError : public Error {
public:
  using Error::Error;
};

} // namespace spectral_complexity

#endif // SPECTRAL_COMPLEXITY_ERRORS_HPP
