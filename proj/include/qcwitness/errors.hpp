#pragma once

#include <stdexcept>
#include <string>

namespace qcw {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shape or dimension mismatch between arguments.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A trace that must be real carried an imaginary residue above threshold.
class NumericalError : public Error {
  public:
    using Error::Error;
};

/// Generation parameters that would produce a non-positive operator.
class InadmissibleError : public Error {
  public:
    InadmissibleError(const std::string &what, double min_eigenvalue)
        : Error(what), min_eigenvalue_(min_eigenvalue) {}
    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

  private:
    double min_eigenvalue_;
};

} // namespace qcw
