#pragma once

#include <stdexcept>
#include <string>

namespace lgcp {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A circulant base matrix violates toroidal symmetry, or its transform
// carries an imaginary residue beyond tolerance.
class InvalidBase : public Error {
 public:
  using Error::Error;
};

// A spectral operation needed a strictly positive spectrum.
class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(const std::string& what, double min_eigenvalue)
      : Error(what + " (min eigenvalue " + std::to_string(min_eigenvalue) + ")"),
        min_eigenvalue_(min_eigenvalue) {}

  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

// Covariance embedding on the torus produced non-positive eigenvalues;
// retry with a larger extension factor.
class NeedLargerExtension : public NotPositiveDefinite {
 public:
  using NotPositiveDefinite::NotPositiveDefinite;
};

// A precision parameter vector whose spectrum is not positive.
class InfeasibleTheta : public Error {
 public:
  using Error::Error;
};

// Malformed configuration file or inconsistent options.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File read/write failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lgcp
