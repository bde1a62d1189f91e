#pragma once

#include <stdexcept>
#include <string>

namespace polycap {

/// Base class for all polycap errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate or inconsistent geometric input (coincident points, radius
/// mismatch, open chains, ...).
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

/// A parameter outside its admissible range (|a| >= 1, s > r, odd n, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Query point lies on (or numerically too close to) a boundary curve.
class PointOnBoundary : public Error {
 public:
  using Error::Error;
};

/// Two boundary nodes coincide; the kernels are not evaluable.
class GeometryDegenerate : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a special function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A linear solve did not converge or the system is singular.
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& msg, double residual = 0.0)
      : Error(msg), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace polycap
