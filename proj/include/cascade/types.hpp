#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cascade {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Time integration left its health envelope (trace drift, blow-up).
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double time, double drift)
      : Error(what), time_(time), drift_(drift) {}
  double time() const { return time_; }
  double drift() const { return drift_; }

 private:
  double time_;
  double drift_;
};

/// Steady-state search exhausted its horizon.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, double time)
      : Error(what), residual_(residual), time_(time) {}
  double residual() const { return residual_; }
  double time() const { return time_; }

 private:
  double residual_;
  double time_;
};

/// Sorted eigenvalues of a Hermitian matrix (only the lower triangle is read).
RVector hermitian_eigenvalues(const CMatrix& m);

double hermiticity_error(const CMatrix& m);

}  // namespace cascade
