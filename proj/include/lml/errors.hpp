#ifndef LMLKIT_ERRORS_HPP
#define LMLKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lml {

/// Base class for numerical failures raised by this library. Precondition
/// violations (bad arguments) use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Cholesky factorization failed even after the jitter ladder.
class NotPositiveDefiniteError : public NumericalError {
 public:
  explicit NotPositiveDefiniteError(const std::string& what) : NumericalError(what) {}
};

/// The negated Hessian at a located optimum is not positive definite, so the
/// Gaussian volume term of a Laplace approximation is undefined.
class DegenerateCurvatureError : public NumericalError {
 public:
  explicit DegenerateCurvatureError(const std::string& what) : NumericalError(what) {}
};

/// Every Monte Carlo sample carried zero likelihood; the estimate is -inf with
/// no usable error diagnostics.
class DegenerateEstimateError : public NumericalError {
 public:
  explicit DegenerateEstimateError(const std::string& what) : NumericalError(what) {}
};

/// Adaptive quadrature failed to reach the requested tolerance at the maximum
/// resolution.
class QuadratureError : public NumericalError {
 public:
  explicit QuadratureError(const std::string& what) : NumericalError(what) {}
};

}  // namespace lml

#endif  // LMLKIT_ERRORS_HPP
