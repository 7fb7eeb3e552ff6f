#ifndef LMLKIT_GAUSSIAN_HPP
#define LMLKIT_GAUSSIAN_HPP

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "lml/rng.hpp"

namespace lml {

/// Jitter ladder used everywhere a covariance is factorized: plain Cholesky
/// first, then +1e-8 I, then +1e-6 I, then NotPositiveDefiniteError.
struct CholeskyFactor {
  Eigen::MatrixXd lower;   ///< L with L L^T = A + jitter I
  double jitter = 0.0;     ///< jitter actually applied
  double log_det() const;  ///< log det(A + jitter I)
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;
};

CholeskyFactor cholesky_with_jitter(const Eigen::MatrixXd& matrix);

/// Multivariate normal with dense or diagonal covariance. Immutable; the
/// covariance is certified positive definite at construction via the ladder.
class GaussianDistribution {
 public:
  GaussianDistribution(Eigen::VectorXd mean, Eigen::MatrixXd covariance);
  static GaussianDistribution diagonal(Eigen::VectorXd mean, Eigen::VectorXd variances);
  static GaussianDistribution scalar(double mean, double variance);

  Eigen::Index dim() const { return mean_.size(); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }
  bool is_diagonal() const { return diagonal_; }

  double log_density(const Eigen::VectorXd& point) const;
  double log_density(double point) const;  ///< 1-D convenience

  /// Draws consume exactly dim() normals from the stream.
  Eigen::VectorXd sample(Rng& rng) const;

  /// 1-D accessors; throw unless dim() == 1.
  double scalar_mean() const;
  double scalar_variance() const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd covariance_;
  CholeskyFactor factor_;
  bool diagonal_ = false;
};

/// KL(q || p) in nats via the closed-form Gaussian expression. Throws on
/// dimension mismatch; non-positive-definite covariances are rejected by the
/// GaussianDistribution constructor.
double kl_gaussian(const GaussianDistribution& q, const GaussianDistribution& p);

}  // namespace lml

#endif  // LMLKIT_GAUSSIAN_HPP
