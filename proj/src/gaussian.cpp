#include "lml/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lml/errors.hpp"

namespace lml {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
}

double CholeskyFactor::log_det() const {
  return 2.0 * lower.diagonal().array().log().sum();
}

Eigen::VectorXd CholeskyFactor::solve(const Eigen::VectorXd& rhs) const {
  Eigen::VectorXd out = lower.triangularView<Eigen::Lower>().solve(rhs);
  lower.transpose().triangularView<Eigen::Upper>().solveInPlace(out);
  return out;
}

Eigen::MatrixXd CholeskyFactor::solve(const Eigen::MatrixXd& rhs) const {
  Eigen::MatrixXd out = lower.triangularView<Eigen::Lower>().solve(rhs);
  lower.transpose().triangularView<Eigen::Upper>().solveInPlace(out);
  return out;
}

CholeskyFactor cholesky_with_jitter(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("matrix must be square");
  static constexpr double kJitters[] = {0.0, 1e-8, 1e-6};
  for (double jitter : kJitters) {
    Eigen::MatrixXd candidate = matrix;
    if (jitter > 0.0) candidate.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(candidate);
    if (llt.info() == Eigen::Success && llt.matrixL().toDenseMatrix().diagonal().minCoeff() > 0.0) {
      return CholeskyFactor{llt.matrixL(), jitter};
    }
  }
  throw NotPositiveDefiniteError("Cholesky failed after jitter escalation to 1e-6");
}

GaussianDistribution::GaussianDistribution(Eigen::VectorXd mean, Eigen::MatrixXd covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  if (covariance_.rows() != mean_.size() || covariance_.cols() != mean_.size()) {
    throw std::invalid_argument("covariance shape does not match mean dimension");
  }
  const double scale = std::max(1.0, covariance_.cwiseAbs().maxCoeff());
  if ((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("covariance is not symmetric");
  }
  factor_ = cholesky_with_jitter(covariance_);
  diagonal_ = covariance_.isDiagonal(0.0);
}

GaussianDistribution GaussianDistribution::diagonal(Eigen::VectorXd mean, Eigen::VectorXd variances) {
  if (mean.size() != variances.size()) throw std::invalid_argument("mean/variance size mismatch");
  Eigen::MatrixXd cov = variances.asDiagonal();
  return GaussianDistribution(std::move(mean), std::move(cov));
}

GaussianDistribution GaussianDistribution::scalar(double mean, double variance) {
  return diagonal(Eigen::VectorXd::Constant(1, mean), Eigen::VectorXd::Constant(1, variance));
}

double GaussianDistribution::log_density(const Eigen::VectorXd& point) const {
  if (point.size() != dim()) throw std::invalid_argument("point dimension mismatch");
  const Eigen::VectorXd whitened = factor_.lower.triangularView<Eigen::Lower>().solve(point - mean_);
  return -0.5 * (dim() * kLog2Pi + factor_.log_det() + whitened.squaredNorm());
}

double GaussianDistribution::log_density(double point) const {
  return log_density(Eigen::VectorXd::Constant(1, point));
}

Eigen::VectorXd GaussianDistribution::sample(Rng& rng) const {
  Eigen::VectorXd z(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) z[i] = rng.normal();
  return mean_ + factor_.lower.triangularView<Eigen::Lower>() * z;
}

double GaussianDistribution::scalar_mean() const {
  if (dim() != 1) throw std::invalid_argument("not a 1-D distribution");
  return mean_[0];
}

double GaussianDistribution::scalar_variance() const {
  if (dim() != 1) throw std::invalid_argument("not a 1-D distribution");
  return covariance_(0, 0);
}

double kl_gaussian(const GaussianDistribution& q, const GaussianDistribution& p) {
  if (q.dim() != p.dim()) throw std::invalid_argument("kl_gaussian dimension mismatch");
  const Eigen::Index d = q.dim();
  const CholeskyFactor pf = cholesky_with_jitter(p.covariance());
  const CholeskyFactor qf = cholesky_with_jitter(q.covariance());
  const double trace = pf.solve(q.covariance()).trace();
  const Eigen::VectorXd delta = p.mean() - q.mean();
  const double mahalanobis = delta.dot(pf.solve(delta));
  return 0.5 * (trace + mahalanobis - static_cast<double>(d) + pf.log_det() - qf.log_det());
}

}  // namespace lml
