#include "lml/density_model.hpp"

#include <cmath>
#include <stdexcept>

namespace lml {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;

void check_model(const GaussianDensityModel& model) {
  if (!model.variance_zero_limit && model.prior_variance <= 0.0) {
    throw std::invalid_argument("prior_variance must be > 0 (or use variance_zero_limit)");
  }
}
}  // namespace

EvidenceEstimate density_lml(const GaussianDensityModel& model, const OrderedDataset& data) {
  check_model(model);
  const std::size_t n = data.size();
  if (n == 0) return {0.0, EvidenceMethod::exact};
  const Eigen::VectorXd residual = data.scalar_values().array() - model.prior_mean;
  if (model.variance_zero_limit) {
    // u pinned to the prior mean: iid unit Gaussians
    const double value = -0.5 * (n * kLog2Pi + residual.squaredNorm());
    return {value, EvidenceMethod::exact};
  }
  const double s2 = model.prior_variance;
  const double sum = residual.sum();
  const double det = 1.0 + static_cast<double>(n) * s2;
  const double quad = residual.squaredNorm() - s2 * sum * sum / det;
  return {-0.5 * (n * kLog2Pi + std::log(det) + quad), EvidenceMethod::exact};
}

GaussianDistribution density_posterior(const GaussianDensityModel& model, const OrderedDataset& data) {
  check_model(model);
  if (model.variance_zero_limit) {
    throw std::invalid_argument("posterior is a point mass at prior_mean in the variance-zero limit");
  }
  const double s2 = model.prior_variance;
  const double n = static_cast<double>(data.size());
  if (data.empty()) return GaussianDistribution::scalar(model.prior_mean, s2);
  const double precision = 1.0 / s2 + n;
  const double mean = (data.scalar_values().sum() + model.prior_mean / s2) / precision;
  return GaussianDistribution::scalar(mean, 1.0 / precision);
}

GaussianDistribution density_predictive(const GaussianDensityModel& model, const OrderedDataset& data) {
  check_model(model);
  if (model.variance_zero_limit) return GaussianDistribution::scalar(model.prior_mean, 1.0);
  const GaussianDistribution posterior = density_posterior(model, data);
  return GaussianDistribution::scalar(posterior.scalar_mean(), 1.0 + posterior.scalar_variance());
}

}  // namespace lml
