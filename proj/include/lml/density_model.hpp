#ifndef LMLKIT_DENSITY_MODEL_HPP
#define LMLKIT_DENSITY_MODEL_HPP

#include "lml/dataset.hpp"
#include "lml/evidence.hpp"
#include "lml/gaussian.hpp"

namespace lml {

/// Conjugate Gaussian-mean density model: x ~ N(u, 1) with u ~ N(prior_mean,
/// prior_variance). Observation variance is fixed at 1.
///
/// variance_zero_limit selects the sigma^2 -> 0+ limit, where u is pinned to
/// prior_mean; it avoids the 1/sigma^2 terms blowing up at a numeric zero.
struct GaussianDensityModel {
  double prior_mean = 0.0;
  double prior_variance = 1.0;
  bool variance_zero_limit = false;
};

/// Exact log evidence of scalar data under N(mu 1, I + sigma^2 11^T), in O(n)
/// via the rank-one inverse identity and det = 1 + n sigma^2. n = 0 gives 0.
EvidenceEstimate density_lml(const GaussianDensityModel& model, const OrderedDataset& data);

/// Exact posterior over u; returns the prior when n = 0. Undefined (throws)
/// in the variance-zero limit, where the posterior is a point mass.
GaussianDistribution density_posterior(const GaussianDensityModel& model, const OrderedDataset& data);

/// Exact posterior predictive over the next observation: N(posterior mean,
/// 1 + posterior variance).
GaussianDistribution density_predictive(const GaussianDensityModel& model, const OrderedDataset& data);

}  // namespace lml

#endif  // LMLKIT_DENSITY_MODEL_HPP
