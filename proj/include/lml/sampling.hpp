#ifndef LMLKIT_SAMPLING_HPP
#define LMLKIT_SAMPLING_HPP

#include <string>

#include "lml/dataset.hpp"
#include "lml/evidence.hpp"
#include "lml/gaussian.hpp"
#include "lml/parallel.hpp"
#include "lml/param_model.hpp"
#include "lml/rng.hpp"

namespace lml {

/// Importance-sampling proposal. For conjugate models the exact posterior is
/// itself a Gaussian, so it is passed here directly.
struct ProposalSpec {
  GaussianDistribution distribution;
  std::string label;
};

/// Simple Monte Carlo evidence estimate log[(1/m) sum_i p(D|w_i)] with
/// w_i ~ prior. All accumulation happens in the log domain through a sorted
/// pairwise log-sum-exp, so the estimate does not depend on sample order or
/// thread count. Diagnostics carry the log-domain delta-method std error and
/// ESS = (sum u)^2 / sum u^2. Raises DegenerateEstimateError when every
/// sample has zero likelihood.
EvidenceEstimate likelihood_weighting(const DifferentiableModel& model, const OrderedDataset& data,
                                      std::size_t n_samples, SeedSpec seed,
                                      Exec exec = default_exec());

/// Importance sampling with log-weights log p(D|w) + log p(w) - log q(w),
/// w ~ proposal. With the prior as proposal this reduces exactly to
/// likelihood_weighting (same seed, same samples, same estimate). ESS < 2 is
/// flagged unreliable in the diagnostics rather than raised as an error.
EvidenceEstimate importance_sampling(const DifferentiableModel& model, const OrderedDataset& data,
                                     const ProposalSpec& proposal, std::size_t n_samples,
                                     SeedSpec seed, Exec exec = default_exec());

/// Deterministic oracle for parameter dimension <= 2: composite Simpson
/// quadrature of p(D|w) p(w) in log-stabilized form over the model's
/// integration box, doubling the resolution until the result moves by less
/// than 1e-8. Raises QuadratureError if that never happens before the node
/// cap.
EvidenceEstimate quadrature_evidence(const DifferentiableModel& model, const OrderedDataset& data,
                                     std::size_t initial_resolution = 64);

}  // namespace lml

#endif  // LMLKIT_SAMPLING_HPP
