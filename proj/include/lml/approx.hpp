#ifndef LMLKIT_APPROX_HPP
#define LMLKIT_APPROX_HPP

#include <Eigen/Core>

#include "lml/dataset.hpp"
#include "lml/density_model.hpp"
#include "lml/gaussian.hpp"
#include "lml/param_model.hpp"
#include "lml/parallel.hpp"
#include "lml/rng.hpp"

namespace lml {

enum class HessianMode { full, diagonal };

/// Laplace evidence broken into its terms:
///   log_evidence = log_lik_at_map + log_prior_at_map
///                + (D/2) log(2 pi) + 1/2 log det Sigma,
/// with Sigma the inverse of the negated log-joint Hessian at the MAP. The
/// report stores each term so the reassembly identity is exact by
/// construction.
struct LaplaceReport {
  Eigen::VectorXd w_map;
  double log_det_sigma = 0.0;
  double log_lik_at_map = 0.0;
  double log_prior_at_map = 0.0;
  double gaussian_volume_term = 0.0;  ///< (D/2) log(2 pi) + 1/2 log det Sigma
  double log_evidence = 0.0;
  HessianMode hessian_mode = HessianMode::full;
  bool map_converged = false;
};

/// Ascends to a local MAP from init (init must lie in the prior support) and
/// assembles the Gaussian-volume estimate. Uniform priors contribute
/// -log(volume) and a zero Hessian block; a MAP on the support boundary or a
/// non-negative-definite curvature raises DegenerateCurvatureError.
LaplaceReport laplace_evidence(const DifferentiableModel& model, const OrderedDataset& data,
                               const Eigen::VectorXd& init, HessianMode mode = HessianMode::full);

/// log p(D | w_MLE) - (D/2) log n, with w_MLE found by likelihood-only ascent
/// from init.
double bic(const DifferentiableModel& model, const OrderedDataset& data, const Eigen::VectorXd& init);

/// Evidence lower bound: E_q[log p(D|w)] - KL(q || prior). The data-fit term
/// uses the model's analytic form when n_samples == 0, otherwise Monte Carlo
/// with per-sample derived seeds and an order-independent reduction. For
/// uniform priors the KL is computed against the box density (exact up to the
/// q mass outside the box).
double elbo(const DifferentiableModel& model, const OrderedDataset& data,
            const GaussianDistribution& q, std::size_t n_samples, SeedSpec seed,
            Exec exec = default_exec());

/// Rectangular evidence approximation: log p(D | w_hat) plus the log Occam
/// factor log(posterior sd / prior sd), with w_hat the posterior mode. n = 0
/// gives 0 (no contraction, empty likelihood).
double occam_rectangular(const GaussianDensityModel& model, const OrderedDataset& data);

}  // namespace lml

#endif  // LMLKIT_APPROX_HPP
