#ifndef LMLKIT_FOURIER_MODEL_HPP
#define LMLKIT_FOURIER_MODEL_HPP

#include <Eigen/Core>

#include "lml/dataset.hpp"
#include "lml/evidence.hpp"
#include "lml/gaussian.hpp"

namespace lml {

/// Bayesian linear regression on the sinusoidal basis
///   f(x) = sum_{d=1..D} a_d sin(d x) + b_d cos(d x),
/// with independent weight priors a_d, b_d ~ N(0, prior_std[d-1]^2) and
/// observation noise N(0, noise_std^2).
struct FourierRegressionModel {
  int order = 1;               ///< D >= 1
  Eigen::VectorXd prior_std;   ///< s_d for d = 1..D
  double noise_std = 0.1;
};

/// s_d = 1 for all frequencies.
Eigen::VectorXd fourier_unit_prior(int order);
/// s_d = 1/d^2 (the corrected prior matching the generating process).
Eigen::VectorXd fourier_inverse_square_prior(int order);

/// n x 2D design matrix with columns sin(d x), cos(d x) for d = 1..D.
Eigen::MatrixXd fourier_features(const Eigen::VectorXd& x, int order);

/// Which algebraic route evaluates the evidence. Both are mathematically
/// identical; `automatic` picks weight space once 2D < n for cost.
enum class FourierRoute { automatic, function_space, weight_space };

/// Exact log evidence of y under N(0, Phi S Phi^T + noise^2 I).
EvidenceEstimate fourier_lml(const FourierRegressionModel& model, const OrderedDataset& data,
                             FourierRoute route = FourierRoute::automatic);

/// Exact Gaussian posterior predictive over f(x_test); include_noise adds
/// noise_std^2 I for the y-variant. Works for empty training data (prior
/// predictive) as well.
GaussianDistribution fourier_posterior_predictive(const FourierRegressionModel& model,
                                                  const OrderedDataset& train,
                                                  const Eigen::VectorXd& x_test, bool include_noise);

/// Draws n inputs x ~ Uniform[0, 1], weights from the given per-frequency
/// stds, and iid noise; deterministic per seed.
OrderedDataset fourier_generate(int order, const Eigen::VectorXd& prior_std, double noise_std,
                                std::size_t n, SeedSpec seed);

/// Same protocol with the latent weights fixed by the caller.
OrderedDataset fourier_generate_with_weights(int order, const Eigen::VectorXd& weights,
                                             double noise_std, std::size_t n, SeedSpec seed);

}  // namespace lml

#endif  // LMLKIT_FOURIER_MODEL_HPP
