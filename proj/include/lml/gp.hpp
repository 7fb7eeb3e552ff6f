#ifndef LMLKIT_GP_HPP
#define LMLKIT_GP_HPP

#include <Eigen/Core>
#include <variant>
#include <vector>

#include "lml/dataset.hpp"
#include "lml/evidence.hpp"
#include "lml/gaussian.hpp"
#include "lml/kernels.hpp"
#include "lml/mlp.hpp"
#include "lml/rng.hpp"

namespace lml {

struct ConstantMean {
  double value = 0.0;
};

struct MlpMean {
  MlpSpec arch;
  Eigen::VectorXd weights;
};

/// GP regression model: kernel, observation noise std, and a constant or MLP
/// mean function.
struct GPModel {
  KernelSpec kernel;
  double noise_std = 0.0;
  std::variant<ConstantMean, MlpMean> mean = ConstantMean{};
};

/// Which parameters a fit / gradient call treats as free. Gradients are taken
/// in the log domain for the positive kernel/noise hypers and in the raw
/// domain for mean parameters. Packing order: log lengthscale, log output
/// scale, log alpha, log noise, mean parameters.
struct HyperMask {
  bool lengthscale = false;
  bool output_scale = false;
  bool alpha = false;
  bool noise = false;
  bool mean = false;

  static HyperMask lengthscale_only() { return {.lengthscale = true}; }
};

Eigen::VectorXd gp_mean(const GPModel& model, const Eigen::MatrixXd& inputs);

/// Rows of the dataset's input vectors, in ordering order.
Eigen::MatrixXd input_matrix(const OrderedDataset& data);

/// Exact GP evidence -1/2 r^T A^-1 r - 1/2 log det A - n/2 log 2pi with
/// A = K + noise^2 I and r = y - mean(x); Cholesky with the jitter ladder.
EvidenceEstimate gp_lml(const GPModel& model, const OrderedDataset& data);

/// Posterior predictive over the latent f at x_test; include_noise adds
/// noise^2 I for the y-variant.
GaussianDistribution gp_predict(const GPModel& model, const OrderedDataset& train,
                                const Eigen::MatrixXd& x_test, bool include_noise);
GaussianDistribution gp_predict(const GPModel& model, const OrderedDataset& train,
                                const std::vector<double>& x_test, bool include_noise);

/// Conditional evidence log p(D_{>=m} | D_{<m}) computed as the difference
/// lml(full) - lml(prefix(m-1)), averaged over `orderings` random
/// permutations drawn from the seed. orderings == 0 uses the dataset's own
/// ordering (the natural choice when a single conditioning set is wanted).
/// The ordering spread is reported in ordering_std_error.
struct ClmlEstimate {
  double log_value = 0.0;
  double ordering_std_error = 0.0;
  std::size_t n_orderings = 1;
};
ClmlEstimate gp_clml(const GPModel& model, const OrderedDataset& data, std::size_t m,
                     std::size_t orderings, SeedSpec seed);

/// Number of free parameters under the mask.
Eigen::Index packed_size(const GPModel& model, const HyperMask& mask);
/// Free parameters in packing order (log domain for positive hypers).
Eigen::VectorXd pack_params(const GPModel& model, const HyperMask& mask);
GPModel unpack_params(const GPModel& base, const HyperMask& mask, const Eigen::VectorXd& params);

/// Analytic evidence gradient in the packed layout:
/// 1/2 r^T A^-1 (dA) A^-1 r - 1/2 tr(A^-1 dA) for covariance hypers, and
/// (A^-1 r)^T d(mean)/d(params) for mean parameters (backprop for MLP means).
Eigen::VectorXd gp_lml_grad(const GPModel& model, const OrderedDataset& data, const HyperMask& mask);

/// Samples y ~ N(mean(x), K + noise^2 I) at the given inputs; deterministic
/// per seed.
OrderedDataset gp_generate(const GPModel& model, const std::vector<double>& x, SeedSpec seed);

}  // namespace lml

#endif  // LMLKIT_GP_HPP
