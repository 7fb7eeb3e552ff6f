#ifndef LMLKIT_MLP_HPP
#define LMLKIT_MLP_HPP

#include <Eigen/Core>
#include <vector>

#include "lml/rng.hpp"

namespace lml {

/// Fully-connected ReLU network with biases, weights stored as one flat
/// vector (layer by layer: W row-major, then b).
struct MlpSpec {
  std::vector<int> widths{1, 50, 50, 1};

  int param_count() const;
};

/// Symmetric uniform init scaled by fan-in: U[-1/sqrt(fan_in), 1/sqrt(fan_in)].
Eigen::VectorXd mlp_init_weights(const MlpSpec& spec, Rng& rng);

/// Network outputs for each row of inputs (final layer width must be 1).
Eigen::VectorXd mlp_forward(const MlpSpec& spec, const Eigen::VectorXd& weights,
                            const Eigen::MatrixXd& inputs);

/// Reverse accumulation: gradient of sum_i output_grad[i] * f(x_i; weights)
/// with respect to the flat weight vector.
Eigen::VectorXd mlp_backprop(const MlpSpec& spec, const Eigen::VectorXd& weights,
                             const Eigen::MatrixXd& inputs, const Eigen::VectorXd& output_grad);

}  // namespace lml

#endif  // LMLKIT_MLP_HPP
