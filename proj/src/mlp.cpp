#include "lml/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace lml {

namespace {
struct LayerView {
  Eigen::Map<const Eigen::MatrixXd> weight;  // out x in
  Eigen::Map<const Eigen::VectorXd> bias;
};

LayerView layer_view(const MlpSpec& spec, const Eigen::VectorXd& weights, int layer,
                     std::ptrdiff_t& offset) {
  const int in = spec.widths[layer];
  const int out = spec.widths[layer + 1];
  LayerView view{Eigen::Map<const Eigen::MatrixXd>(weights.data() + offset, out, in),
                 Eigen::Map<const Eigen::VectorXd>(weights.data() + offset + out * in, out)};
  offset += out * in + out;
  return view;
}

void check(const MlpSpec& spec, const Eigen::VectorXd& weights, const Eigen::MatrixXd& inputs) {
  if (spec.widths.size() < 2) throw std::invalid_argument("mlp needs at least two layers");
  if (spec.widths.back() != 1) throw std::invalid_argument("mlp output width must be 1");
  if (weights.size() != spec.param_count()) throw std::invalid_argument("weight vector size mismatch");
  if (inputs.cols() != spec.widths.front()) throw std::invalid_argument("input width mismatch");
}
}  // namespace

int MlpSpec::param_count() const {
  int count = 0;
  for (std::size_t layer = 0; layer + 1 < widths.size(); ++layer) {
    count += widths[layer] * widths[layer + 1] + widths[layer + 1];
  }
  return count;
}

Eigen::VectorXd mlp_init_weights(const MlpSpec& spec, Rng& rng) {
  Eigen::VectorXd weights(spec.param_count());
  std::ptrdiff_t offset = 0;
  for (std::size_t layer = 0; layer + 1 < spec.widths.size(); ++layer) {
    const int in = spec.widths[layer];
    const int out = spec.widths[layer + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    for (int k = 0; k < out * in + out; ++k) weights[offset + k] = rng.uniform(-bound, bound);
    offset += out * in + out;
  }
  return weights;
}

Eigen::VectorXd mlp_forward(const MlpSpec& spec, const Eigen::VectorXd& weights,
                            const Eigen::MatrixXd& inputs) {
  check(spec, weights, inputs);
  Eigen::MatrixXd activation = inputs.transpose();  // width x n
  std::ptrdiff_t offset = 0;
  const int n_layers = static_cast<int>(spec.widths.size()) - 1;
  for (int layer = 0; layer < n_layers; ++layer) {
    const LayerView view = layer_view(spec, weights, layer, offset);
    activation = (view.weight * activation).colwise() + view.bias;
    if (layer + 1 < n_layers) activation = activation.cwiseMax(0.0);  // ReLU
  }
  return activation.row(0).transpose();
}

Eigen::VectorXd mlp_backprop(const MlpSpec& spec, const Eigen::VectorXd& weights,
                             const Eigen::MatrixXd& inputs, const Eigen::VectorXd& output_grad) {
  check(spec, weights, inputs);
  if (output_grad.size() != inputs.rows()) throw std::invalid_argument("output_grad size mismatch");

  const int n_layers = static_cast<int>(spec.widths.size()) - 1;
  // Forward pass, keeping pre-activations for the ReLU masks.
  std::vector<Eigen::MatrixXd> activations;  // post-activation per layer, width x n
  activations.reserve(n_layers + 1);
  activations.push_back(inputs.transpose());
  std::vector<Eigen::MatrixXd> pre_activations(n_layers);
  {
    std::ptrdiff_t offset = 0;
    for (int layer = 0; layer < n_layers; ++layer) {
      const LayerView view = layer_view(spec, weights, layer, offset);
      pre_activations[layer] = (view.weight * activations.back()).colwise() + view.bias;
      if (layer + 1 < n_layers) {
        activations.push_back(pre_activations[layer].cwiseMax(0.0));
      } else {
        activations.push_back(pre_activations[layer]);
      }
    }
  }

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(weights.size());
  // delta: gradient wrt pre-activation of the current layer, width x n.
  Eigen::MatrixXd delta = output_grad.transpose();
  std::vector<std::ptrdiff_t> offsets(n_layers);
  {
    std::ptrdiff_t offset = 0;
    for (int layer = 0; layer < n_layers; ++layer) {
      offsets[layer] = offset;
      offset += spec.widths[layer] * spec.widths[layer + 1] + spec.widths[layer + 1];
    }
  }
  for (int layer = n_layers - 1; layer >= 0; --layer) {
    const int in = spec.widths[layer];
    const int out = spec.widths[layer + 1];
    Eigen::Map<Eigen::MatrixXd> weight_grad(grad.data() + offsets[layer], out, in);
    Eigen::Map<Eigen::VectorXd> bias_grad(grad.data() + offsets[layer] + out * in, out);
    weight_grad = delta * activations[layer].transpose();
    bias_grad = delta.rowwise().sum();
    if (layer > 0) {
      std::ptrdiff_t offset = offsets[layer];
      const LayerView view = layer_view(spec, weights, layer, offset);
      delta = view.weight.transpose() * delta;
      delta.array() *= (pre_activations[layer - 1].array() > 0.0).cast<double>();
    }
  }
  return grad;
}

}  // namespace lml
