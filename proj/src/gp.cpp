#include "lml/gp.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lml {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;

struct GPSolve {
  Eigen::MatrixXd inputs;
  Eigen::VectorXd residual;  // y - mean(x)
  CholeskyFactor factor;     // of A = K + noise^2 I
  Eigen::VectorXd alpha;     // A^-1 residual
};

GPSolve solve_gp(const GPModel& model, const OrderedDataset& data) {
  GPSolve solve;
  solve.inputs = input_matrix(data);
  Eigen::MatrixXd a = kernel_matrix(model.kernel, solve.inputs, solve.inputs);
  a.diagonal().array() += model.noise_std * model.noise_std;
  solve.factor = cholesky_with_jitter(a);
  solve.residual = data.targets() - gp_mean(model, solve.inputs);
  solve.alpha = solve.factor.solve(solve.residual);
  return solve;
}
}  // namespace

Eigen::MatrixXd input_matrix(const OrderedDataset& data) {
  if (data.empty()) return Eigen::MatrixXd(0, 0);
  const Eigen::Index dim = data.point(0).x.size();
  Eigen::MatrixXd inputs(data.size(), dim);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.point(i).x.size() != dim) throw std::invalid_argument("inconsistent input dimensions");
    inputs.row(i) = data.point(i).x.transpose();
  }
  return inputs;
}

Eigen::VectorXd gp_mean(const GPModel& model, const Eigen::MatrixXd& inputs) {
  if (const auto* constant = std::get_if<ConstantMean>(&model.mean)) {
    return Eigen::VectorXd::Constant(inputs.rows(), constant->value);
  }
  const auto& mlp = std::get<MlpMean>(model.mean);
  return mlp_forward(mlp.arch, mlp.weights, inputs);
}

EvidenceEstimate gp_lml(const GPModel& model, const OrderedDataset& data) {
  if (data.empty()) return {0.0, EvidenceMethod::exact};
  const GPSolve solve = solve_gp(model, data);
  const double n = static_cast<double>(data.size());
  const double value =
      -0.5 * solve.residual.dot(solve.alpha) - 0.5 * solve.factor.log_det() - 0.5 * n * kLog2Pi;
  return {value, EvidenceMethod::exact};
}

GaussianDistribution gp_predict(const GPModel& model, const OrderedDataset& train,
                                const Eigen::MatrixXd& x_test, bool include_noise) {
  if (train.empty()) throw std::invalid_argument("gp_predict requires nonempty training data");
  const GPSolve solve = solve_gp(model, train);
  const Eigen::MatrixXd cross = kernel_matrix(model.kernel, solve.inputs, x_test);
  Eigen::VectorXd mean = gp_mean(model, x_test) + cross.transpose() * solve.alpha;
  Eigen::MatrixXd cov = kernel_matrix(model.kernel, x_test, x_test) -
                        cross.transpose() * solve.factor.solve(cross);
  if (include_noise) cov.diagonal().array() += model.noise_std * model.noise_std;
  cov = 0.5 * (cov + cov.transpose());
  return GaussianDistribution(std::move(mean), std::move(cov));
}

GaussianDistribution gp_predict(const GPModel& model, const OrderedDataset& train,
                                const std::vector<double>& x_test, bool include_noise) {
  Eigen::MatrixXd test(x_test.size(), 1);
  for (std::size_t i = 0; i < x_test.size(); ++i) test(i, 0) = x_test[i];
  return gp_predict(model, train, test, include_noise);
}

ClmlEstimate gp_clml(const GPModel& model, const OrderedDataset& data, std::size_t m,
                     std::size_t orderings, SeedSpec seed) {
  if (m < 1 || m > data.size()) throw std::invalid_argument("clml cut-off must satisfy 1 <= m <= n");
  const double full = gp_lml(model, data).log_value;
  if (orderings == 0) {
    return {full - gp_lml(model, data.prefix(m - 1)).log_value, 0.0, 1};
  }
  std::vector<double> values(orderings);
  for (std::size_t r = 0; r < orderings; ++r) {
    const OrderedDataset shuffled = make_ordering(data, seed, r);
    values[r] = full - gp_lml(model, shuffled.prefix(m - 1)).log_value;
  }
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / orderings;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double std_error =
      orderings > 1 ? std::sqrt(var / (orderings - 1) / orderings) : 0.0;
  return {mean, std_error, orderings};
}

Eigen::Index packed_size(const GPModel& model, const HyperMask& mask) {
  Eigen::Index size = 0;
  if (mask.lengthscale) ++size;
  if (mask.output_scale) ++size;
  if (mask.alpha) ++size;
  if (mask.noise) ++size;
  if (mask.mean) {
    if (std::holds_alternative<ConstantMean>(model.mean)) {
      ++size;
    } else {
      size += std::get<MlpMean>(model.mean).weights.size();
    }
  }
  return size;
}

Eigen::VectorXd pack_params(const GPModel& model, const HyperMask& mask) {
  if (mask.alpha && model.kernel.kind != KernelKind::rq) {
    throw std::invalid_argument("alpha is only a hyper of the rq kernel");
  }
  Eigen::VectorXd params(packed_size(model, mask));
  Eigen::Index at = 0;
  if (mask.lengthscale) params[at++] = std::log(model.kernel.lengthscale);
  if (mask.output_scale) params[at++] = std::log(model.kernel.output_scale);
  if (mask.alpha) params[at++] = std::log(model.kernel.alpha);
  if (mask.noise) {
    if (model.noise_std <= 0.0) throw std::invalid_argument("log-domain noise requires noise_std > 0");
    params[at++] = std::log(model.noise_std);
  }
  if (mask.mean) {
    if (const auto* constant = std::get_if<ConstantMean>(&model.mean)) {
      params[at++] = constant->value;
    } else {
      const auto& weights = std::get<MlpMean>(model.mean).weights;
      params.segment(at, weights.size()) = weights;
      at += weights.size();
    }
  }
  return params;
}

GPModel unpack_params(const GPModel& base, const HyperMask& mask, const Eigen::VectorXd& params) {
  if (params.size() != packed_size(base, mask)) throw std::invalid_argument("packed size mismatch");
  GPModel model = base;
  Eigen::Index at = 0;
  if (mask.lengthscale) model.kernel.lengthscale = std::exp(params[at++]);
  if (mask.output_scale) model.kernel.output_scale = std::exp(params[at++]);
  if (mask.alpha) model.kernel.alpha = std::exp(params[at++]);
  if (mask.noise) model.noise_std = std::exp(params[at++]);
  if (mask.mean) {
    if (std::holds_alternative<ConstantMean>(base.mean)) {
      model.mean = ConstantMean{params[at++]};
    } else {
      auto mlp = std::get<MlpMean>(base.mean);
      mlp.weights = params.segment(at, mlp.weights.size());
      at += mlp.weights.size();
      model.mean = std::move(mlp);
    }
  }
  return model;
}

Eigen::VectorXd gp_lml_grad(const GPModel& model, const OrderedDataset& data, const HyperMask& mask) {
  if (data.empty()) throw std::invalid_argument("gp_lml_grad requires n >= 1");
  if (mask.alpha && model.kernel.kind != KernelKind::rq) {
    throw std::invalid_argument("alpha is only a hyper of the rq kernel");
  }
  const GPSolve solve = solve_gp(model, data);
  const Eigen::Index n = solve.inputs.rows();
  // A^-1 is needed explicitly for the trace terms.
  const Eigen::MatrixXd a_inv = solve.factor.solve(Eigen::MatrixXd(Eigen::MatrixXd::Identity(n, n)));

  Eigen::VectorXd grad(packed_size(model, mask));
  Eigen::Index at = 0;
  auto covariance_term = [&](const Eigen::MatrixXd& da) {
    return 0.5 * solve.alpha.dot(da * solve.alpha) - 0.5 * (a_inv.cwiseProduct(da)).sum();
  };
  if (mask.lengthscale) {
    grad[at++] = covariance_term(
        kernel_matrix_grad(model.kernel, solve.inputs, solve.inputs, KernelHyper::log_lengthscale));
  }
  if (mask.output_scale) {
    grad[at++] = covariance_term(
        kernel_matrix_grad(model.kernel, solve.inputs, solve.inputs, KernelHyper::log_output_scale));
  }
  if (mask.alpha) {
    grad[at++] = covariance_term(
        kernel_matrix_grad(model.kernel, solve.inputs, solve.inputs, KernelHyper::log_alpha));
  }
  if (mask.noise) {
    // dA/d(log noise) = 2 noise^2 I
    const double noise2 = model.noise_std * model.noise_std;
    grad[at++] = noise2 * solve.alpha.squaredNorm() - noise2 * a_inv.trace();
  }
  if (mask.mean) {
    // d lml / d mean(x_i) = alpha_i, then through the mean's parameters.
    if (std::holds_alternative<ConstantMean>(model.mean)) {
      grad[at++] = solve.alpha.sum();
    } else {
      const auto& mlp = std::get<MlpMean>(model.mean);
      const Eigen::VectorXd weight_grad =
          mlp_backprop(mlp.arch, mlp.weights, solve.inputs, solve.alpha);
      grad.segment(at, weight_grad.size()) = weight_grad;
      at += weight_grad.size();
    }
  }
  return grad;
}

OrderedDataset gp_generate(const GPModel& model, const std::vector<double>& x, SeedSpec seed) {
  if (x.empty()) throw std::invalid_argument("gp_generate requires nonempty inputs");
  Eigen::MatrixXd inputs(x.size(), 1);
  for (std::size_t i = 0; i < x.size(); ++i) inputs(i, 0) = x[i];
  Eigen::MatrixXd a = kernel_matrix(model.kernel, inputs, inputs);
  a.diagonal().array() += model.noise_std * model.noise_std;
  const CholeskyFactor factor = cholesky_with_jitter(a);
  Rng rng = Rng::child(seed, 0);
  Eigen::VectorXd z(inputs.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
  const Eigen::VectorXd y =
      gp_mean(model, inputs) + factor.lower.triangularView<Eigen::Lower>() * z;
  std::vector<double> ys(y.data(), y.data() + y.size());
  return OrderedDataset::from_xy(x, ys);
}

}  // namespace lml
