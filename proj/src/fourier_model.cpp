#include "lml/fourier_model.hpp"

#include <cmath>
#include <stdexcept>

namespace lml {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;

void check_model(const FourierRegressionModel& model) {
  if (model.order < 1) throw std::invalid_argument("order must be >= 1");
  if (model.prior_std.size() != model.order) {
    throw std::invalid_argument("prior_std must have one entry per frequency");
  }
  if (model.prior_std.minCoeff() <= 0.0) throw std::invalid_argument("prior stds must be > 0");
  if (model.noise_std <= 0.0) throw std::invalid_argument("noise_std must be > 0");
}

// Weight variances repeated for the sin and cos column of each frequency.
Eigen::VectorXd weight_variances(const FourierRegressionModel& model) {
  Eigen::VectorXd s2(2 * model.order);
  for (int d = 0; d < model.order; ++d) {
    s2[2 * d] = s2[2 * d + 1] = model.prior_std[d] * model.prior_std[d];
  }
  return s2;
}

// Posterior over weights: precision A = S^-1 + Phi^T Phi / noise^2,
// mean = A^-1 Phi^T y / noise^2.
struct WeightPosterior {
  Eigen::MatrixXd precision;
  CholeskyFactor factor;
  Eigen::VectorXd mean;
};

WeightPosterior weight_posterior(const FourierRegressionModel& model, const Eigen::MatrixXd& design,
                                 const Eigen::VectorXd& y) {
  const double inv_noise2 = 1.0 / (model.noise_std * model.noise_std);
  Eigen::MatrixXd precision = inv_noise2 * (design.transpose() * design);
  precision.diagonal() += weight_variances(model).cwiseInverse();
  WeightPosterior post;
  post.factor = cholesky_with_jitter(precision);
  post.mean = post.factor.solve(Eigen::VectorXd(inv_noise2 * (design.transpose() * y)));
  post.precision = std::move(precision);
  return post;
}
}  // namespace

Eigen::VectorXd fourier_unit_prior(int order) { return Eigen::VectorXd::Ones(order); }

Eigen::VectorXd fourier_inverse_square_prior(int order) {
  Eigen::VectorXd s(order);
  for (int d = 1; d <= order; ++d) s[d - 1] = 1.0 / (static_cast<double>(d) * d);
  return s;
}

Eigen::MatrixXd fourier_features(const Eigen::VectorXd& x, int order) {
  Eigen::MatrixXd design(x.size(), 2 * order);
  for (int d = 1; d <= order; ++d) {
    design.col(2 * (d - 1)) = (d * x.array()).sin();
    design.col(2 * (d - 1) + 1) = (d * x.array()).cos();
  }
  return design;
}

EvidenceEstimate fourier_lml(const FourierRegressionModel& model, const OrderedDataset& data,
                             FourierRoute route) {
  check_model(model);
  const Eigen::Index n = static_cast<Eigen::Index>(data.size());
  if (n == 0) return {0.0, EvidenceMethod::exact};
  const Eigen::VectorXd x = data.scalar_values();
  const Eigen::VectorXd y = data.targets();
  const Eigen::MatrixXd design = fourier_features(x, model.order);
  const double noise2 = model.noise_std * model.noise_std;

  if (route == FourierRoute::automatic) {
    route = (2 * model.order < n) ? FourierRoute::weight_space : FourierRoute::function_space;
  }

  if (route == FourierRoute::function_space) {
    Eigen::MatrixXd cov = design * weight_variances(model).asDiagonal() * design.transpose();
    cov.diagonal().array() += noise2;
    const CholeskyFactor factor = cholesky_with_jitter(cov);
    const double quad = y.dot(factor.solve(y));
    return {-0.5 * (n * kLog2Pi + factor.log_det() + quad), EvidenceMethod::exact};
  }

  // Weight space: log det C = n log noise^2 + log det S + log det A, and
  // y^T C^-1 y = (y^T y - y^T Phi mean) / noise^2.
  const WeightPosterior post = weight_posterior(model, design, y);
  const Eigen::VectorXd s2 = weight_variances(model);
  const double log_det =
      n * std::log(noise2) + s2.array().log().sum() + post.factor.log_det();
  const double quad = (y.squaredNorm() - y.dot(design * post.mean)) / noise2;
  return {-0.5 * (n * kLog2Pi + log_det + quad), EvidenceMethod::exact};
}

GaussianDistribution fourier_posterior_predictive(const FourierRegressionModel& model,
                                                  const OrderedDataset& train,
                                                  const Eigen::VectorXd& x_test, bool include_noise) {
  check_model(model);
  const Eigen::MatrixXd test_design = fourier_features(x_test, model.order);
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  if (train.empty()) {
    mean = Eigen::VectorXd::Zero(x_test.size());
    cov = test_design * weight_variances(model).asDiagonal() * test_design.transpose();
  } else {
    const Eigen::MatrixXd design = fourier_features(train.scalar_values(), model.order);
    const WeightPosterior post = weight_posterior(model, design, train.targets());
    mean = test_design * post.mean;
    cov = test_design * post.factor.solve(Eigen::MatrixXd(test_design.transpose()));
  }
  if (include_noise) cov.diagonal().array() += model.noise_std * model.noise_std;
  cov = 0.5 * (cov + cov.transpose());  // symmetrize roundoff
  return GaussianDistribution(std::move(mean), std::move(cov));
}

OrderedDataset fourier_generate_with_weights(int order, const Eigen::VectorXd& weights,
                                             double noise_std, std::size_t n, SeedSpec seed) {
  if (n < 1) throw std::invalid_argument("fourier_generate requires n >= 1");
  if (weights.size() != 2 * order) throw std::invalid_argument("weights size must equal 2*order");
  Rng rng = Rng::child(seed, 1);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = rng.uniform();
  const Eigen::MatrixXd design =
      fourier_features(Eigen::Map<const Eigen::VectorXd>(xs.data(), n), order);
  const Eigen::VectorXd latent = design * weights;
  for (std::size_t i = 0; i < n; ++i) ys[i] = latent[i] + rng.normal(0.0, noise_std);
  return OrderedDataset::from_xy(xs, ys);
}

OrderedDataset fourier_generate(int order, const Eigen::VectorXd& prior_std, double noise_std,
                                std::size_t n, SeedSpec seed) {
  if (prior_std.size() != order) throw std::invalid_argument("prior_std size must equal order");
  Rng rng = Rng::child(seed, 0);
  Eigen::VectorXd weights(2 * order);
  for (int d = 0; d < order; ++d) {
    weights[2 * d] = rng.normal(0.0, prior_std[d]);
    weights[2 * d + 1] = rng.normal(0.0, prior_std[d]);
  }
  return fourier_generate_with_weights(order, weights, noise_std, n, seed);
}

}  // namespace lml
