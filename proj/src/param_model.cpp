#include "lml/param_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lml {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kFdStep = 1e-5;
}  // namespace

GaussianDistribution DifferentiableModel::prior_gaussian() const {
  throw std::invalid_argument("model prior is not Gaussian");
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> DifferentiableModel::uniform_bounds() const {
  throw std::invalid_argument("model prior is not a uniform box");
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> DifferentiableModel::integration_box() const {
  if (prior_kind() == PriorKind::uniform_box) return uniform_bounds();
  const GaussianDistribution prior = prior_gaussian();
  const Eigen::VectorXd sd = prior.covariance().diagonal().cwiseSqrt();
  return {prior.mean() - 8.0 * sd, prior.mean() + 8.0 * sd};
}

namespace {
template <class F>
Eigen::VectorXd central_gradient(const F& f, const Eigen::VectorXd& w) {
  Eigen::VectorXd grad(w.size());
  Eigen::VectorXd probe = w;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    probe[i] = w[i] + kFdStep;
    const double hi = f(probe);
    probe[i] = w[i] - kFdStep;
    const double lo = f(probe);
    probe[i] = w[i];
    grad[i] = (hi - lo) / (2.0 * kFdStep);
  }
  return grad;
}

template <class F>
Eigen::MatrixXd central_hessian(const F& f, const Eigen::VectorXd& w) {
  const Eigen::Index d = w.size();
  Eigen::MatrixXd hess(d, d);
  const double f0 = f(w);
  Eigen::VectorXd probe = w;
  for (Eigen::Index i = 0; i < d; ++i) {
    probe[i] = w[i] + kFdStep;
    const double fpp = f(probe);
    probe[i] = w[i] - kFdStep;
    const double fmm = f(probe);
    probe[i] = w[i];
    hess(i, i) = (fpp - 2.0 * f0 + fmm) / (kFdStep * kFdStep);
    for (Eigen::Index j = i + 1; j < d; ++j) {
      probe[i] = w[i] + kFdStep;
      probe[j] = w[j] + kFdStep;
      const double fa = f(probe);
      probe[j] = w[j] - kFdStep;
      const double fb = f(probe);
      probe[i] = w[i] - kFdStep;
      const double fd = f(probe);
      probe[j] = w[j] + kFdStep;
      const double fc = f(probe);
      probe[i] = w[i];
      probe[j] = w[j];
      hess(i, j) = hess(j, i) = (fa - fb - fc + fd) / (4.0 * kFdStep * kFdStep);
    }
  }
  return hess;
}
}  // namespace

Eigen::VectorXd DifferentiableModel::grad_log_likelihood(const OrderedDataset& data,
                                                         const Eigen::VectorXd& w) const {
  return central_gradient([&](const Eigen::VectorXd& p) { return log_likelihood(data, p); }, w);
}

Eigen::MatrixXd DifferentiableModel::hessian_log_likelihood(const OrderedDataset& data,
                                                            const Eigen::VectorXd& w) const {
  return central_hessian([&](const Eigen::VectorXd& p) { return log_likelihood(data, p); }, w);
}

Eigen::VectorXd DifferentiableModel::grad_log_prior(const Eigen::VectorXd& w) const {
  return central_gradient([&](const Eigen::VectorXd& p) { return log_prior(p); }, w);
}

Eigen::MatrixXd DifferentiableModel::hessian_log_prior(const Eigen::VectorXd& w) const {
  return central_hessian([&](const Eigen::VectorXd& p) { return log_prior(p); }, w);
}

Eigen::VectorXd DifferentiableModel::grad_log_joint(const OrderedDataset& data,
                                                    const Eigen::VectorXd& w) const {
  return grad_log_likelihood(data, w) + grad_log_prior(w);
}

Eigen::MatrixXd DifferentiableModel::hessian_log_joint(const OrderedDataset& data,
                                                       const Eigen::VectorXd& w) const {
  return hessian_log_likelihood(data, w) + hessian_log_prior(w);
}

std::optional<double> DifferentiableModel::expected_log_likelihood(const OrderedDataset&,
                                                                   const GaussianDistribution&) const {
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// DensityParamModel

DensityParamModel::DensityParamModel(GaussianDensityModel model) : model_(model) {
  if (model_.variance_zero_limit || model_.prior_variance <= 0.0) {
    throw std::invalid_argument("DensityParamModel requires prior_variance > 0");
  }
}

double DensityParamModel::log_likelihood(const OrderedDataset& data, const Eigen::VectorXd& w) const {
  const double u = w[0];
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = data.scalar_value(i) - u;
    total += -0.5 * (kLog2Pi + r * r);
  }
  return total;
}

double DensityParamModel::log_prior(const Eigen::VectorXd& w) const {
  const double r = w[0] - model_.prior_mean;
  return -0.5 * (kLog2Pi + std::log(model_.prior_variance) + r * r / model_.prior_variance);
}

GaussianDistribution DensityParamModel::prior_gaussian() const {
  return GaussianDistribution::scalar(model_.prior_mean, model_.prior_variance);
}

Eigen::VectorXd DensityParamModel::sample_prior(Rng& rng) const {
  return prior_gaussian().sample(rng);
}

Eigen::VectorXd DensityParamModel::grad_log_likelihood(const OrderedDataset& data,
                                                       const Eigen::VectorXd& w) const {
  double g = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) g += data.scalar_value(i) - w[0];
  return Eigen::VectorXd::Constant(1, g);
}

Eigen::MatrixXd DensityParamModel::hessian_log_likelihood(const OrderedDataset& data,
                                                          const Eigen::VectorXd&) const {
  return Eigen::MatrixXd::Constant(1, 1, -static_cast<double>(data.size()));
}

Eigen::VectorXd DensityParamModel::grad_log_prior(const Eigen::VectorXd& w) const {
  return Eigen::VectorXd::Constant(1, -(w[0] - model_.prior_mean) / model_.prior_variance);
}

Eigen::MatrixXd DensityParamModel::hessian_log_prior(const Eigen::VectorXd&) const {
  return Eigen::MatrixXd::Constant(1, 1, -1.0 / model_.prior_variance);
}

std::optional<double> DensityParamModel::expected_log_likelihood(
    const OrderedDataset& data, const GaussianDistribution& q) const {
  // E_q[log N(x; u, 1)] = -log(2 pi)/2 - ((x - m_q)^2 + v_q)/2 per point.
  const double m_q = q.scalar_mean();
  const double v_q = q.scalar_variance();
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = data.scalar_value(i) - m_q;
    total += -0.5 * (kLog2Pi + r * r + v_q);
  }
  return total;
}

// ---------------------------------------------------------------------------
// SineParamModel

double SineParamModel::log_likelihood(const OrderedDataset& data, const Eigen::VectorXd& w) const {
  return sine_log_likelihood(data, w[0]);
}

double SineParamModel::log_prior(const Eigen::VectorXd& w) const {
  if (std::abs(w[0]) > model_.prior_half_width) return -std::numeric_limits<double>::infinity();
  return -std::log(2.0 * model_.prior_half_width);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> SineParamModel::uniform_bounds() const {
  return {Eigen::VectorXd::Constant(1, -model_.prior_half_width),
          Eigen::VectorXd::Constant(1, model_.prior_half_width)};
}

Eigen::VectorXd SineParamModel::sample_prior(Rng& rng) const {
  return Eigen::VectorXd::Constant(
      1, rng.uniform(-model_.prior_half_width, model_.prior_half_width));
}

Eigen::VectorXd SineParamModel::grad_log_likelihood(const OrderedDataset& data,
                                                    const Eigen::VectorXd& w) const {
  const double s = std::sin(w[0]);
  const double c = std::cos(w[0]);
  double sum_residual = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) sum_residual += data.scalar_value(i) - s;
  return Eigen::VectorXd::Constant(1, c * sum_residual);
}

Eigen::MatrixXd SineParamModel::hessian_log_likelihood(const OrderedDataset& data,
                                                       const Eigen::VectorXd& w) const {
  const double s = std::sin(w[0]);
  const double c = std::cos(w[0]);
  double sum_residual = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) sum_residual += data.scalar_value(i) - s;
  const double h = -s * sum_residual - static_cast<double>(data.size()) * c * c;
  return Eigen::MatrixXd::Constant(1, 1, h);
}

Eigen::VectorXd SineParamModel::grad_log_prior(const Eigen::VectorXd&) const {
  return Eigen::VectorXd::Zero(1);  // flat on the interior
}

Eigen::MatrixXd SineParamModel::hessian_log_prior(const Eigen::VectorXd&) const {
  return Eigen::MatrixXd::Zero(1, 1);
}

// ---------------------------------------------------------------------------
// ClippedDensityParamModel

ClippedDensityParamModel::ClippedDensityParamModel(GaussianDensityModel model, double loss_lower,
                                                   double loss_upper)
    : model_(model), loss_lower_(loss_lower), loss_upper_(loss_upper) {
  if (loss_lower >= loss_upper) throw std::invalid_argument("loss bounds must satisfy a < b");
  if (model_.variance_zero_limit || model_.prior_variance <= 0.0) {
    throw std::invalid_argument("ClippedDensityParamModel requires prior_variance > 0");
  }
}

double ClippedDensityParamModel::clipped_nll(double x, double u) const {
  const double r = x - u;
  const double nll = 0.5 * (kLog2Pi + r * r);
  return std::clamp(nll, loss_lower_, loss_upper_);
}

double ClippedDensityParamModel::log_likelihood(const OrderedDataset& data,
                                                const Eigen::VectorXd& w) const {
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) total -= clipped_nll(data.scalar_value(i), w[0]);
  return total;
}

double ClippedDensityParamModel::log_prior(const Eigen::VectorXd& w) const {
  const double r = w[0] - model_.prior_mean;
  return -0.5 * (kLog2Pi + std::log(model_.prior_variance) + r * r / model_.prior_variance);
}

GaussianDistribution ClippedDensityParamModel::prior_gaussian() const {
  return GaussianDistribution::scalar(model_.prior_mean, model_.prior_variance);
}

Eigen::VectorXd ClippedDensityParamModel::sample_prior(Rng& rng) const {
  return prior_gaussian().sample(rng);
}

}  // namespace lml
