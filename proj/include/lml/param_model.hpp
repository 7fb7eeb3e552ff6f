#ifndef LMLKIT_PARAM_MODEL_HPP
#define LMLKIT_PARAM_MODEL_HPP

#include <Eigen/Core>
#include <optional>
#include <utility>

#include "lml/dataset.hpp"
#include "lml/density_model.hpp"
#include "lml/gaussian.hpp"
#include "lml/rng.hpp"
#include "lml/sine_model.hpp"

namespace lml {

enum class PriorKind { gaussian, uniform_box };

/// A model with an explicit parameter vector w: likelihood and prior
/// evaluators plus the derivative machinery the Laplace/BIC/sampling
/// estimators need. Derivatives default to central finite differences;
/// built-in families override with analytic forms.
class DifferentiableModel {
 public:
  virtual ~DifferentiableModel() = default;

  virtual Eigen::Index dim() const = 0;
  virtual double log_likelihood(const OrderedDataset& data, const Eigen::VectorXd& w) const = 0;
  virtual double log_prior(const Eigen::VectorXd& w) const = 0;

  double log_joint(const OrderedDataset& data, const Eigen::VectorXd& w) const {
    const double prior = log_prior(w);
    if (!std::isfinite(prior)) return prior;
    return log_likelihood(data, w) + prior;
  }

  virtual PriorKind prior_kind() const = 0;
  /// Gaussian prior as a distribution; throws for uniform priors.
  virtual GaussianDistribution prior_gaussian() const;
  /// Uniform-box support; throws for Gaussian priors.
  virtual std::pair<Eigen::VectorXd, Eigen::VectorXd> uniform_bounds() const;

  virtual Eigen::VectorXd sample_prior(Rng& rng) const = 0;

  /// Integration box for quadrature: the prior support for uniform priors,
  /// +-8 prior stddevs for Gaussian ones (tail mass ~1e-15).
  std::pair<Eigen::VectorXd, Eigen::VectorXd> integration_box() const;

  bool in_support(const Eigen::VectorXd& w) const { return std::isfinite(log_prior(w)); }

  // Derivatives; finite-difference fallbacks with step 1e-5.
  virtual Eigen::VectorXd grad_log_likelihood(const OrderedDataset& data, const Eigen::VectorXd& w) const;
  virtual Eigen::MatrixXd hessian_log_likelihood(const OrderedDataset& data, const Eigen::VectorXd& w) const;
  virtual Eigen::VectorXd grad_log_prior(const Eigen::VectorXd& w) const;
  virtual Eigen::MatrixXd hessian_log_prior(const Eigen::VectorXd& w) const;

  Eigen::VectorXd grad_log_joint(const OrderedDataset& data, const Eigen::VectorXd& w) const;
  Eigen::MatrixXd hessian_log_joint(const OrderedDataset& data, const Eigen::VectorXd& w) const;

  /// Analytic E_q[log p(D|w)] for conjugate families; nullopt means the ELBO
  /// data-fit term must be estimated by Monte Carlo.
  virtual std::optional<double> expected_log_likelihood(const OrderedDataset& data,
                                                        const GaussianDistribution& q) const;
};

/// GaussianDensityModel viewed as a 1-parameter model (w = u).
class DensityParamModel final : public DifferentiableModel {
 public:
  explicit DensityParamModel(GaussianDensityModel model);

  Eigen::Index dim() const override { return 1; }
  double log_likelihood(const OrderedDataset& data, const Eigen::VectorXd& w) const override;
  double log_prior(const Eigen::VectorXd& w) const override;
  PriorKind prior_kind() const override { return PriorKind::gaussian; }
  GaussianDistribution prior_gaussian() const override;
  Eigen::VectorXd sample_prior(Rng& rng) const override;

  Eigen::VectorXd grad_log_likelihood(const OrderedDataset&, const Eigen::VectorXd&) const override;
  Eigen::MatrixXd hessian_log_likelihood(const OrderedDataset&, const Eigen::VectorXd&) const override;
  Eigen::VectorXd grad_log_prior(const Eigen::VectorXd&) const override;
  Eigen::MatrixXd hessian_log_prior(const Eigen::VectorXd&) const override;
  std::optional<double> expected_log_likelihood(const OrderedDataset& data,
                                                const GaussianDistribution& q) const override;

  const GaussianDensityModel& model() const { return model_; }

 private:
  GaussianDensityModel model_;
};

/// PeriodicSineModel as a 1-parameter model (w is the phase).
class SineParamModel final : public DifferentiableModel {
 public:
  explicit SineParamModel(PeriodicSineModel model) : model_(model) {}

  Eigen::Index dim() const override { return 1; }
  double log_likelihood(const OrderedDataset& data, const Eigen::VectorXd& w) const override;
  double log_prior(const Eigen::VectorXd& w) const override;
  PriorKind prior_kind() const override { return PriorKind::uniform_box; }
  std::pair<Eigen::VectorXd, Eigen::VectorXd> uniform_bounds() const override;
  Eigen::VectorXd sample_prior(Rng& rng) const override;

  Eigen::VectorXd grad_log_likelihood(const OrderedDataset&, const Eigen::VectorXd&) const override;
  Eigen::MatrixXd hessian_log_likelihood(const OrderedDataset&, const Eigen::VectorXd&) const override;
  Eigen::VectorXd grad_log_prior(const Eigen::VectorXd&) const override;
  Eigen::MatrixXd hessian_log_prior(const Eigen::VectorXd&) const override;

  const PeriodicSineModel& model() const { return model_; }

 private:
  PeriodicSineModel model_;
};

/// Density model with the per-point negative log-likelihood clipped to
/// [loss_lower, loss_upper]. Realizes the bounded-loss hypothesis of the
/// evidence-based PAC-Bayes bound.
class ClippedDensityParamModel final : public DifferentiableModel {
 public:
  ClippedDensityParamModel(GaussianDensityModel model, double loss_lower, double loss_upper);

  Eigen::Index dim() const override { return 1; }
  double log_likelihood(const OrderedDataset& data, const Eigen::VectorXd& w) const override;
  double log_prior(const Eigen::VectorXd& w) const override;
  PriorKind prior_kind() const override { return PriorKind::gaussian; }
  GaussianDistribution prior_gaussian() const override;
  Eigen::VectorXd sample_prior(Rng& rng) const override;

  /// clip(-log N(x; u, 1), a, b) for a single point.
  double clipped_nll(double x, double u) const;

 private:
  GaussianDensityModel model_;
  double loss_lower_, loss_upper_;
};

}  // namespace lml

#endif  // LMLKIT_PARAM_MODEL_HPP
