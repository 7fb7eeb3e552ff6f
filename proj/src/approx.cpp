#include "lml/approx.hpp"

#include <cmath>
#include <stdexcept>

#include "lml/errors.hpp"
#include "lml/optimize.hpp"

namespace lml {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;

AscentOptions map_options(const DifferentiableModel& model) {
  AscentOptions options;
  options.max_iterations = 500;
  options.grad_tolerance = 1e-10;
  options.initial_step = 0.5;
  if (model.prior_kind() == PriorKind::uniform_box) options.box = model.uniform_bounds();
  return options;
}

// Newton refinement of an interior optimum. Line-searched ascent alone stops
// at |grad| ~ 1e-8; polishing to machine precision makes optima that are
// mathematically independent of a hyperparameter (e.g. the uniform-prior
// width) agree across calls to full floating-point accuracy.
template <class Value, class Grad, class Hess>
Eigen::VectorXd newton_polish(const Value& value, const Grad& gradient, const Hess& hessian,
                              Eigen::VectorXd w) {
  double current = value(w);
  for (int iter = 0; iter < 50; ++iter) {
    const Eigen::VectorXd grad = gradient(w);
    if (grad.norm() < 1e-13) break;
    const Eigen::MatrixXd neg_hessian = -hessian(w);
    Eigen::LLT<Eigen::MatrixXd> llt(neg_hessian);
    if (llt.info() != Eigen::Success) break;
    Eigen::VectorXd step = llt.solve(grad);
    bool accepted = false;
    for (int halving = 0; halving < 30; ++halving) {
      const Eigen::VectorXd candidate = w + step;
      const double candidate_value = value(candidate);
      if (std::isfinite(candidate_value) && candidate_value >= current) {
        w = candidate;
        current = candidate_value;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || step.norm() < 1e-15) break;
  }
  return w;
}
}  // namespace

LaplaceReport laplace_evidence(const DifferentiableModel& model, const OrderedDataset& data,
                               const Eigen::VectorXd& init, HessianMode mode) {
  if (init.size() != model.dim()) throw std::invalid_argument("init dimension mismatch");
  if (!model.in_support(init)) throw std::invalid_argument("init lies outside the prior support");

  AscentResult map = ascend(
      [&](const Eigen::VectorXd& w) { return model.log_joint(data, w); },
      [&](const Eigen::VectorXd& w) { return model.grad_log_joint(data, w); }, init,
      map_options(model));
  map.x = newton_polish([&](const Eigen::VectorXd& w) { return model.log_joint(data, w); },
                        [&](const Eigen::VectorXd& w) { return model.grad_log_joint(data, w); },
                        [&](const Eigen::VectorXd& w) { return model.hessian_log_joint(data, w); },
                        map.x);

  if (model.prior_kind() == PriorKind::uniform_box) {
    const auto [lo, hi] = model.uniform_bounds();
    for (Eigen::Index i = 0; i < map.x.size(); ++i) {
      const double margin = 1e-9 * std::max(1.0, hi[i] - lo[i]);
      if (map.x[i] - lo[i] < margin || hi[i] - map.x[i] < margin) {
        throw DegenerateCurvatureError("MAP on the uniform-prior boundary; Laplace undefined");
      }
    }
  }

  Eigen::MatrixXd hessian = model.hessian_log_joint(data, map.x);
  if (mode == HessianMode::diagonal) {
    hessian = Eigen::MatrixXd(hessian.diagonal().asDiagonal());
  }

  // Sigma = (-H)^-1; log det Sigma = -log det(-H).
  Eigen::MatrixXd neg_hessian = -hessian;
  Eigen::LLT<Eigen::MatrixXd> llt(neg_hessian);
  if (llt.info() != Eigen::Success || llt.matrixL().toDenseMatrix().diagonal().minCoeff() <= 0.0) {
    throw DegenerateCurvatureError("negated Hessian at the MAP is not positive definite");
  }
  const double log_det_neg_hessian =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();

  LaplaceReport report;
  report.w_map = map.x;
  report.hessian_mode = mode;
  report.map_converged = map.converged;
  report.log_det_sigma = -log_det_neg_hessian;
  report.log_lik_at_map = model.log_likelihood(data, map.x);
  report.log_prior_at_map = model.log_prior(map.x);
  report.gaussian_volume_term =
      0.5 * static_cast<double>(model.dim()) * kLog2Pi + 0.5 * report.log_det_sigma;
  report.log_evidence = report.log_lik_at_map + report.log_prior_at_map + report.gaussian_volume_term;
  return report;
}

double bic(const DifferentiableModel& model, const OrderedDataset& data, const Eigen::VectorXd& init) {
  if (data.empty()) throw std::invalid_argument("bic requires n >= 1");
  if (init.size() != model.dim()) throw std::invalid_argument("init dimension mismatch");
  AscentResult mle = ascend(
      [&](const Eigen::VectorXd& w) { return model.log_likelihood(data, w); },
      [&](const Eigen::VectorXd& w) { return model.grad_log_likelihood(data, w); }, init,
      map_options(model));
  mle.x = newton_polish(
      [&](const Eigen::VectorXd& w) { return model.log_likelihood(data, w); },
      [&](const Eigen::VectorXd& w) { return model.grad_log_likelihood(data, w); },
      [&](const Eigen::VectorXd& w) { return model.hessian_log_likelihood(data, w); }, mle.x);
  const double n = static_cast<double>(data.size());
  return model.log_likelihood(data, mle.x) - 0.5 * static_cast<double>(model.dim()) * std::log(n);
}

double elbo(const DifferentiableModel& model, const OrderedDataset& data,
            const GaussianDistribution& q, std::size_t n_samples, SeedSpec seed, Exec exec) {
  if (q.dim() != model.dim()) throw std::invalid_argument("q dimension mismatch");

  double data_fit = 0.0;
  if (n_samples == 0) {
    const auto analytic = model.expected_log_likelihood(data, q);
    if (!analytic) {
      throw std::invalid_argument("model has no analytic data-fit term; pass n_samples > 0");
    }
    data_fit = *analytic;
  } else {
    std::vector<double> values(n_samples);
    indexed_for(
        n_samples,
        [&](std::size_t i) {
          Rng rng = Rng::child(seed, i);
          values[i] = model.log_likelihood(data, q.sample(rng));
        },
        exec);
    data_fit = pairwise_sum(values) / static_cast<double>(n_samples);
  }

  double kl = 0.0;
  if (model.prior_kind() == PriorKind::gaussian) {
    kl = kl_gaussian(q, model.prior_gaussian());
  } else {
    // KL against the box density 1/volume; exact when q's mass outside the
    // box is negligible.
    const auto [lo, hi] = model.uniform_bounds();
    const double log_volume = (hi - lo).array().log().sum();
    const CholeskyFactor factor = cholesky_with_jitter(q.covariance());
    const double entropy = 0.5 * (q.dim() * (kLog2Pi + 1.0) + factor.log_det());
    kl = -entropy + log_volume;
  }
  return data_fit - kl;
}

double occam_rectangular(const GaussianDensityModel& model, const OrderedDataset& data) {
  if (model.variance_zero_limit || model.prior_variance <= 0.0) {
    throw std::invalid_argument("occam_rectangular requires prior_variance > 0");
  }
  if (data.empty()) return 0.0;
  const GaussianDistribution posterior = density_posterior(model, data);
  const double w_hat = posterior.scalar_mean();  // Gaussian: mode = mean
  const DensityParamModel param_model(model);
  const double best_fit =
      param_model.log_likelihood(data, Eigen::VectorXd::Constant(1, w_hat));
  const double log_occam =
      0.5 * (std::log(posterior.scalar_variance()) - std::log(model.prior_variance));
  return best_fit + log_occam;
}

}  // namespace lml
