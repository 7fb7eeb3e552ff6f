#include "lml/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lml/errors.hpp"

namespace lml {

namespace {

// Shared tail of both estimators: log weights -> estimate + diagnostics.
// Sorting first makes the reduction invariant to the order the samples were
// produced in.
EvidenceEstimate reduce_log_weights(std::vector<double> log_weights, EvidenceMethod method,
                                    Exec exec) {
  const std::size_t m = log_weights.size();
  std::sort(log_weights.begin(), log_weights.end());
  const double lse = log_sum_exp(log_weights, exec);
  if (!std::isfinite(lse)) {
    throw DegenerateEstimateError("all samples carry zero likelihood");
  }
  const double log_mean = lse - std::log(static_cast<double>(m));

  // ESS = (sum u)^2 / sum u^2 computed in the log domain.
  std::vector<double> doubled(m);
  for (std::size_t i = 0; i < m; ++i) doubled[i] = 2.0 * log_weights[i];
  const double lse2 = log_sum_exp(doubled, exec);
  const double ess = std::exp(2.0 * lse - lse2);

  // Delta method: se(log p_hat) ~= sd(u) / (p_hat sqrt(m)).
  std::vector<double> squares(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double ratio = std::exp(log_weights[i] - log_mean) - 1.0;
    squares[i] = ratio * ratio;
  }
  double std_error = 0.0;
  if (m > 1) {
    const double sample_var = pairwise_sum(squares, exec) / static_cast<double>(m - 1);
    std_error = std::sqrt(sample_var / static_cast<double>(m));
  }

  EvidenceDiagnostics diag;
  diag.std_error = std_error;
  diag.effective_sample_size = ess;
  diag.n_samples = static_cast<std::int64_t>(m);
  diag.unreliable = ess < 2.0;
  return {log_mean, method, diag};
}

}  // namespace

EvidenceEstimate likelihood_weighting(const DifferentiableModel& model, const OrderedDataset& data,
                                      std::size_t n_samples, SeedSpec seed, Exec exec) {
  if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
  std::vector<double> log_weights(n_samples);
  indexed_for(
      n_samples,
      [&](std::size_t i) {
        Rng rng = Rng::child(seed, i);
        log_weights[i] = model.log_likelihood(data, model.sample_prior(rng));
      },
      exec);
  return reduce_log_weights(std::move(log_weights), EvidenceMethod::likelihood_weighting, exec);
}

EvidenceEstimate importance_sampling(const DifferentiableModel& model, const OrderedDataset& data,
                                     const ProposalSpec& proposal, std::size_t n_samples,
                                     SeedSpec seed, Exec exec) {
  if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
  if (proposal.distribution.dim() != model.dim()) {
    throw std::invalid_argument("proposal dimension mismatch");
  }
  std::vector<double> log_weights(n_samples);
  indexed_for(
      n_samples,
      [&](std::size_t i) {
        Rng rng = Rng::child(seed, i);
        const Eigen::VectorXd w = proposal.distribution.sample(rng);
        log_weights[i] =
            model.log_likelihood(data, w) + model.log_prior(w) - proposal.distribution.log_density(w);
      },
      exec);
  return reduce_log_weights(std::move(log_weights), EvidenceMethod::importance_sampling, exec);
}

namespace {

// log of the Simpson-rule integral of exp(h) over [lo, hi] with n intervals
// (n even), computed as a log-sum-exp of h plus log-weights.
double log_simpson_1d(const std::function<double(double)>& h, double lo, double hi, std::size_t n) {
  const double step = (hi - lo) / static_cast<double>(n);
  std::vector<double> terms(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double coeff = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    terms[k] = h(lo + step * static_cast<double>(k)) + std::log(coeff);
  }
  std::sort(terms.begin(), terms.end());
  return log_sum_exp(terms) + std::log(step / 3.0);
}

double log_simpson_2d(const std::function<double(double, double)>& h, const Eigen::VectorXd& lo,
                      const Eigen::VectorXd& hi, std::size_t n) {
  const double sx = (hi[0] - lo[0]) / static_cast<double>(n);
  const double sy = (hi[1] - lo[1]) / static_cast<double>(n);
  std::vector<double> terms;
  terms.reserve((n + 1) * (n + 1));
  auto simpson_coeff = [n](std::size_t k) {
    return (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
  };
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      terms.push_back(h(lo[0] + sx * i, lo[1] + sy * j) +
                      std::log(simpson_coeff(i) * simpson_coeff(j)));
    }
  }
  std::sort(terms.begin(), terms.end());
  return log_sum_exp(terms) + std::log(sx / 3.0) + std::log(sy / 3.0);
}

}  // namespace

EvidenceEstimate quadrature_evidence(const DifferentiableModel& model, const OrderedDataset& data,
                                     std::size_t initial_resolution) {
  if (model.dim() > 2) throw std::invalid_argument("quadrature_evidence supports dim <= 2");
  if (initial_resolution < 4) initial_resolution = 4;
  const auto [lo, hi] = model.integration_box();
  constexpr double kTolerance = 1e-8;

  if (model.dim() == 1) {
    auto h = [&](double w) { return model.log_joint(data, Eigen::VectorXd::Constant(1, w)); };
    constexpr std::size_t kMaxNodes1d = std::size_t{1} << 22;
    double previous = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t n = initial_resolution; n <= kMaxNodes1d; n *= 2) {
      const double current = log_simpson_1d(h, lo[0], hi[0], n);
      if (std::isfinite(previous) && std::abs(current - previous) < kTolerance) {
        return {current, EvidenceMethod::quadrature};
      }
      previous = current;
    }
    throw QuadratureError("1-D quadrature did not converge at maximum resolution");
  }

  auto h = [&](double w0, double w1) {
    Eigen::VectorXd w(2);
    w << w0, w1;
    return model.log_joint(data, w);
  };
  constexpr std::size_t kMaxNodes2d = std::size_t{1} << 12;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t n = initial_resolution; n <= kMaxNodes2d; n *= 2) {
    const double current = log_simpson_2d(h, lo, hi, n);
    if (std::isfinite(previous) && std::abs(current - previous) < kTolerance) {
      return {current, EvidenceMethod::quadrature};
    }
    previous = current;
  }
  throw QuadratureError("2-D quadrature did not converge at maximum resolution");
}

}  // namespace lml
