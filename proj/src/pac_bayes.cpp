#include "lml/pac_bayes.hpp"

#include <cmath>
#include <stdexcept>

#include "lml/gaussian.hpp"
#include "lml/param_model.hpp"
#include "lml/sampling.hpp"

namespace lml {

void BoundInputs::validate() const {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
  if (!(loss_lower < loss_upper)) throw std::invalid_argument("loss bounds must satisfy a < b");
  if (m && *m > n) throw std::invalid_argument("cut-off m must satisfy m <= n");
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::mcallester: return "mcallester";
    case BoundKind::germain_lml: return "germain_lml";
    case BoundKind::germain_clml: return "germain_clml";
  }
  return "unknown";
}

namespace {
double mcallester_value(const BoundInputs& inputs, double delta) {
  const double n = static_cast<double>(inputs.n);
  return *inputs.empirical_risk +
         std::sqrt((*inputs.kl + std::log(n / delta) + 2.0) / (2.0 * n - 1.0));
}

// Shared Germain form; the caller supplies the log evidence and the count the
// root is taken over.
double germain_value(const BoundInputs& inputs, double delta, double log_evidence,
                     double root_count) {
  const long double a = inputs.loss_lower;
  const long double b = inputs.loss_upper;
  // (p delta)^(1/count) evaluated in the log domain, then the bracket
  // 1 - e^a root as -expm1(a + log root).
  const long double log_root =
      (static_cast<long double>(log_evidence) + std::log(static_cast<long double>(delta))) /
      static_cast<long double>(root_count);
  const long double bracket = -std::expm1(a + log_root);
  const long double prefactor = (b - a) / (-std::expm1(a - b));
  return static_cast<double>(a + prefactor * bracket);
}
}  // namespace

BoundReport mcallester_bound(const BoundInputs& inputs) {
  inputs.validate();
  if (!inputs.kl || !inputs.empirical_risk) {
    throw std::invalid_argument("mcallester_bound needs kl and empirical_risk");
  }
  return {mcallester_value(inputs, inputs.delta), BoundKind::mcallester, inputs, 1};
}

BoundReport germain_lml_bound(const BoundInputs& inputs) {
  inputs.validate();
  if (!inputs.log_evidence) throw std::invalid_argument("germain_lml_bound needs log_evidence");
  const double value =
      germain_value(inputs, inputs.delta, *inputs.log_evidence, static_cast<double>(inputs.n));
  return {value, BoundKind::germain_lml, inputs, 1};
}

BoundReport germain_clml_bound(const BoundInputs& inputs) {
  inputs.validate();
  if (!inputs.log_conditional_evidence || !inputs.m) {
    throw std::invalid_argument("germain_clml_bound needs log_conditional_evidence and m");
  }
  const double count = static_cast<double>(inputs.n - *inputs.m + 1);
  const double value =
      germain_value(inputs, inputs.delta, *inputs.log_conditional_evidence, count);
  return {value, BoundKind::germain_clml, inputs, 1};
}

BoundReport union_adjust(const BoundReport& report, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be >= 1");
  const double adjusted_delta = report.inputs.delta / static_cast<double>(k);
  BoundReport adjusted = report;
  adjusted.union_k = k;
  switch (report.kind) {
    case BoundKind::mcallester:
      adjusted.bound_value = mcallester_value(report.inputs, adjusted_delta);
      break;
    case BoundKind::germain_lml:
      adjusted.bound_value = germain_value(report.inputs, adjusted_delta,
                                           *report.inputs.log_evidence,
                                           static_cast<double>(report.inputs.n));
      break;
    case BoundKind::germain_clml:
      adjusted.bound_value = germain_value(
          report.inputs, adjusted_delta, *report.inputs.log_conditional_evidence,
          static_cast<double>(report.inputs.n - *report.inputs.m + 1));
      break;
  }
  return adjusted;
}

BoundInputs empirical_pac_inputs(const GaussianDensityModel& model, const OrderedDataset& data,
                                 double a, double b, std::size_t n_samples, SeedSpec seed,
                                 double delta, std::optional<std::size_t> m, Exec exec) {
  if (!(a < b)) throw std::invalid_argument("loss bounds must satisfy a < b");
  if (data.empty()) throw std::invalid_argument("empirical_pac_inputs requires n >= 1");
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");

  const GaussianDistribution posterior = density_posterior(model, data);
  const GaussianDistribution prior(Eigen::VectorXd::Constant(1, model.prior_mean),
                                   Eigen::MatrixXd::Constant(1, 1, model.prior_variance));
  const ClippedDensityParamModel clipped(model, a, b);
  const Eigen::VectorXd values = data.scalar_values();

  // Mean clipped NLL over the data for each analytic posterior sample.
  std::vector<double> risks(n_samples);
  indexed_for(
      n_samples,
      [&](std::size_t i) {
        Rng rng = Rng::child(seed, i);
        const double u = posterior.sample(rng)[0];
        double total = 0.0;
        for (Eigen::Index j = 0; j < values.size(); ++j) {
          total += clipped.clipped_nll(values[j], u);
        }
        risks[i] = total / static_cast<double>(values.size());
      },
      exec);

  BoundInputs inputs;
  inputs.n = data.size();
  inputs.delta = delta;
  inputs.loss_lower = a;
  inputs.loss_upper = b;
  inputs.empirical_risk = pairwise_sum(risks, exec) / static_cast<double>(n_samples);
  inputs.kl = kl_gaussian(posterior, prior);
  inputs.log_evidence = quadrature_evidence(clipped, data).log_value;
  if (m) {
    inputs.m = m;
    inputs.log_conditional_evidence =
        *inputs.log_evidence - quadrature_evidence(clipped, data.prefix(*m - 1)).log_value;
  }
  return inputs;
}

}  // namespace lml
