#include <cmath>
#include <numbers>
#include <vector>

#include "csv.hpp"
#include "experiments.hpp"
#include "lml/sampling.hpp"

namespace lml::harness {

ExperimentDef sampling_check_experiment() {
  ExperimentDef def;
  def.name = "sampling-check";
  def.description = "likelihood weighting and importance sampling against exact references";
  def.default_seed = 13;
  def.declare = [](Params& params) {
    params.declare_int("density_n", 3, "points for the Gaussian-mean instance");
    params.declare_double("density_u_true", 0.5, "generating mean");
    params.declare_int("sine_n", 5, "points for the periodic-sine instance");
    params.declare_double("sine_w_true", 0.9, "generating parameter");
    params.declare_double("sine_alpha", std::numbers::pi, "uniform prior half-width");
    params.declare_double_list("n_samples", "1000,10000,100000", "sample counts per estimator");
  };
  def.run = [](const ExperimentContext& context) {
    const Params& p = context.params;

    Rng density_rng = Rng::child(context.seed, 0);
    std::vector<double> density_values(p.get_int("density_n"));
    for (auto& v : density_values) v = density_rng.normal(p.get_double("density_u_true"), 1.0);
    const OrderedDataset density_data = OrderedDataset::from_scalars(density_values);
    const GaussianDensityModel density{0.0, 1.0};
    const DensityParamModel density_param(density);
    const double density_reference = density_lml(density, density_data).log_value;

    Rng sine_rng = Rng::child(context.seed, 1);
    std::vector<double> sine_values(p.get_int("sine_n"));
    for (auto& v : sine_values) v = sine_rng.normal(std::sin(p.get_double("sine_w_true")), 1.0);
    const OrderedDataset sine_data = OrderedDataset::from_scalars(sine_values);
    const double alpha = p.get_double("sine_alpha");
    const SineParamModel sine_param(PeriodicSineModel{alpha});
    const double sine_reference = quadrature_evidence(sine_param, sine_data).log_value;

    CsvWriter csv(context.out_dir / "sampling_check.csv",
                  {"model", "method", "proposal", "n_samples", "estimate", "stderr", "ess",
                   "reference"});
    int within_three_se = 0, rows = 0;
    std::uint64_t stream = 100;
    const auto emit = [&](const std::string& model, const std::string& method,
                          const std::string& proposal, std::size_t n_samples,
                          const EvidenceEstimate& estimate, double reference) {
      csv.row({model, method, proposal, static_cast<std::int64_t>(n_samples), estimate.log_value,
               estimate.diagnostics->std_error, estimate.diagnostics->effective_sample_size,
               reference});
      ++rows;
      if (std::abs(estimate.log_value - reference) <=
          3.0 * std::max(estimate.diagnostics->std_error, 1e-12)) {
        ++within_three_se;
      }
    };

    const ProposalSpec density_posterior_proposal{density_posterior(density, density_data),
                                                  "exact_posterior"};
    const ProposalSpec sine_wide_proposal{GaussianDistribution::scalar(0.0, alpha * alpha),
                                          "wide_gaussian"};
    for (double count_real : p.get_double_list("n_samples")) {
      const std::size_t count = static_cast<std::size_t>(count_real);
      const SeedSpec lw_seed{Rng::child(context.seed, ++stream).next_u64()};
      emit("density", "likelihood_weighting", "prior", count,
           likelihood_weighting(density_param, density_data, count, lw_seed, context.exec),
           density_reference);
      const SeedSpec is_seed{Rng::child(context.seed, ++stream).next_u64()};
      emit("density", "importance_sampling", "exact_posterior", count,
           importance_sampling(density_param, density_data, density_posterior_proposal, count,
                               is_seed, context.exec),
           density_reference);
      const SeedSpec sine_lw_seed{Rng::child(context.seed, ++stream).next_u64()};
      emit("sine", "likelihood_weighting", "prior", count,
           likelihood_weighting(sine_param, sine_data, count, sine_lw_seed, context.exec),
           sine_reference);
      const SeedSpec sine_is_seed{Rng::child(context.seed, ++stream).next_u64()};
      emit("sine", "importance_sampling", "wide_gaussian", count,
           importance_sampling(sine_param, sine_data, sine_wide_proposal, count, sine_is_seed,
                               context.exec),
           sine_reference);
    }

    context.summary["rows"] = rows;
    context.summary["within_three_stderr"] = within_three_se;
    context.summary["density_reference"] = density_reference;
    context.summary["sine_reference"] = sine_reference;
  };
  return def;
}

}  // namespace lml::harness
