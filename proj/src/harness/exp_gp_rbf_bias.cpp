#include <cmath>
#include <vector>

#include "csv.hpp"
#include "experiments.hpp"
#include "lml/errors.hpp"
#include "lml/gp_fit.hpp"

namespace lml::harness {

ExperimentDef gp_rbf_bias_experiment() {
  ExperimentDef def;
  def.name = "gp-rbf-bias";
  def.description = "lengthscale learned by LML/CLML over 100 GP datasets as n grows";
  def.default_seed = 7;
  def.declare = [](Params& params) {
    params.declare_int("n_datasets", 100, "independent datasets");
    params.declare_double("l_true", 4.0, "generating lengthscale");
    params.declare_double("output_scale", 1.0, "generating output scale");
    params.declare_double("noise_std", 0.2, "observation noise std");
    params.declare_int("n_positions", 150, "data positions 1..n_positions");
    params.declare_double_list("n_schedule",
                               "1,2,3,4,5,6,8,10,13,16,20,25,30,40,50,65,80,100,120,150",
                               "prefix sizes at which hypers are fit");
    params.declare_int("clml_orderings", 10, "orderings for the CLML objective");
    params.declare_double("clml_m_fraction", 0.8, "CLML cut-off as a fraction of n");
    params.declare_int("restarts", 1, "fit restarts (1 = ascend from l_true)");
    params.declare_int("max_iterations", 120, "ascent iterations per fit");
  };
  def.run = [](const ExperimentContext& context) {
    const Params& p = context.params;
    const std::size_t n_datasets = static_cast<std::size_t>(p.get_int("n_datasets"));
    const int n_positions = static_cast<int>(p.get_int("n_positions"));

    GPModel truth;
    truth.kernel = {KernelKind::rbf, p.get_double("l_true"), p.get_double("output_scale"), 1.0};
    truth.noise_std = p.get_double("noise_std");
    truth.mean = ConstantMean{0.0};

    std::vector<double> positions(n_positions);
    for (int i = 0; i < n_positions; ++i) positions[i] = i + 1;

    std::vector<std::size_t> schedule;
    for (double value : p.get_double_list("n_schedule")) {
      const auto n = static_cast<std::size_t>(value);
      if (n < 1 || n > static_cast<std::size_t>(n_positions)) {
        throw ConfigError("n_schedule entries must lie in [1, n_positions]");
      }
      schedule.push_back(n);
    }

    struct DatasetResult {
      std::vector<double> log_l_lml;     // per schedule entry; NaN marks failure
      std::vector<double> log_l_clml;
    };

    const auto fit_lengthscale = [&](const OrderedDataset& data, FitObjective objective,
                                     std::size_t m, SeedSpec seed) {
      FitOptions options;
      options.objective = objective;
      options.free = HyperMask::lengthscale_only();
      options.clml_m = m;
      options.clml_orderings = static_cast<std::size_t>(p.get_int("clml_orderings"));
      options.restarts = static_cast<int>(p.get_int("restarts"));
      options.max_iterations = static_cast<int>(p.get_int("max_iterations"));
      options.seed = seed;
      const auto [fitted, trace] = fit_hypers(truth, data, options, Exec::serial);
      return std::log(fitted.kernel.lengthscale);
    };

    const std::vector<DatasetResult> results = indexed_map(
        n_datasets,
        [&](std::size_t dataset_index) {
          const OrderedDataset full = gp_generate(
              truth, positions, SeedSpec{Rng::child(context.seed, dataset_index).next_u64()});
          DatasetResult result;
          for (std::size_t n : schedule) {
            const OrderedDataset data = full.prefix(n);
            const std::size_t m = static_cast<std::size_t>(
                std::ceil(p.get_double("clml_m_fraction") * static_cast<double>(n)));
            const SeedSpec fit_seed{Rng::child(context.seed, dataset_index, n).next_u64()};
            double lml_value = std::nan(""), clml_value = std::nan("");
            try {
              lml_value = fit_lengthscale(data, FitObjective::lml, 1, fit_seed);
            } catch (const NumericalError&) {
            }
            try {
              clml_value = fit_lengthscale(data, FitObjective::clml, std::max<std::size_t>(m, 1),
                                           fit_seed);
            } catch (const NumericalError&) {
            }
            result.log_l_lml.push_back(lml_value);
            result.log_l_clml.push_back(clml_value);
          }
          return result;
        },
        context.exec);

    CsvWriter csv(context.out_dir / "gp_rbf_bias.csv",
                  {"n", "mean_log_lengthscale_lml", "stderr_log_lengthscale_lml",
                   "mean_log_lengthscale_clml", "stderr_log_lengthscale_clml", "errors"});
    double mean_l_lml_n10 = 0.0, mean_l_lml_nmax = 0.0;
    for (std::size_t s = 0; s < schedule.size(); ++s) {
      std::vector<double> lml_values, clml_values;
      std::int64_t errors = 0;
      double linear_sum = 0.0;
      for (const DatasetResult& result : results) {
        if (std::isnan(result.log_l_lml[s]) || std::isnan(result.log_l_clml[s])) {
          ++errors;
          continue;
        }
        lml_values.push_back(result.log_l_lml[s]);
        clml_values.push_back(result.log_l_clml[s]);
        linear_sum += std::exp(result.log_l_lml[s]);
      }
      const auto stats = [](const std::vector<double>& values) {
        const double mean =
            std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
        double var = 0.0;
        for (double v : values) var += (v - mean) * (v - mean);
        const double std_error =
            values.size() > 1 ? std::sqrt(var / (values.size() - 1) / values.size()) : 0.0;
        return std::pair{mean, std_error};
      };
      const auto [lml_mean, lml_se] = stats(lml_values);
      const auto [clml_mean, clml_se] = stats(clml_values);
      csv.row({static_cast<std::int64_t>(schedule[s]), lml_mean, lml_se, clml_mean, clml_se,
               errors});
      if (schedule[s] == 10) mean_l_lml_n10 = linear_sum / lml_values.size();
      if (s + 1 == schedule.size()) mean_l_lml_nmax = linear_sum / lml_values.size();
    }

    context.summary["mean_lengthscale_lml_n10"] = mean_l_lml_n10;
    context.summary["mean_lengthscale_lml_n_max"] = mean_l_lml_nmax;
    context.summary["rel_error_at_n_max"] =
        std::abs(mean_l_lml_nmax - p.get_double("l_true")) / p.get_double("l_true");
  };
  return def;
}

}  // namespace lml::harness
