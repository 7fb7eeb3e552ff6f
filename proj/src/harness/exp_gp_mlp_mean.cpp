#include <cmath>
#include <vector>

#include "csv.hpp"
#include "experiments.hpp"
#include "lml/errors.hpp"
#include "lml/gp_fit.hpp"

namespace lml::harness {

namespace {
struct ReplicateResult {
  double const_lml_init = 0.0, const_lml_fit = 0.0, const_heldout = 0.0;
  double mlp_lml_init = 0.0, mlp_lml_fit = 0.0, mlp_heldout = 0.0;
  GPModel const_model, mlp_model;
  bool failed = false;
};
}  // namespace

ExperimentDef gp_mlp_mean_experiment() {
  ExperimentDef def;
  def.name = "gp-mlp-mean";
  def.description = "constant vs MLP mean under LML optimization: train fit and extrapolation";
  def.default_seed = 11;
  def.declare = [](Params& params) {
    params.declare_int("replicates", 10, "independent data draws");
    params.declare_int("n_points", 100, "evenly spaced points");
    params.declare_double("x_min", 0.0, "left end of the grid");
    params.declare_double("x_max", 10.0, "right end of the grid");
    params.declare_double("l_true", 0.75, "generating lengthscale");
    params.declare_double("noise_true", 0.02, "generating noise std");
    params.declare_double("train_fraction", 0.5, "leading fraction used for training");
    params.declare_int("hidden_width", 50, "units per hidden layer (two layers)");
    params.declare_int("iterations", 2000, "ascent iterations for the MLP fit");
    params.declare_double("init_lengthscale", 1.0, "kernel init for both fits");
    params.declare_double("init_noise", 0.1, "noise init for both fits");
  };
  def.run = [](const ExperimentContext& context) {
    const Params& p = context.params;
    const std::size_t replicates = static_cast<std::size_t>(p.get_int("replicates"));
    const int n_points = static_cast<int>(p.get_int("n_points"));
    const std::size_t n_train =
        static_cast<std::size_t>(p.get_double("train_fraction") * n_points);

    GPModel truth;
    truth.kernel = {KernelKind::rbf, p.get_double("l_true"), 1.0, 1.0};
    truth.noise_std = p.get_double("noise_true");

    std::vector<double> grid(n_points);
    for (int i = 0; i < n_points; ++i) {
      grid[i] = p.get_double("x_min") +
                (p.get_double("x_max") - p.get_double("x_min")) * i / (n_points - 1);
    }

    const int hidden = static_cast<int>(p.get_int("hidden_width"));
    const auto make_init = [&](bool mlp_mean, SeedSpec seed) {
      GPModel init;
      init.kernel = {KernelKind::rbf, p.get_double("init_lengthscale"), 1.0, 1.0};
      init.noise_std = p.get_double("init_noise");
      if (mlp_mean) {
        MlpMean mean;
        mean.arch.widths = {1, hidden, hidden, 1};
        Rng weight_rng = Rng::child(seed, 0);
        mean.weights = mlp_init_weights(mean.arch, weight_rng);
        init.mean = mean;
      } else {
        init.mean = ConstantMean{0.0};
      }
      return init;
    };
    const auto fit_model = [&](const GPModel& init, const OrderedDataset& train, SeedSpec seed) {
      FitOptions options;
      options.objective = FitObjective::lml;
      options.free = {.lengthscale = true, .output_scale = true, .noise = true, .mean = true};
      options.restarts = 1;
      options.max_iterations = static_cast<int>(p.get_int("iterations"));
      options.hyper_log_lower = std::log(1e-4);
      options.seed = SeedSpec{Rng::child(seed, 1).next_u64()};
      return fit_hypers(init, train, options, Exec::serial).first;
    };

    const std::vector<ReplicateResult> results = indexed_map(
        replicates,
        [&](std::size_t replicate) {
          ReplicateResult result;
          try {
            const OrderedDataset full = gp_generate(
                truth, grid, SeedSpec{Rng::child(context.seed, replicate).next_u64()});
            const OrderedDataset train = full.prefix(n_train);
            const SeedSpec fit_seed{Rng::child(context.seed, replicate, 1).next_u64()};

            const GPModel const_init = make_init(false, fit_seed);
            result.const_lml_init = gp_lml(const_init, train).log_value;
            result.const_model = fit_model(const_init, train, fit_seed);
            result.const_lml_fit = gp_lml(result.const_model, train).log_value;
            result.const_heldout =
                gp_lml(result.const_model, full).log_value - result.const_lml_fit;

            const GPModel mlp_init = make_init(true, fit_seed);
            result.mlp_lml_init = gp_lml(mlp_init, train).log_value;
            result.mlp_model = fit_model(mlp_init, train, fit_seed);
            result.mlp_lml_fit = gp_lml(result.mlp_model, train).log_value;
            result.mlp_heldout = gp_lml(result.mlp_model, full).log_value - result.mlp_lml_fit;
          } catch (const NumericalError&) {
            result.failed = true;
          }
          return result;
        },
        context.exec);

    CsvWriter table(
        context.out_dir / "gp_mlp_lml.csv",
        {"replicate", "model", "lml_init", "lml_fitted", "heldout_cond_logdens", "error"});
    int agreeing = 0, usable = 0;
    for (std::size_t r = 0; r < results.size(); ++r) {
      const ReplicateResult& result = results[r];
      if (result.failed) {
        table.row({static_cast<std::int64_t>(r), std::string("constant"), std::monostate{},
                   std::monostate{}, std::monostate{}, std::string("numerical_failure")});
        table.row({static_cast<std::int64_t>(r), std::string("mlp"), std::monostate{},
                   std::monostate{}, std::monostate{}, std::string("numerical_failure")});
        continue;
      }
      table.row({static_cast<std::int64_t>(r), std::string("constant"), result.const_lml_init,
                 result.const_lml_fit, result.const_heldout, std::string()});
      table.row({static_cast<std::int64_t>(r), std::string("mlp"), result.mlp_lml_init,
                 result.mlp_lml_fit, result.mlp_heldout, std::string()});
      ++usable;
      if (result.mlp_lml_fit > result.const_lml_fit && result.mlp_heldout < result.const_heldout) {
        ++agreeing;
      }
    }

    // dense predictive curves for the first replicate
    if (!results.empty() && !results[0].failed) {
      const OrderedDataset full =
          gp_generate(truth, grid, SeedSpec{Rng::child(context.seed, 0).next_u64()});
      const OrderedDataset train = full.prefix(n_train);
      const GaussianDistribution const_pred =
          gp_predict(results[0].const_model, train, grid, false);
      const GaussianDistribution mlp_pred = gp_predict(results[0].mlp_model, train, grid, false);
      CsvWriter pred(context.out_dir / "gp_mlp_predictive.csv",
                     {"x", "y", "const_mean", "const_sd", "mlp_mean", "mlp_sd", "is_train"});
      for (int i = 0; i < n_points; ++i) {
        pred.row({grid[i], *full.point(i).y, const_pred.mean()[i],
                  std::sqrt(std::max(const_pred.covariance()(i, i), 0.0)), mlp_pred.mean()[i],
                  std::sqrt(std::max(mlp_pred.covariance()(i, i), 0.0)),
                  static_cast<std::int64_t>(i < static_cast<int>(n_train) ? 1 : 0)});
      }
    }

    context.summary["replicates"] = usable;
    context.summary["agreeing"] = agreeing;
  };
  return def;
}

}  // namespace lml::harness
