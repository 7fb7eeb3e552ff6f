#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "csv.hpp"
#include "experiments.hpp"
#include "lml/gp.hpp"

namespace lml::harness {

ExperimentDef gp_rq_experiment() {
  ExperimentDef def;
  def.name = "gp-rq";
  def.description = "rational-quadratic alpha sweep: LML vs CLML vs test log-likelihood";
  def.default_seed = 60;
  def.declare = [](Params& params) {
    params.declare_double("gen_alpha", 0.05, "generating alpha");
    params.declare_double("gen_lengthscale", 0.5, "generating (and model) lengthscale");
    params.declare_double("gen_noise", 0.1, "generating observation noise std");
    params.declare_double("output_scale", 1.0, "output scale");
    params.declare_double("x_max", 5.0, "inputs drawn uniformly from [0, x_max]");
    params.declare_int("n_train", 50, "training points");
    params.declare_int("n_test", 500, "held-out points");
    params.declare_int("alpha_points", 40, "log-spaced alpha grid size");
    params.declare_double("alpha_min", 1e-3, "grid lower end");
    params.declare_double("alpha_max", 10.0, "grid upper end");
    params.declare_int("m", 45, "CLML cut-off");
    params.declare_int("clml_orderings", 20, "orderings for the CLML average");
    params.declare_double_list("model_noises", "0.1,0.2", "model noise stds to sweep");
  };
  def.run = [](const ExperimentContext& context) {
    const Params& p = context.params;
    const std::size_t n_train = static_cast<std::size_t>(p.get_int("n_train"));
    const std::size_t n_test = static_cast<std::size_t>(p.get_int("n_test"));

    GPModel truth;
    truth.kernel = {KernelKind::rq, p.get_double("gen_lengthscale"), p.get_double("output_scale"),
                    p.get_double("gen_alpha")};
    truth.noise_std = p.get_double("gen_noise");

    // one joint draw over train + test inputs
    Rng x_rng = Rng::child(context.seed, 0);
    std::vector<double> xs(n_train + n_test);
    for (auto& x : xs) x = x_rng.uniform(0.0, p.get_double("x_max"));
    const OrderedDataset joint =
        gp_generate(truth, xs, SeedSpec{Rng::child(context.seed, 1).next_u64()});
    const OrderedDataset train = joint.prefix(n_train);
    std::vector<double> test_x(n_test);
    Eigen::VectorXd test_y(n_test);
    for (std::size_t i = 0; i < n_test; ++i) {
      test_x[i] = joint.scalar_value(n_train + i);
      test_y[i] = *joint.point(n_train + i).y;
    }

    const int grid_size = static_cast<int>(p.get_int("alpha_points"));
    const double log_lo = std::log(p.get_double("alpha_min"));
    const double log_hi = std::log(p.get_double("alpha_max"));
    std::vector<double> grid(grid_size);
    for (int i = 0; i < grid_size; ++i) {
      grid[i] = std::exp(log_lo + (log_hi - log_lo) * i / (grid_size - 1));
    }

    const std::size_t m = static_cast<std::size_t>(p.get_int("m"));
    const std::size_t orderings = static_cast<std::size_t>(p.get_int("clml_orderings"));
    const SeedSpec clml_seed{Rng::child(context.seed, 2).next_u64()};

    for (double model_noise : p.get_double_list("model_noises")) {
      char name[64];
      std::snprintf(name, sizeof name, "gp_rq_noise%g.csv", model_noise);
      CsvWriter csv(context.out_dir / name, {"alpha", "lml", "clml", "test_ll"});

      struct Point {
        double lml, clml, test_ll;
      };
      const std::vector<Point> sweep = indexed_map(
          grid.size(),
          [&](std::size_t i) {
            GPModel model = truth;
            model.kernel.alpha = grid[i];
            model.noise_std = model_noise;
            Point point;
            point.lml = gp_lml(model, train).log_value;
            point.clml = gp_clml(model, train, m, orderings, clml_seed).log_value;
            const GaussianDistribution pred = gp_predict(model, train, test_x, true);
            double total = 0.0;
            for (std::size_t t = 0; t < n_test; ++t) {
              const double variance = pred.covariance()(t, t);
              const double residual = test_y[t] - pred.mean()[t];
              total += -0.5 * (std::log(2 * std::numbers::pi * variance) +
                               residual * residual / variance);
            }
            point.test_ll = total / static_cast<double>(n_test);
            return point;
          },
          context.exec);

      std::size_t argmax_lml = 0, argmax_clml = 0, argmax_test = 0;
      for (std::size_t i = 0; i < sweep.size(); ++i) {
        csv.row({grid[i], sweep[i].lml, sweep[i].clml, sweep[i].test_ll});
        if (sweep[i].lml > sweep[argmax_lml].lml) argmax_lml = i;
        if (sweep[i].clml > sweep[argmax_clml].clml) argmax_clml = i;
        if (sweep[i].test_ll > sweep[argmax_test].test_ll) argmax_test = i;
      }
      char key[64];
      std::snprintf(key, sizeof key, "noise%g", model_noise);
      context.summary[key] = {
          {"argmax_index_lml", argmax_lml},   {"argmax_index_clml", argmax_clml},
          {"argmax_index_test_ll", argmax_test}, {"argmax_alpha_lml", grid[argmax_lml]},
          {"argmax_alpha_clml", grid[argmax_clml]}, {"argmax_alpha_test_ll", grid[argmax_test]},
      };
    }
  };
  return def;
}

}  // namespace lml::harness
