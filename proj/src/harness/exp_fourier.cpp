#include <cmath>
#include <optional>
#include <vector>

#include "csv.hpp"
#include "experiments.hpp"
#include "lml/fourier_model.hpp"
#include "lml/selection.hpp"

namespace lml::harness {

namespace {
void write_curve_csv(const std::filesystem::path& path, const LearningCurve& curve) {
  CsvWriter csv(path, {"n", "mean_logpred", "stderr"});
  for (std::size_t i = 0; i < curve.mean_log_pred.size(); ++i) {
    csv.row({static_cast<std::int64_t>(i + 1), curve.mean_log_pred[i], curve.std_errors[i]});
  }
}
}  // namespace

ExperimentDef fourier_experiment() {
  ExperimentDef def;
  def.name = "fourier";
  def.description = "order-3 vs order-9 sinusoidal regression: LML/CLML reversal and crossover";
  def.default_seed = 466;
  def.declare = [](Params& params) {
    params.declare_int("order_true", 9, "order of the generating model");
    params.declare_double("noise_std", 0.1, "observation noise std");
    params.declare_int("n", 100, "points used for the model comparison");
    params.declare_int("n_max", 400, "points generated for the crossover scan");
    params.declare_int("m", 85, "CLML cut-off");
    params.declare_int("clml_orderings", 200, "orderings for the CLML average");
    params.declare_int("lc_orderings", 100, "orderings for the learning curves");
    params.declare_int("crossover_min", 50, "smallest prefix size scanned");
    params.declare_int("crossover_step", 5, "prefix-size step in the scan");
  };
  def.run = [](const ExperimentContext& context) {
    const Params& p = context.params;
    const int order_true = static_cast<int>(p.get_int("order_true"));
    const double noise = p.get_double("noise_std");
    const std::size_t n = static_cast<std::size_t>(p.get_int("n"));
    const std::size_t n_max = static_cast<std::size_t>(p.get_int("n_max"));

    const OrderedDataset all = fourier_generate(
        order_true, fourier_inverse_square_prior(order_true), noise, n_max, context.seed);
    const OrderedDataset data = all.prefix(n);

    const FourierEvidenceModel m3({3, fourier_unit_prior(3), noise}, "M3");
    const FourierEvidenceModel m9({9, fourier_unit_prior(9), noise}, "M9");
    const FourierEvidenceModel m9c({9, fourier_inverse_square_prior(9), noise}, "M9c");

    const std::size_t m = static_cast<std::size_t>(p.get_int("m"));
    const std::size_t clml_orderings = static_cast<std::size_t>(p.get_int("clml_orderings"));
    const SeedSpec clml_seed{Rng::child(context.seed, 1).next_u64()};

    CsvWriter table(context.out_dir / "fourier_models.csv",
                    {"model", "lml", "clml", "clml_stderr"});
    struct Row {
      const FourierEvidenceModel* model;
      double lml;
      ConditionalEvidence clml;
    };
    std::vector<Row> rows;
    for (const FourierEvidenceModel* model : {&m3, &m9, &m9c}) {
      Row row{model, model->log_evidence(data),
              clml(*model, data, m, clml_orderings, clml_seed, context.exec)};
      table.row({row.model->id(), row.lml, row.clml.log_value, row.clml.ordering_std_error});
      rows.push_back(row);
    }

    // learning curves
    const std::size_t lc_orderings = static_cast<std::size_t>(p.get_int("lc_orderings"));
    const SeedSpec lc_seed{Rng::child(context.seed, 2).next_u64()};
    write_curve_csv(context.out_dir / "fourier_learning_curve_m3.csv",
                    learning_curve(m3, data, lc_orderings, lc_seed, context.exec));
    write_curve_csv(context.out_dir / "fourier_learning_curve_m9.csv",
                    learning_curve(m9, data, lc_orderings, lc_seed, context.exec));
    write_curve_csv(context.out_dir / "fourier_learning_curve_m9c.csv",
                    learning_curve(m9c, data, lc_orderings, lc_seed, context.exec));

    // crossover scan on growing prefixes of the full generated dataset
    std::vector<std::size_t> schedule;
    for (std::size_t size = static_cast<std::size_t>(p.get_int("crossover_min")); size <= n_max;
         size += static_cast<std::size_t>(p.get_int("crossover_step"))) {
      schedule.push_back(size);
    }
    CsvWriter scan(context.out_dir / "fourier_crossover.csv", {"n", "lml_m3", "lml_m9"});
    for (std::size_t size : schedule) {
      const OrderedDataset prefix = all.prefix(size);
      scan.row({static_cast<std::int64_t>(size), m3.log_evidence(prefix),
                m9.log_evidence(prefix)});
    }
    const std::optional<std::size_t> crossover =
        crossover_scan(m3, m9, all, schedule, context.exec);

    context.summary["lml_m3"] = rows[0].lml;
    context.summary["lml_m9"] = rows[1].lml;
    context.summary["lml_m9c"] = rows[2].lml;
    context.summary["clml_m3"] = rows[0].clml.log_value;
    context.summary["clml_m9"] = rows[1].clml.log_value;
    context.summary["clml_m9c"] = rows[2].clml.log_value;
    context.summary["preferred_by_lml"] = rows[0].lml >= rows[1].lml ? "M3" : "M9";
    context.summary["preferred_by_clml"] =
        rows[0].clml.log_value >= rows[1].clml.log_value ? "M3" : "M9";
    std::string best_lml = "M3", best_clml = "M3";
    double top_lml = rows[0].lml, top_clml = rows[0].clml.log_value;
    for (const Row& row : rows) {
      if (row.lml > top_lml) {
        top_lml = row.lml;
        best_lml = row.model->id();
      }
      if (row.clml.log_value > top_clml) {
        top_clml = row.clml.log_value;
        best_clml = row.model->id();
      }
    }
    context.summary["preferred_by_lml_all"] = best_lml;
    context.summary["preferred_by_clml_all"] = best_clml;
    if (crossover) {
      context.summary["crossover_n"] = *crossover;
    } else {
      context.summary["crossover_n"] = nullptr;
    }
  };
  return def;
}

}  // namespace lml::harness
